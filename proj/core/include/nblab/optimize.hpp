#ifndef NBLAB_OPTIMIZE_HPP
#define NBLAB_OPTIMIZE_HPP

#include <cstddef>
#include <cstdint>
#include <optional>

#include <Eigen/Dense>

namespace nblab {

/// <chi, rho_a> = (log a + 1 - gamma) / a in closed form.
double inner_chi_rho(std::uint64_t a);

struct InnerProduct {
  double value = 0.0;
  double error_bound = 0.0;  // bound on |value - exact| (tail remainder plus rounding)
  std::uint64_t pieces = 0;
};

inline constexpr std::uint64_t kDefaultPieceBudget = 100'000'000;

/// <rho_a, rho_b> = int_0^inf rho(u/a) rho(u/b) u^-2 du.
///
/// Integrates every piece between multiples of a and b exactly up to
/// U = kappa * lcm(a, b). The remainder over (U, inf) is expanded in
/// inverse powers of U: the integrand is lcm-periodic, and repeated
/// integration by parts leaves coefficients given by its moments against
/// Bernoulli polynomials. kappa doubles until the remainder bound meets
/// `tolerance`. Symmetric in (a, b) bit for bit.
///
/// Throws std::invalid_argument for a or b == 0 or tolerance < 1e-10 and
/// BudgetExceeded if more than `max_pieces` pieces would be needed.
InnerProduct inner_rho_rho_detailed(std::uint64_t a, std::uint64_t b, double tolerance = 1e-10,
                                    std::uint64_t max_pieces = kDefaultPieceBudget);

double inner_rho_rho(std::uint64_t a, std::uint64_t b, double tolerance = 1e-10);

/// Normal equations for the projection of chi onto span{rho_1..rho_n}.
struct GramSystem {
  std::size_t n = 0;
  Eigen::MatrixXd G;  // G(a-1, b-1) = <rho_a, rho_b>
  Eigen::VectorXd b;  // b(a-1) = <chi, rho_a>
  std::optional<Eigen::VectorXd> solution;
  std::optional<double> residual_squared;  // ||chi||^2 - b . solution
  double condition_estimate = 0.0;
  double ridge = 0.0;

  /// Leading n x n block (Gram systems for nested supports share entries).
  GramSystem leading(std::size_t m) const;
};

/// Assembles G and b for the support {1..n}; entries are computed in
/// parallel and written once each.
GramSystem assemble_gram(std::size_t n, unsigned workers = 1, double tolerance = 1e-10);

/// Solves (G + ridge I) x = b by Cholesky and fills solution,
/// residual_squared and condition_estimate (power iteration for the top
/// eigenvalue, inverse iteration through the factor for the bottom one,
/// 20 steps each). With ridge == 0 a failed factorization throws
/// FactorizationError carrying a suggested ridge of 1e-12 trace(G)/n.
void solve(GramSystem& system, double ridge);

/// assemble_gram followed by solve.
GramSystem best_coefficients(std::size_t n, double regularization = 0.0, unsigned workers = 1);

/// The ridge tried after a failed unregularized factorization.
double fallback_ridge(const GramSystem& system);

}  // namespace nblab

#endif  // NBLAB_OPTIMIZE_HPP
