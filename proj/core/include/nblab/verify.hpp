#ifndef NBLAB_VERIFY_HPP
#define NBLAB_VERIFY_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "nblab/beurling.hpp"

namespace nblab {

enum class VerifyLevel { quick, full };

VerifyLevel parse_verify_level(std::string_view name);
std::string_view to_string(VerifyLevel level);

struct VerificationCheck {
  std::string name;
  bool passed = false;
  double measured_error = 0.0;
  double tolerance = 0.0;
  std::string detail;
  double seconds = 0.0;
};

struct VerificationReport {
  VerifyLevel level = VerifyLevel::quick;
  std::vector<VerificationCheck> checks;
  bool all_passed() const noexcept;
};

// Individual checks, each timed and self-describing.

/// sum_{a<=N} mu(a) floor(N/a) == 1 for every N <= n_max.
VerificationCheck check_mobius_floor(std::uint64_t n_max);

/// Direct zeta ratio against the gamma-quotient form on tau = 0, step, ...
/// <= tau_max for each epsilon; points with |zeta(1/2+eps+i tau)| < 1e-6
/// are skipped. Measures the maximum relative discrepancy.
VerificationCheck check_functional_equation(const std::vector<double>& epsilons, double tau_max,
                                            double step, double tolerance = 1e-8);

/// |-zeta(s)/s - int x^{s-1} rho_1(x) dx| on the grid sigmas x taus.
VerificationCheck check_titchmarsh(const std::vector<double>& sigmas,
                                   const std::vector<double>& taus, double tolerance = 1e-6);

/// Regularized transform identity at `count` pseudo-random tau in [0, 50]
/// (fixed seed), relative error.
VerificationCheck check_transform_identity(std::size_t count, double epsilon = 0.1,
                                           std::size_t n = 10, double tolerance = 1e-6);

struct SchemeCase {
  Scheme scheme;
  SchemeParams params;
};

/// Relative gap between exact and spectral value_squared (each including
/// its tail estimate) over schemes x n_values. Cells rejected by
/// make_coefficients (balazard with n < 3) are listed in the detail.
VerificationCheck check_cross_route(const std::vector<SchemeCase>& cases,
                                    const std::vector<std::size_t>& n_values, double tau_max,
                                    double x_min = 1e-7, unsigned workers = 1,
                                    double tolerance = 1e-3);

/// For n = 1..n_max: Gram residual against exact_norm of the optimal
/// vector (relative), residual > 0 and non-increasing in n.
VerificationCheck check_gram_consistency(std::size_t n_max, unsigned workers = 1,
                                         double tolerance = 1e-6);

/// Zero coefficients: both routes give 1 within their tail brackets.
VerificationCheck check_chi_norm(double tau_max, double x_min = 1e-7, unsigned workers = 1);

/// Runs the cross-module identity checks: Moebius floor sums, the
/// functional-equation ratio, the Titchmarsh transform, the regularized
/// transform identity, cross-route distances, Gram consistency and the
/// norm of chi. `full` uses the production grid sizes; `quick` a reduced
/// version of each. Failures are reported, never thrown.
VerificationReport verify_all(VerifyLevel level, unsigned workers = 1);

}  // namespace nblab

#endif  // NBLAB_VERIFY_HPP
