#ifndef NBLAB_BEURLING_HPP
#define NBLAB_BEURLING_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nblab/arith.hpp"

namespace nblab {

/// Weighting schemes for combinations sum_{a<=n} c_a rho_a.
enum class Scheme { natural, selberg, regularized, cesaro, balazard, custom };

std::string_view to_string(Scheme scheme);

/// Parses the lower-case scheme name; throws std::invalid_argument.
Scheme parse_scheme(std::string_view name);

struct SchemeParams {
  std::optional<double> epsilon;  // regularized, cesaro
  std::optional<double> c;        // balazard
};

/// Coefficients c_1..c_n of a combination approximating -chi, so that the
/// distance of interest is ||chi + sum_a c_a rho_a||.
struct CoefficientVector {
  Scheme scheme = Scheme::custom;
  SchemeParams params;
  std::vector<double> values;  // values[a-1] = c_a

  std::size_t n() const noexcept { return values.size(); }

  /// c_a for 1 <= a <= n.
  double operator()(std::size_t a) const noexcept { return values[a - 1]; }

  /// sum_a c_a / a
  double weighted_sum() const noexcept;

  /// sum_a |c_a|
  double abs_sum() const noexcept;
};

/// Fractional part of 1/(a x). Throws std::invalid_argument unless a >= 1
/// and x > 0.
double rho(double a, double x);

/// Builds the coefficients of a named scheme on the support {1..n}:
///
///   natural      mu(a)
///   selberg      mu(a) (1 - log a / log n)
///   regularized  mu(a) a^-eps
///   cesaro       mu(a) a^-eps (1 - a/n)
///   balazard     mu(a) exp(-c log a / log log n)
///
/// Throws std::invalid_argument on a missing or invalid parameter, for
/// balazard with n < 3, and for Scheme::custom (use custom_coefficients).
/// Throws std::out_of_range when n exceeds the table.
CoefficientVector make_coefficients(Scheme scheme, std::size_t n, const SchemeParams& params,
                                    const MobiusTable& table);

CoefficientVector custom_coefficients(std::vector<double> values);

/// The exponent eps = c / log log n that makes the balazard weights equal
/// to a^-eps.
double balazard_epsilon(double c, std::size_t n);

/// sum_a c_a rho_a(x), evaluated as (1/x) sum_{a > 1/x} c_a/a plus the
/// fractional parts for a <= 1/x, where the floor terms live.
/// Throws std::invalid_argument for x <= 0.
double evaluate_combination(const CoefficientVector& coeffs, double x);

}  // namespace nblab

#endif  // NBLAB_BEURLING_HPP
