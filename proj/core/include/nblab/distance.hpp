#ifndef NBLAB_DISTANCE_HPP
#define NBLAB_DISTANCE_HPP

#include <complex>
#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nblab/beurling.hpp"
#include "nblab/special.hpp"

namespace nblab {

/// One interval (lo, hi) between consecutive breakpoints on which
/// g(x) = chi(x) + sum_a c_a rho_a(x) equals A/x + B.
///
/// `value_at_hi` is g at x -> hi from the left, computed from fractional
/// parts rather than as A/hi + B: for small x both A/x and B are large and
/// their sum loses digits.
struct Piece {
  double lo = 0.0;
  double hi = 0.0;  // +infinity for the last piece
  double A = 0.0;
  double B = 0.0;
  double value_at_hi = 0.0;
};

enum class Method { exact, spectral };

std::string_view to_string(Method method);
Method parse_method(std::string_view name);

struct DistanceReport {
  double value_squared = 0.0;
  Method method = Method::exact;
  double tail_low = 0.0;
  double tail_high = 0.0;
  std::map<std::string, double> detail;
};

/// Breakpoints 1/(a m) >= x_min for a <= n plus x = 1, as pieces tiling
/// (x_min, infinity) in increasing x. Every 1/k with k <= 1/x_min is a
/// breakpoint (a = 1), so there are floor(1/x_min) + 1 pieces at most.
/// Throws std::invalid_argument unless 0 < x_min < 1.
std::vector<Piece> breakpoints(const CoefficientVector& coeffs, double x_min,
                               bool include_chi = true);

struct ExactOptions {
  double x_min = 1e-7;
  bool include_chi = true;
  unsigned workers = 1;
  bool reverse_order = false;  // walk the pieces from x_min upward
};

/// ||chi + sum_a c_a rho_a||^2 by closed-form integration over every piece
/// of (x_min, infinity).
///
/// The contribution of (0, x_min) is bracketed by [0, M^2 x_min] with
/// M = 1 + sum |c_a| and estimated by x_min times the mean of g^2 over a
/// long range (each rho_a equidistributes on [0, 1), and
/// Cov(rho_a, rho_b) = gcd(a,b)^2 / (12ab)). The reported value is the
/// body plus that estimate.
DistanceReport exact_norm(const CoefficientVector& coeffs, const ExactOptions& options = {});

/// Shorthand for exact_norm with only x_min changed.
DistanceReport exact_norm(const CoefficientVector& coeffs, double x_min);

/// zeta(1/2 + it) on a composite Simpson grid over [0, tau_max], refined by
/// repeated halving (at most 8 levels) on panels where |zeta| < 0.1.
/// Independent of the coefficients, so one grid serves many spectral norms.
class CriticalLineGrid {
 public:
  /// `intervals` is the number of base Simpson intervals (rounded up to
  /// even, at least 100). Throws UnsupportedRange if tau_max > 1e5.
  CriticalLineGrid(double tau_max, std::size_t intervals, unsigned workers = 1);

  double tau_max() const noexcept { return tau_max_; }
  std::size_t base_intervals() const noexcept { return base_intervals_; }
  double base_step() const noexcept { return tau_max_ / static_cast<double>(base_intervals_); }

  /// Base nodes are uniform: t_j = j * base_step().
  const std::vector<std::complex<double>>& base_zeta() const noexcept { return base_zeta_; }
  const std::vector<double>& base_weights() const noexcept { return base_weights_; }

  /// Extra nodes of refined panels with their Simpson weights.
  const std::vector<double>& refined_t() const noexcept { return refined_t_; }
  const std::vector<double>& refined_weights() const noexcept { return refined_weights_; }
  const std::vector<std::complex<double>>& refined_zeta() const noexcept { return refined_zeta_; }

  std::size_t refined_panels() const noexcept { return refined_panels_; }
  std::size_t node_count() const noexcept { return base_zeta_.size() + refined_t_.size(); }

  /// Process-wide cache keyed by (tau_max, intervals).
  static std::shared_ptr<const CriticalLineGrid> shared(double tau_max, std::size_t intervals,
                                                        unsigned workers = 1);

 private:
  double tau_max_;
  std::size_t base_intervals_;
  std::vector<std::complex<double>> base_zeta_;
  std::vector<double> base_weights_;
  std::vector<double> refined_t_;
  std::vector<double> refined_weights_;
  std::vector<std::complex<double>> refined_zeta_;
  std::size_t refined_panels_ = 0;
};

/// Default number of base Simpson intervals for a given tau_max.
std::size_t default_spectral_intervals(double tau_max);

/// Constant K in |zeta(1/2 + it)| <= K (1+t)^{1/4} log(2+t), used for the
/// upper tail bracket of the spectral route.
inline constexpr double kZetaGrowthConstant = 5.0;

struct SpectralOptions {
  double tau_max = 1e4;
  std::size_t nodes = 0;  // base Simpson intervals; 0 selects the default
  bool include_chi = true;
  unsigned workers = 1;
};

/// ||chi + sum_a c_a rho_a||^2 through the Mellin-Plancherel isometry:
///
///   (1/pi) int_0^inf |zeta(1/2+it) A(1/2+it) - 1|^2 dt / (1/4 + t^2),
///   A(s) = sum_a c_a a^-s.
///
/// The constant 1 is integrated exactly (arctangent). The rest is Simpson
/// on [0, tau_max] plus a tail: bracketed by the growth bound with
/// kZetaGrowthConstant, estimated from the mean value of |zeta A|^2 on the
/// critical line. Throws std::invalid_argument if nodes < 100 and
/// UnsupportedRange if tau_max > 1e5.
DistanceReport spectral_norm(const CoefficientVector& coeffs, const SpectralOptions& options = {});

DistanceReport spectral_norm(const CoefficientVector& coeffs, const CriticalLineGrid& grid,
                             bool include_chi = true);

/// Mean-value constants of |zeta(1/2+it) A(1/2+it)|^2 ~ Q log t + P:
///   Q = sum_{h,k} c_h c_k (h,k)/(hk),
///   P = sum_{h,k} c_h c_k (h,k)/(hk) (log((h,k)^2/(2 pi h k)) + 2 gamma).
/// Evaluated through divisor sums in O(n log n).
std::pair<double, double> critical_line_mean_constants(const CoefficientVector& coeffs);

/// Mean of (chi + sum c_a rho(u/a))^2 over u -> infinity (chi = 1 when
/// include_chi).
double pointwise_square_mean(const CoefficientVector& coeffs, bool include_chi);

/// int_0^inf x^{s-1} g(x) dx for g = sum_a c_a rho_a, by Gauss-Legendre on
/// every unit interval between breakpoints (in u = 1/x), with the region
/// u > U handled by an asymptotic expansion in periodic Bernoulli
/// functions. Requires 0 < Re s < 1; throws std::invalid_argument.
std::complex<double> mellin_of_combination(const CoefficientVector& coeffs,
                                           std::complex<double> s);

/// (left, right) with left = -zeta(s)/s and right = int x^{s-1} rho_1(x) dx
/// computed by quadrature.
std::pair<std::complex<double>, std::complex<double>> mellin_transform_check(StripPoint s);

/// (numerical, closed) for the Mellin transform of x^-eps f_{2eps,n}:
/// numerical quadrature at s = 1/2 - eps + i tau versus
/// -zeta(s)/s sum_{a<=n} mu(a) a^{-(1/2 + eps + i tau)}.
std::pair<std::complex<double>, std::complex<double>> regularized_transform_check(
    double epsilon, std::size_t n, double tau, const MobiusTable& table);

}  // namespace nblab

#endif  // NBLAB_DISTANCE_HPP
