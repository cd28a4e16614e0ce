#ifndef NBLAB_SPECIAL_HPP
#define NBLAB_SPECIAL_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace nblab {

using Complex = std::complex<double>;

/// A point s = sigma + i*tau of the evaluation strip -1 <= sigma <= 2.
struct StripPoint {
  double sigma = 0.5;
  double tau = 0.0;

  Complex value() const noexcept { return {sigma, tau}; }
};

/// Largest |tau| accepted by the zeta evaluator.
inline constexpr double kTauCeiling = 1.0e5;

/// Riemann zeta by Euler-Maclaurin summation.
///
/// Uses N = max(20, ceil(0.3|tau|)) direct terms and up to 30 Bernoulli
/// corrections, stopping once a term is negligible or starts to grow. N is
/// doubled (at most three times) while the last correction exceeds
/// `precision * max(|zeta|, 1e-3)`. Throws std::domain_error at s = 1,
/// UnsupportedRange for |tau| > kTauCeiling and std::invalid_argument for
/// sigma outside [-1, 2] or precision below 1e-14.
Complex zeta(StripPoint s, double precision = 1e-12);

/// zeta(sigma + i*(t0 + j*step)) for j = 0..count-1. Results agree with
/// zeta() to rounding; the direct sum is shared across points by
/// rotating k^{-i*step} instead of re-evaluating every power.
std::vector<Complex> zeta_on_line(double sigma, double t0, double step, std::size_t count);

/// sum_{k=1}^{K} coeffs[k-1] * k^{-(sigma + i t_j)} with t_j = t0 + j*step.
std::vector<Complex> dirichlet_sum_on_line(std::span<const double> coeffs, double sigma,
                                           double t0, double step, std::size_t count);

/// Same sum at a single ordinate.
Complex dirichlet_sum(std::span<const double> coeffs, Complex s);

/// log Gamma(z), the branch analytic off the negative real axis (the one
/// continuous in Im z, matching the usual loggamma convention).
/// Throws std::domain_error at non-positive integers.
Complex log_gamma(Complex z);

/// |zeta(1/2 - eps + i tau)| / |zeta(1/2 + eps + i tau)|.
///
/// Falls back to the gamma-quotient form when the denominator modulus is
/// below 1e-8. Throws std::invalid_argument unless 0 <= eps < 1/2.
double zeta_ratio(double epsilon, double tau);

/// pi^{-eps} |Gamma(1/4 + eps/2 + i tau/2) / Gamma(1/4 - eps/2 + i tau/2)|,
/// which equals zeta_ratio by the functional equation.
double zeta_ratio_gamma_form(double epsilon, double tau);

struct RatioScan {
  double epsilon = 0.0;
  std::vector<double> tau_grid;
  std::vector<double> ratios;
  double fitted_C = 0.0;  // max_i ratios[i] / (1 + |tau_i|)^eps

  double envelope(double tau) const;
};

/// Ratios on the grid 0, step, 2*step, ... <= tau_max.
RatioScan ratio_scan(double epsilon, double tau_max, double step);

namespace testing {

/// Adds `delta` to every value returned by zeta() and zeta_on_line().
/// Fault injection for the verification runner; not thread-safe to toggle
/// while evaluations are in flight.
void set_zeta_perturbation(double delta);
double zeta_perturbation();

}  // namespace testing

}  // namespace nblab

#endif  // NBLAB_SPECIAL_HPP
