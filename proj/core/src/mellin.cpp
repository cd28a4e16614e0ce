#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "bernoulli.hpp"
#include "gauss_legendre.hpp"
#include "nblab/distance.hpp"

namespace nblab {

namespace {

// int_V^inf v^{-1-s} rho(v) dv for V >= 1 with frac = rho(V), by repeated
// integration by parts against the periodic Bernoulli functions
// B_m(rho(v))/m!.
Complex rho_mellin_tail(Complex s, double V, double frac) {
  const Complex v_pow = std::exp(-s * std::log(V));  // V^{-s}
  Complex total = v_pow / (2.0 * s);
  Complex rising{1.0, 0.0};  // (1+s)_{m-2}
  double factorial = 2.0;    // m!
  double inv_v = 1.0 / V;    // V^{-(m-1)}
  for (int m = 2; m <= 10; ++m) {
    total -= rising * inv_v * v_pow * (detail::bernoulli_poly(m, frac) / factorial);
    rising *= (static_cast<double>(m) - 1.0) + s;
    factorial *= static_cast<double>(m + 1);
    inv_v /= V;
  }
  return total;
}

const detail::GaussLegendre& gauss16() {
  static const detail::GaussLegendre gl(16);
  return gl;
}

}  // namespace

Complex mellin_of_combination(const CoefficientVector& coeffs, Complex s) {
  if (!(s.real() > 0.0 && s.real() < 1.0)) {
    throw std::invalid_argument("mellin: requires 0 < Re(s) < 1");
  }
  const std::size_t n = coeffs.n();
  const double A = coeffs.weighted_sum();
  const std::uint64_t U = std::max<std::uint64_t>(1000, 100 * n);
  const double tau = std::abs(s.imag());
  const auto& gl = gauss16();

  // u in (0, 1): g = A u, int u^{-s} A du = A/(1-s).
  Complex total = A / (1.0 - s);

  // Unit intervals [k, k+1): g(u) = A (u - k) + r_k.
  Complex body{0.0, 0.0};
  for (std::uint64_t k = U - 1; k >= 1; --k) {
    double r = 0.0;
    for (std::size_t a = 1; a <= n; ++a) {
      r += coeffs(a) * static_cast<double>(k % a) / static_cast<double>(a);
    }
    const double dk = static_cast<double>(k);
    const int sub = 1 + static_cast<int>(tau / (5.0 * dk));
    const double width = 1.0 / sub;
    Complex piece{0.0, 0.0};
    for (int j = 0; j < sub; ++j) {
      const double left = j * width;
      for (std::size_t q = 0; q < gl.nodes.size(); ++q) {
        const double w = left + 0.5 * width * (gl.nodes[q] + 1.0);
        const double u = dk + w;
        const Complex kernel = std::exp(-(1.0 + s) * std::log(u));
        piece += (0.5 * width * gl.weights[q]) * (A * w + r) * kernel;
      }
    }
    body += piece;
  }
  total += body;

  // u >= U: sum_a c_a a^{-s} int_{U/a}^inf v^{-1-s} rho(v) dv
  for (std::size_t a = 1; a <= n; ++a) {
    if (coeffs(a) == 0.0) continue;
    const double da = static_cast<double>(a);
    const double frac = static_cast<double>(U % a) / da;
    const Complex a_pow = std::exp(-s * std::log(da));
    total += coeffs(a) * a_pow *
             rho_mellin_tail(s, static_cast<double>(U) / da, frac);
  }
  return total;
}

std::pair<Complex, Complex> mellin_transform_check(StripPoint s) {
  if (!(s.sigma > 0.0 && s.sigma < 1.0)) {
    throw std::invalid_argument("mellin_transform_check: sigma must lie in (0, 1)");
  }
  const Complex sv = s.value();
  const Complex left = -zeta(s) / sv;
  const Complex right = mellin_of_combination(custom_coefficients({1.0}), sv);
  return {left, right};
}

std::pair<Complex, Complex> regularized_transform_check(double epsilon, std::size_t n, double tau,
                                                        const MobiusTable& table) {
  if (!(epsilon > 0.0 && epsilon < 0.5)) {
    throw std::invalid_argument("regularized_transform_check: epsilon must lie in (0, 1/2)");
  }
  SchemeParams params;
  params.epsilon = 2.0 * epsilon;
  const auto coeffs = make_coefficients(Scheme::regularized, n, params, table);
  const StripPoint s{0.5 - epsilon, tau};
  const Complex numerical = mellin_of_combination(coeffs, s.value());

  std::vector<double> mu(n);
  for (std::size_t a = 1; a <= n; ++a) mu[a - 1] = table[a];
  const Complex series = dirichlet_sum(mu, {0.5 + epsilon, tau});
  const Complex closed = -zeta(s) / s.value() * series;
  return {numerical, closed};
}

}  // namespace nblab
