#include "nblab/distance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "nblab/piecewise.hpp"
#include "parallel.hpp"

namespace nblab {

std::string_view to_string(Method method) {
  return method == Method::exact ? "exact" : "spectral";
}

Method parse_method(std::string_view name) {
  if (name == "exact") return Method::exact;
  if (name == "spectral") return Method::spectral;
  throw std::invalid_argument("unknown method '" + std::string(name) + "'");
}

namespace {

constexpr std::size_t kBlock = 4096;

void validate_x_min(double x_min) {
  if (!(x_min > 0.0 && x_min < 1.0)) {
    throw std::invalid_argument("x_min must satisfy 0 < x_min < 1");
  }
}

// U = 1/x_min, snapped to an integer when it is one up to rounding.
double upper_u(double x_min) {
  const double u = 1.0 / x_min;
  const double r = std::round(u);
  return std::abs(u - r) <= 1e-12 * u ? r : u;
}

// sum_a c_a rho(k/a) = sum_a c_a (k mod a) / a
double fractional_sum(const CoefficientVector& c, std::uint64_t k) {
  double sum = 0.0;
  for (std::size_t a = 1; a <= c.n(); ++a) {
    const double ca = c(a);
    if (ca == 0.0) continue;
    sum += ca * static_cast<double>(k % a) / static_cast<double>(a);
  }
  return sum;
}

// Per-block walk over unit intervals [k, k+1) in u = 1/x, k in [k0, k1),
// handing fn(k, r_k) where r_k = sum_a c_a rho(k/a).
template <typename Fn>
void walk_block(const CoefficientVector& c, double A, std::uint64_t k0, std::uint64_t k1,
                std::vector<double>& divisor_sum, Fn&& fn) {
  const std::size_t len = k1 - k0;
  divisor_sum.assign(len, 0.0);
  for (std::size_t a = 1; a <= c.n(); ++a) {
    const double ca = c(a);
    if (ca == 0.0) continue;
    std::uint64_t m = (k0 + a - 1) / a * a;
    for (; m < k1; m += a) divisor_sum[m - k0] += ca;
  }
  double r = fractional_sum(c, k0);
  fn(k0, r);
  for (std::uint64_t k = k0 + 1; k < k1; ++k) {
    r += A - divisor_sum[k - k0];
    fn(k, r);
  }
}

}  // namespace

std::vector<Piece> breakpoints(const CoefficientVector& coeffs, double x_min, bool include_chi) {
  validate_x_min(x_min);
  const double U = upper_u(x_min);
  const auto K = static_cast<std::uint64_t>(std::floor(U));
  const double A = coeffs.weighted_sum();
  const double chi = include_chi ? 1.0 : 0.0;

  std::vector<Piece> pieces;
  pieces.reserve(K + 1);
  auto floor_sum = [&](std::uint64_t k) {
    double s = 0.0;
    for (std::size_t a = 1; a <= coeffs.n(); ++a) {
      s += coeffs(a) * static_cast<double>(k / a);
    }
    return s;
  };
  // Increasing x is decreasing k.
  for (std::uint64_t k = K; k >= 1; --k) {
    const double lo = k == K ? 1.0 / U : 1.0 / static_cast<double>(k + 1);
    const double hi = 1.0 / static_cast<double>(k);
    if (k == K && static_cast<double>(K) == U) continue;  // empty sliver
    pieces.push_back({lo, hi, A, chi - floor_sum(k), chi + fractional_sum(coeffs, k)});
  }
  pieces.push_back({1.0, std::numeric_limits<double>::infinity(), A, 0.0, 0.0});
  return pieces;
}

std::pair<double, double> critical_line_mean_constants(const CoefficientVector& coeffs) {
  const std::size_t n = coeffs.n();
  std::vector<double> W(n + 1, 0.0), V(n + 1, 0.0), psi(n + 1, 0.0);
  for (std::size_t d = 1; d <= n; ++d) {
    for (std::size_t h = d; h <= n; h += d) {
      const double ch = coeffs(h) / static_cast<double>(h);
      W[d] += ch;
      V[d] += ch * std::log(static_cast<double>(h));
    }
  }
  // psi = (id * log) convolved with mu, so that sum_{d|g} psi(d) = g log g.
  const MobiusTable mu(n);
  for (std::size_t e = 2; e <= n; ++e) {
    const double el = static_cast<double>(e) * std::log(static_cast<double>(e));
    for (std::size_t m = 1; e * m <= n; ++m) psi[e * m] += mu[m] * el;
  }
  const auto phi = totient_table(n);
  CompensatedSum q, wv, wpsi;
  for (std::size_t d = 1; d <= n; ++d) {
    const double p = static_cast<double>(phi[d]);
    q += p * W[d] * W[d];
    wv += p * W[d] * V[d];
    wpsi += psi[d] * W[d] * W[d];
  }
  const double Q = q.value();
  const double P = (2.0 * std::numbers::egamma - std::log(2.0 * std::numbers::pi)) * Q -
                   2.0 * wv.value() + 2.0 * wpsi.value();
  return {Q, P};
}

double pointwise_square_mean(const CoefficientVector& coeffs, bool include_chi) {
  const std::size_t n = coeffs.n();
  std::vector<double> W(n + 1, 0.0);
  for (std::size_t d = 1; d <= n; ++d) {
    for (std::size_t h = d; h <= n; h += d) W[d] += coeffs(h) / static_cast<double>(h);
  }
  const auto j2 = jordan2_table(n);
  CompensatedSum cov;
  for (std::size_t d = 1; d <= n; ++d) cov += static_cast<double>(j2[d]) * W[d] * W[d];
  double s1 = 0.0;
  for (double v : coeffs.values) s1 += v;
  const double mean = (include_chi ? 1.0 : 0.0) + 0.5 * s1;
  return mean * mean + cov.value() / 12.0;
}

DistanceReport exact_norm(const CoefficientVector& coeffs, double x_min) {
  ExactOptions opt;
  opt.x_min = x_min;
  return exact_norm(coeffs, opt);
}

DistanceReport exact_norm(const CoefficientVector& coeffs, const ExactOptions& options) {
  validate_x_min(options.x_min);
  if (coeffs.n() == 0) throw std::invalid_argument("exact_norm: empty coefficient vector");
  const double U = upper_u(options.x_min);
  const auto K = static_cast<std::uint64_t>(std::floor(U));
  const double A = coeffs.weighted_sum();
  const double chi = options.include_chi ? 1.0 : 0.0;

  // Unit pieces k = 1..K-1 plus a partial piece [K, U) when U is fractional.
  const std::uint64_t k_end = static_cast<double>(K) == U ? K : K + 1;
  const std::uint64_t blocks = (k_end - 1 + kBlock - 1) / kBlock;
  std::vector<double> block_sums(blocks, 0.0);

  detail::parallel_for(blocks, options.workers, [&](std::size_t b) {
    const std::uint64_t k0 = 1 + b * kBlock;
    const std::uint64_t k1 = std::min<std::uint64_t>(k0 + kBlock, k_end);
    std::vector<double> divisor_sum;
    std::vector<double> parts(k1 - k0);
    walk_block(coeffs, A, k0, k1, divisor_sum, [&](std::uint64_t k, double r) {
      const double u0 = static_cast<double>(k);
      const double h = k == K ? U - u0 : 1.0;
      const double v = chi + r;  // g at the left end of the piece
      parts[k - k0] = integrate_quadratic_ratio(v * v, 2.0 * A * v, A * A, u0, h);
    });
    CompensatedSum sum;
    if (options.reverse_order) {
      for (auto it = parts.rbegin(); it != parts.rend(); ++it) sum += *it;
    } else {
      for (double p : parts) sum += p;
    }
    block_sums[b] = sum.value();
  });

  CompensatedSum body;
  if (options.reverse_order) {
    for (auto it = block_sums.rbegin(); it != block_sums.rend(); ++it) body += *it;
    body += A * A;
  } else {
    body += A * A;  // x > 1: g = A/x integrates to A^2
    for (double s : block_sums) body += s;
  }

  const double bound = chi + coeffs.abs_sum();
  const double tail_high = bound * bound / U;
  const double tail_est =
      std::clamp(pointwise_square_mean(coeffs, options.include_chi) / U, 0.0, tail_high);

  DistanceReport report;
  report.method = Method::exact;
  report.tail_low = 0.0;
  report.tail_high = tail_high;
  report.value_squared = body.value() + tail_est;
  report.detail["body"] = body.value();
  report.detail["tail_estimate"] = tail_est;
  report.detail["pieces"] = static_cast<double>(k_end);  // k_end - 1 finite pieces + (1, inf)
  report.detail["x_min"] = 1.0 / U;
  return report;
}

}  // namespace nblab
