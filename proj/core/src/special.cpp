#include "nblab/special.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "nblab/errors.hpp"

namespace nblab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr long double kTwoPiL = 6.283185307179586476925286766559L;

// B_{2j} / (2j)! for j = 1..30.
constexpr std::array<double, 30> kBernoulliOverFactorial = {
    8.3333333333333333333e-2,  -1.3888888888888888889e-3, 3.3068783068783068783e-5,
    -8.2671957671957671958e-7, 2.0876756987868098979e-8,  -5.2841901386874931848e-10,
    1.3382536530684678833e-11, -3.3896802963225828668e-13, 8.5860620562778445641e-15,
    -2.174868698558061873e-16, 5.5090028283602295152e-18, -1.3954464685812523341e-19,
    3.5347070396294674717e-21, -8.9535174270375468504e-23, 2.2679524523376830603e-24,
    -5.7447906688722024453e-26, 1.4551724756148649019e-27, -3.6859949406653101782e-29,
    9.336734257095044672e-31,  -2.3650224157006299346e-32, 5.9906717624821343047e-34,
    -1.5174548844682902617e-35, 3.8437581254541882322e-37, -9.7363530726466910353e-39,
    2.4662470442006809571e-40, -6.2470767418207436931e-42, 1.5824030244644914298e-43,
    -4.0082736859489359685e-45, 1.0153075855569556312e-46, -2.5718041582418717499e-48,
};

std::atomic<double> g_zeta_perturbation{0.0};

// k^{-(sigma + i tau)} with the phase tau*log(k) formed in extended
// precision, so that large tau does not lose digits to argument reduction.
Complex power_neg(long double log_k, double sigma, double tau) {
  const long double phase = std::fmod(static_cast<long double>(tau) * log_k, kTwoPiL);
  const double mag = std::exp(-sigma * static_cast<double>(log_k));
  const double ph = static_cast<double>(phase);
  return {mag * std::cos(ph), -mag * std::sin(ph)};
}

void validate_strip(StripPoint s) {
  if (!(s.sigma >= -1.0 && s.sigma <= 2.0)) {
    throw std::invalid_argument("zeta: sigma = " + std::to_string(s.sigma) +
                                " outside supported strip [-1, 2]");
  }
  if (!(std::abs(s.tau) <= kTauCeiling)) {
    throw UnsupportedRange("zeta: |tau| = " + std::to_string(std::abs(s.tau)) +
                           " above supported ceiling 1e5");
  }
  if (s.sigma == 1.0 && s.tau == 0.0) throw std::domain_error("zeta: pole at s = 1");
}

// Direct terms for Euler-Maclaurin: with N ~ 0.3|tau| successive Bernoulli
// corrections shrink by about (|s| / (2 pi N))^2 < 0.3.
std::size_t base_terms(double tau) {
  return std::max<std::size_t>(20, static_cast<std::size_t>(std::ceil(0.3 * std::abs(tau))));
}

struct Tail {
  Complex value;
  double last_correction;  // modulus of the last Bernoulli term used
};

// N^{1-s}/(s-1) + N^{-s}/2 + sum_j B_{2j}/(2j)! s(s+1)...(s+2j-2) N^{-s-2j+1},
// summed until the terms fall below rounding or stop decreasing.
Tail euler_maclaurin_tail(Complex s, std::size_t N) {
  const long double log_n = std::log(static_cast<long double>(N));
  const double n = static_cast<double>(N);
  const Complex n_pow = power_neg(log_n, s.real(), s.imag());  // N^{-s}
  Complex tail = n_pow * n / (s - 1.0) + 0.5 * n_pow;
  Complex g = s * n_pow / n;  // s (s+1)...(s+2j-2) N^{-s-2j+1}
  const double inv_n2 = 1.0 / (n * n);
  double last = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < kBernoulliOverFactorial.size(); ++j) {
    const Complex term = kBernoulliOverFactorial[j] * g;
    const double size = std::abs(term);
    if (size > last) break;  // asymptotic series has started to diverge
    tail += term;
    last = size;
    if (size <= 1e-17 * std::abs(tail)) break;
    const double m = static_cast<double>(2 * j + 1);
    g *= (s + m) * (s + m + 1.0) * inv_n2;
  }
  return {tail, last};
}

// log k in extended precision, cached for the term counts used here.
const std::vector<long double>& log_table() {
  static const std::vector<long double> table = [] {
    const std::size_t size = static_cast<std::size_t>(0.3 * kTauCeiling) * 8 + 64;
    std::vector<long double> t(size);
    for (std::size_t k = 1; k < size; ++k) t[k] = std::log(static_cast<long double>(k));
    return t;
  }();
  return table;
}

long double log_of(std::size_t k) {
  const auto& t = log_table();
  return k < t.size() ? t[k] : std::log(static_cast<long double>(k));
}

Complex direct_sum(Complex s, std::size_t N) {
  // Summed from the small terms upward.
  Complex sum{0.0, 0.0};
  for (std::size_t k = N - 1; k >= 1; --k) {
    sum += power_neg(log_of(k), s.real(), s.imag());
  }
  return sum;
}

struct Term {
  long double log_k;
  double weight;
};

// Accumulates sum_k weight_k k^{-(sigma + i t_j)} for t_j = t0 + j*step,
// j < count, into out[0..count). Powers for consecutive ordinates are
// obtained by rotation with k^{-i*step}.
void accumulate_on_line(std::span<const Term> terms, double sigma, double t0, double step,
                        std::size_t count, Complex* out) {
  constexpr std::size_t kBlock = 128;
  const std::size_t K = terms.size();
  std::vector<double> zr(K), zi(K), rr(K), ri(K);
  for (std::size_t start = 0; start < count; start += kBlock) {
    const std::size_t len = std::min(kBlock, count - start);
    const double t_start = t0 + static_cast<double>(start) * step;
    for (std::size_t k = 0; k < K; ++k) {
      const Complex base = terms[k].weight * power_neg(terms[k].log_k, sigma, t_start);
      const double rot_phase = step * static_cast<double>(terms[k].log_k);
      zr[k] = base.real();
      zi[k] = base.imag();
      rr[k] = std::cos(rot_phase);
      ri[k] = -std::sin(rot_phase);
    }
    for (std::size_t j = 0; j < len; ++j) {
      double sr0 = 0, si0 = 0, sr1 = 0, si1 = 0;
      std::size_t k = 0;
      for (; k + 1 < K; k += 2) {
        sr0 += zr[k];
        si0 += zi[k];
        sr1 += zr[k + 1];
        si1 += zi[k + 1];
        const double a0 = zr[k] * rr[k] - zi[k] * ri[k];
        const double b0 = zr[k] * ri[k] + zi[k] * rr[k];
        const double a1 = zr[k + 1] * rr[k + 1] - zi[k + 1] * ri[k + 1];
        const double b1 = zr[k + 1] * ri[k + 1] + zi[k + 1] * rr[k + 1];
        zr[k] = a0;
        zi[k] = b0;
        zr[k + 1] = a1;
        zi[k + 1] = b1;
      }
      for (; k < K; ++k) {
        sr0 += zr[k];
        si0 += zi[k];
        const double a0 = zr[k] * rr[k] - zi[k] * ri[k];
        const double b0 = zr[k] * ri[k] + zi[k] * rr[k];
        zr[k] = a0;
        zi[k] = b0;
      }
      out[start + j] += Complex(sr0 + sr1, si0 + si1);
    }
  }
}

}  // namespace

Complex zeta(StripPoint s, double precision) {
  validate_strip(s);
  if (!(precision >= 1e-14)) {
    throw std::invalid_argument("zeta: precision must be >= 1e-14");
  }
  const Complex sv = s.value();
  std::size_t N = base_terms(s.tau);
  Complex result;
  for (int attempt = 0; attempt < 4; ++attempt, N *= 2) {
    const Tail tail = euler_maclaurin_tail(sv, N);
    result = direct_sum(sv, N) + tail.value;
    if (tail.last_correction <= precision * std::max(std::abs(result), 1e-3)) break;
  }
  return result + g_zeta_perturbation.load(std::memory_order_relaxed);
}

std::vector<Complex> dirichlet_sum_on_line(std::span<const double> coeffs, double sigma,
                                           double t0, double step, std::size_t count) {
  std::vector<Term> terms;
  terms.reserve(coeffs.size());
  for (std::size_t k = 1; k <= coeffs.size(); ++k) {
    if (coeffs[k - 1] != 0.0) {
      terms.push_back({log_of(k), coeffs[k - 1]});
    }
  }
  std::vector<Complex> out(count, Complex{0.0, 0.0});
  if (!terms.empty() && count > 0) {
    accumulate_on_line(terms, sigma, t0, step, count, out.data());
  }
  return out;
}

Complex dirichlet_sum(std::span<const double> coeffs, Complex s) {
  Complex sum{0.0, 0.0};
  for (std::size_t k = coeffs.size(); k >= 1; --k) {
    if (coeffs[k - 1] == 0.0) continue;
    sum += coeffs[k - 1] * power_neg(log_of(k), s.real(), s.imag());
  }
  return sum;
}

std::vector<Complex> zeta_on_line(double sigma, double t0, double step, std::size_t count) {
  std::vector<Complex> out(count);
  if (count == 0) return out;
  // Chunks share one term count, sized for the largest |t| in the chunk.
  constexpr std::size_t kChunk = 1024;
  std::vector<Term> terms;
  for (std::size_t start = 0; start < count; start += kChunk) {
    const std::size_t len = std::min(kChunk, count - start);
    const double ta = t0 + static_cast<double>(start) * step;
    const double tb = t0 + static_cast<double>(start + len - 1) * step;
    validate_strip({sigma, ta});
    validate_strip({sigma, tb});
    const std::size_t N = base_terms(std::max(std::abs(ta), std::abs(tb)));
    terms.clear();
    for (std::size_t k = 1; k < N; ++k) {
      terms.push_back({log_of(k), 1.0});
    }
    // Reverse order so the small terms enter first, as in direct_sum.
    std::reverse(terms.begin(), terms.end());
    std::fill(out.begin() + static_cast<std::ptrdiff_t>(start),
              out.begin() + static_cast<std::ptrdiff_t>(start + len), Complex{0.0, 0.0});
    accumulate_on_line(terms, sigma, ta, step, len, out.data() + start);
    for (std::size_t j = 0; j < len; ++j) {
      const double t = t0 + static_cast<double>(start + j) * step;
      validate_strip({sigma, t});
      out[start + j] += euler_maclaurin_tail({sigma, t}, N).value;
      out[start + j] += g_zeta_perturbation.load(std::memory_order_relaxed);
    }
  }
  return out;
}

Complex log_gamma(Complex z) {
  if (z.imag() == 0.0 && z.real() <= 0.0 && std::floor(z.real()) == z.real()) {
    throw std::domain_error("log_gamma: pole at non-positive integer");
  }
  // Shift right until Stirling's series is accurate: |z| >= 15 with
  // Re z >= 0 keeps every correction term below 1e-20.
  const double target = std::abs(z.imag()) >= 15.0 ? 0.0 : 15.0;
  const double shift = std::max(0.0, std::ceil(target - z.real()));
  Complex log_product{0.0, 0.0};
  Complex comp{0.0, 0.0};
  const auto m = static_cast<long long>(shift);
  for (long long k = 0; k < m; ++k) {
    // Kahan summation of log(z + k)
    const Complex y = std::log(z + static_cast<double>(k)) - comp;
    const Complex t = log_product + y;
    comp = (t - log_product) - y;
    log_product = t;
  }
  const Complex w = z + shift;

  // B_{2k} / (2k (2k-1)) for k = 1..10
  static constexpr std::array<double, 10> kStirling = {
      1.0 / 12.0,
      -1.0 / 360.0,
      1.0 / 1260.0,
      -1.0 / 1680.0,
      1.0 / 1188.0,
      -691.0 / 360360.0,
      1.0 / 156.0,
      -3617.0 / 122400.0,
      43867.0 / 244188.0,
      -174611.0 / 125400.0,
  };
  const Complex inv = 1.0 / w;
  const Complex inv2 = inv * inv;
  Complex series{0.0, 0.0};
  Complex p = inv;
  for (double c : kStirling) {
    series += c * p;
    p *= inv2;
  }
  const Complex stirling =
      (w - 0.5) * std::log(w) - w + 0.5 * std::log(2.0 * kPi) + series;
  return stirling - log_product;
}

namespace {

void validate_epsilon(double epsilon) {
  if (!(epsilon >= 0.0 && epsilon < 0.5)) {
    throw std::invalid_argument("zeta_ratio: epsilon must lie in [0, 1/2)");
  }
}

constexpr double kNearZeroDenominator = 1e-8;

}  // namespace

double zeta_ratio_gamma_form(double epsilon, double tau) {
  validate_epsilon(epsilon);
  const Complex num = log_gamma({0.25 + 0.5 * epsilon, 0.5 * tau});
  const Complex den = log_gamma({0.25 - 0.5 * epsilon, 0.5 * tau});
  return std::exp(-epsilon * std::log(kPi) + (num - den).real());
}

double zeta_ratio(double epsilon, double tau) {
  validate_epsilon(epsilon);
  if (epsilon == 0.0) return 1.0;
  const double den = std::abs(zeta({0.5 + epsilon, tau}));
  if (den < kNearZeroDenominator) return zeta_ratio_gamma_form(epsilon, tau);
  return std::abs(zeta({0.5 - epsilon, tau})) / den;
}

double RatioScan::envelope(double tau) const {
  return fitted_C * std::pow(1.0 + std::abs(tau), epsilon);
}

RatioScan ratio_scan(double epsilon, double tau_max, double step) {
  validate_epsilon(epsilon);
  if (!(step > 0.0)) throw std::invalid_argument("ratio_scan: step must be positive");
  if (!(tau_max >= 0.0)) throw std::invalid_argument("ratio_scan: tau_max must be >= 0");
  if (tau_max > kTauCeiling) throw UnsupportedRange("ratio_scan: tau_max above 1e5");

  RatioScan scan;
  scan.epsilon = epsilon;
  const auto count = static_cast<std::size_t>(std::floor(tau_max / step + 1e-9)) + 1;
  scan.tau_grid.resize(count);
  for (std::size_t i = 0; i < count; ++i) scan.tau_grid[i] = static_cast<double>(i) * step;
  scan.ratios.assign(count, 1.0);
  if (epsilon > 0.0) {
    const auto num = zeta_on_line(0.5 - epsilon, 0.0, step, count);
    const auto den = zeta_on_line(0.5 + epsilon, 0.0, step, count);
    for (std::size_t i = 0; i < count; ++i) {
      const double d = std::abs(den[i]);
      scan.ratios[i] = d < kNearZeroDenominator
                           ? zeta_ratio_gamma_form(epsilon, scan.tau_grid[i])
                           : std::abs(num[i]) / d;
    }
  }
  for (std::size_t i = 0; i < count; ++i) {
    scan.fitted_C = std::max(
        scan.fitted_C, scan.ratios[i] / std::pow(1.0 + std::abs(scan.tau_grid[i]), epsilon));
  }
  return scan;
}

namespace testing {

void set_zeta_perturbation(double delta) {
  g_zeta_perturbation.store(delta, std::memory_order_relaxed);
}

double zeta_perturbation() { return g_zeta_perturbation.load(std::memory_order_relaxed); }

}  // namespace testing

}  // namespace nblab
