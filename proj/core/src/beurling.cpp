#include "nblab/beurling.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace nblab {

std::string_view to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::natural: return "natural";
    case Scheme::selberg: return "selberg";
    case Scheme::regularized: return "regularized";
    case Scheme::cesaro: return "cesaro";
    case Scheme::balazard: return "balazard";
    case Scheme::custom: return "custom";
  }
  return "unknown";
}

Scheme parse_scheme(std::string_view name) {
  for (Scheme s : {Scheme::natural, Scheme::selberg, Scheme::regularized, Scheme::cesaro,
                   Scheme::balazard, Scheme::custom}) {
    if (to_string(s) == name) return s;
  }
  throw std::invalid_argument("unknown scheme '" + std::string(name) + "'");
}

double CoefficientVector::weighted_sum() const noexcept {
  double sum = 0.0;
  for (std::size_t a = values.size(); a >= 1; --a) sum += values[a - 1] / static_cast<double>(a);
  return sum;
}

double CoefficientVector::abs_sum() const noexcept {
  double sum = 0.0;
  for (double v : values) sum += std::abs(v);
  return sum;
}

double rho(double a, double x) {
  if (!(a >= 1.0)) throw std::invalid_argument("rho: dilation a must be >= 1");
  if (!(x > 0.0)) throw std::invalid_argument("rho: x must be positive");
  const double y = 1.0 / (a * x);
  return y - std::floor(y);
}

double balazard_epsilon(double c, std::size_t n) {
  return c / std::log(std::log(static_cast<double>(n)));
}

namespace {

double require(const std::optional<double>& value, const char* name, Scheme scheme) {
  if (!value) {
    throw std::invalid_argument(std::string(to_string(scheme)) + " scheme requires parameter " +
                                name);
  }
  return *value;
}

}  // namespace

CoefficientVector make_coefficients(Scheme scheme, std::size_t n, const SchemeParams& params,
                                    const MobiusTable& table) {
  if (scheme == Scheme::custom) {
    throw std::invalid_argument("make_coefficients: custom vectors are built from explicit values");
  }
  if (n == 0) throw std::invalid_argument("make_coefficients: n must be >= 1");
  if (n > table.limit()) {
    throw std::out_of_range("make_coefficients: n = " + std::to_string(n) +
                            " exceeds Moebius table limit " + std::to_string(table.limit()));
  }

  CoefficientVector out;
  out.scheme = scheme;
  out.values.resize(n);
  const double dn = static_cast<double>(n);

  switch (scheme) {
    case Scheme::natural:
      for (std::size_t a = 1; a <= n; ++a) out.values[a - 1] = table[a];
      break;
    case Scheme::selberg: {
      // a = 1 has weight exactly 1 for every n (log 1 = 0), including n = 1.
      const double log_n = std::log(dn);
      for (std::size_t a = 1; a <= n; ++a) {
        const double w = a == 1 ? 1.0 : 1.0 - std::log(static_cast<double>(a)) / log_n;
        out.values[a - 1] = table[a] * w;
      }
      if (n >= 2) out.values[n - 1] = 0.0;
      break;
    }
    case Scheme::regularized:
    case Scheme::cesaro: {
      const double eps = require(params.epsilon, "epsilon", scheme);
      if (!(eps >= 0.0) || !std::isfinite(eps)) {
        throw std::invalid_argument("epsilon must be a finite non-negative number");
      }
      out.params.epsilon = eps;
      for (std::size_t a = 1; a <= n; ++a) {
        const double da = static_cast<double>(a);
        double w = eps == 0.0 ? 1.0 : std::pow(da, -eps);
        if (scheme == Scheme::cesaro) w *= (dn - da) / dn;
        out.values[a - 1] = table[a] * w;
      }
      break;
    }
    case Scheme::balazard: {
      const double c = require(params.c, "c", scheme);
      if (!(c > 0.0) || !std::isfinite(c)) {
        throw std::invalid_argument("balazard scheme requires c > 0");
      }
      if (n < 3) throw std::invalid_argument("balazard scheme requires n >= 3");
      out.params.c = c;
      const double loglog = std::log(std::log(dn));
      for (std::size_t a = 1; a <= n; ++a) {
        out.values[a - 1] = table[a] * std::exp(-c * std::log(static_cast<double>(a)) / loglog);
      }
      break;
    }
    case Scheme::custom:
      break;
  }
  return out;
}

CoefficientVector custom_coefficients(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("custom coefficients must be non-empty");
  CoefficientVector out;
  out.scheme = Scheme::custom;
  out.values = std::move(values);
  return out;
}

double evaluate_combination(const CoefficientVector& coeffs, double x) {
  if (!(x > 0.0)) throw std::invalid_argument("evaluate_combination: x must be positive");
  const double inv_x = 1.0 / x;
  const std::size_t n = coeffs.n();
  // Floors vanish once a > 1/x; those terms collapse to (1/x) sum c_a / a.
  const std::size_t cut =
      inv_x >= static_cast<double>(n) ? n : static_cast<std::size_t>(std::floor(inv_x));
  double linear = 0.0;
  for (std::size_t a = n; a > cut; --a) linear += coeffs(a) / static_cast<double>(a);
  double fractional = 0.0;
  for (std::size_t a = 1; a <= cut; ++a) {
    const double y = inv_x / static_cast<double>(a);
    fractional += coeffs(a) * (y - std::floor(y));
  }
  return inv_x * linear + fractional;
}

}  // namespace nblab
