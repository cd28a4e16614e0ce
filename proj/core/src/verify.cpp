#include "nblab/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "nblab/arith.hpp"
#include "nblab/distance.hpp"
#include "nblab/errors.hpp"
#include "nblab/optimize.hpp"
#include "nblab/special.hpp"

namespace nblab {

VerifyLevel parse_verify_level(std::string_view name) {
  if (name == "quick") return VerifyLevel::quick;
  if (name == "full") return VerifyLevel::full;
  throw std::invalid_argument("unknown verify level '" + std::string(name) + "'");
}

std::string_view to_string(VerifyLevel level) {
  return level == VerifyLevel::quick ? "quick" : "full";
}

bool VerificationReport::all_passed() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

namespace {

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// Runs body(check) and converts an escaping exception into a failure.
template <typename Body>
VerificationCheck run_check(std::string name, double tolerance, Body&& body) {
  VerificationCheck check;
  check.name = std::move(name);
  check.tolerance = tolerance;
  Timer timer;
  try {
    body(check);
  } catch (const std::exception& e) {
    check.passed = false;
    check.detail += std::string(check.detail.empty() ? "" : "; ") + "exception: " + e.what();
  }
  check.seconds = timer.seconds();
  return check;
}

std::string format(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

VerificationCheck check_mobius_floor(std::uint64_t n_max) {
  return run_check("mobius_floor", 0.0, [&](VerificationCheck& c) {
    const MobiusTable table(n_max);
    const auto prefix = mertens_prefix(table);
    std::int64_t worst = 0;
    std::uint64_t worst_n = 0;
    for (std::uint64_t N = 1; N <= n_max; ++N) {
      const std::int64_t err = std::abs(mobius_floor_sum_grouped(prefix, N) - 1);
      if (err > worst) {
        worst = err;
        worst_n = N;
      }
    }
    c.measured_error = static_cast<double>(worst);
    c.passed = worst == 0;
    c.detail = "N <= " + std::to_string(n_max);
    if (worst != 0) c.detail += ", first worst N = " + std::to_string(worst_n);
  });
}

VerificationCheck check_functional_equation(const std::vector<double>& epsilons, double tau_max,
                                            double step, double tolerance) {
  return run_check("functional_equation_ratio", tolerance, [&](VerificationCheck& c) {
    double worst = 0.0;
    std::size_t used = 0, skipped = 0;
    const auto count = static_cast<std::size_t>(std::floor(tau_max / step + 1e-9)) + 1;
    for (double eps : epsilons) {
      for (std::size_t i = 0; i < count; ++i) {
        const double tau = static_cast<double>(i) * step;
        const double den = std::abs(zeta({0.5 + eps, tau}));
        if (den < 1e-6) {
          ++skipped;
          continue;
        }
        const double direct = std::abs(zeta({0.5 - eps, tau})) / den;
        const double gamma_form = zeta_ratio_gamma_form(eps, tau);
        worst = std::max(worst, std::abs(direct - gamma_form) / gamma_form);
        ++used;
      }
    }
    c.measured_error = worst;
    c.passed = used > 0 && worst <= tolerance;
    c.detail = std::to_string(used) + " points, " + std::to_string(skipped) +
               " skipped near zeros, tau <= " + format(tau_max);
  });
}

VerificationCheck check_titchmarsh(const std::vector<double>& sigmas,
                                   const std::vector<double>& taus, double tolerance) {
  return run_check("titchmarsh_transform", tolerance, [&](VerificationCheck& c) {
    double worst = 0.0;
    for (double sigma : sigmas) {
      for (double tau : taus) {
        const auto [left, right] = mellin_transform_check({sigma, tau});
        worst = std::max(worst, std::abs(left - right));
      }
    }
    c.measured_error = worst;
    c.passed = worst <= tolerance;
    c.detail = std::to_string(sigmas.size() * taus.size()) + " points";
  });
}

VerificationCheck check_transform_identity(std::size_t count, double epsilon, std::size_t n,
                                           double tolerance) {
  return run_check("regularized_transform", tolerance, [&](VerificationCheck& c) {
    const MobiusTable table(n);
    std::mt19937_64 rng(20240607);
    std::uniform_real_distribution<double> dist(0.0, 50.0);
    double worst = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
      const double tau = dist(rng);
      const auto [numerical, closed] = regularized_transform_check(epsilon, n, tau, table);
      worst = std::max(worst, std::abs(numerical - closed) / std::max(std::abs(closed), 1e-12));
    }
    c.measured_error = worst;
    c.passed = worst <= tolerance;
    c.detail = std::to_string(count) + " random tau in [0, 50], eps = " + format(epsilon) +
               ", n = " + std::to_string(n);
  });
}

VerificationCheck check_cross_route(const std::vector<SchemeCase>& cases,
                                    const std::vector<std::size_t>& n_values, double tau_max,
                                    double x_min, unsigned workers, double tolerance) {
  return run_check("cross_route_distance", tolerance, [&](VerificationCheck& c) {
    const std::size_t n_max = *std::max_element(n_values.begin(), n_values.end());
    const MobiusTable table(n_max);
    SpectralOptions sopt;
    sopt.tau_max = tau_max;
    sopt.workers = workers;
    ExactOptions eopt;
    eopt.x_min = x_min;
    eopt.workers = workers;
    double worst = 0.0;
    std::size_t compared = 0;
    std::string rejected;
    for (const auto& sc : cases) {
      for (std::size_t n : n_values) {
        CoefficientVector coeffs;
        try {
          coeffs = make_coefficients(sc.scheme, n, sc.params, table);
        } catch (const std::invalid_argument&) {
          rejected += std::string(rejected.empty() ? "" : " ") + std::string(to_string(sc.scheme)) +
                      "(n=" + std::to_string(n) + ")";
          continue;
        }
        const auto e = exact_norm(coeffs, eopt);
        const auto s = spectral_norm(coeffs, sopt);
        worst = std::max(worst, std::abs(e.value_squared - s.value_squared) / e.value_squared);
        ++compared;
      }
    }
    c.measured_error = worst;
    c.passed = compared > 0 && worst <= tolerance;
    c.detail = std::to_string(compared) + " cells, tau_max = " + format(tau_max);
    if (!rejected.empty()) c.detail += ", rejected by precondition: " + rejected;
  });
}

VerificationCheck check_gram_consistency(std::size_t n_max, unsigned workers, double tolerance) {
  return run_check("gram_consistency", tolerance, [&](VerificationCheck& c) {
    const GramSystem full = assemble_gram(n_max, workers);
    double worst = 0.0;
    double previous = 1.0;
    bool positive = true, monotone = true;
    std::size_t ridged = 0;
    for (std::size_t n = 1; n <= n_max; ++n) {
      GramSystem sys = full.leading(n);
      try {
        solve(sys, 0.0);
      } catch (const FactorizationError& e) {
        solve(sys, e.suggested_ridge());
        ++ridged;
      }
      const double r = *sys.residual_squared;
      std::vector<double> v(n);
      for (std::size_t a = 0; a < n; ++a) v[a] = -(*sys.solution)(static_cast<Eigen::Index>(a));
      ExactOptions opt;
      opt.workers = workers;
      const double direct = exact_norm(custom_coefficients(std::move(v)), opt).value_squared;
      worst = std::max(worst, std::abs(direct - r) / r);
      positive = positive && r > 0.0;
      monotone = monotone && r <= previous;
      previous = r;
    }
    c.measured_error = worst;
    c.passed = worst <= tolerance && positive && monotone;
    c.detail = "n <= " + std::to_string(n_max) + ", residual(n_max) = " + format(previous) +
               (positive ? "" : ", non-positive residual") +
               (monotone ? "" : ", residual increased") +
               (ridged ? ", ridged solves: " + std::to_string(ridged) : "");
  });
}

VerificationCheck check_chi_norm(double tau_max, double x_min, unsigned workers) {
  return run_check("chi_norm", 0.0, [&](VerificationCheck& c) {
    const auto zero = custom_coefficients({0.0});
    ExactOptions eopt;
    eopt.x_min = x_min;
    eopt.workers = workers;
    SpectralOptions sopt;
    sopt.tau_max = tau_max;
    sopt.workers = workers;
    const auto e = exact_norm(zero, eopt);
    const auto s = spectral_norm(zero, sopt);
    auto inside = [](const DistanceReport& r) {
      const double body = r.detail.at("body");
      return body + r.tail_low <= 1.0 && 1.0 <= body + r.tail_high;
    };
    c.measured_error = std::max(std::abs(e.value_squared - 1.0), std::abs(s.value_squared - 1.0));
    c.tolerance = std::max(e.tail_high, s.tail_high);
    c.passed = inside(e) && inside(s);
    c.detail = "exact " + format(e.value_squared) + ", spectral " + format(s.value_squared);
  });
}

VerificationReport verify_all(VerifyLevel level, unsigned workers) {
  const bool full = level == VerifyLevel::full;
  VerificationReport report;
  report.level = level;

  report.checks.push_back(check_mobius_floor(full ? 1'000'000 : 100'000));
  report.checks.push_back(
      check_functional_equation({0.05, 0.1, 0.25, 0.4}, full ? 500.0 : 100.0, 0.5));

  std::vector<double> taus;
  if (full) {
    for (int i = -8; i <= 8; ++i) taus.push_back(2.5 * i);
  } else {
    taus = {-20.0, -3.0, 0.0, 7.5, 20.0};
  }
  report.checks.push_back(check_titchmarsh(
      full ? std::vector<double>{0.3, 0.5, 0.7} : std::vector<double>{0.5}, taus));
  report.checks.push_back(check_transform_identity(full ? 100 : 10));

  std::vector<SchemeCase> cases = {{Scheme::natural, {}}, {Scheme::selberg, {}}};
  std::vector<std::size_t> n_values = {1, 10};
  if (full) {
    cases.push_back({Scheme::regularized, {0.1, std::nullopt}});
    cases.push_back({Scheme::cesaro, {0.1, std::nullopt}});
    cases.push_back({Scheme::balazard, {std::nullopt, 1.0}});
    n_values = {1, 10, 50, 100};
  }
  const double tau_max = full ? 1e4 : 1e3;
  report.checks.push_back(check_cross_route(cases, n_values, tau_max, 1e-7, workers));
  report.checks.push_back(check_gram_consistency(full ? 100 : 10, workers));
  report.checks.push_back(check_chi_norm(tau_max, 1e-7, workers));
  return report;
}

}  // namespace nblab
