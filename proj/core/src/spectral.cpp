#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <tuple>

#include "nblab/distance.hpp"
#include "nblab/errors.hpp"
#include "nblab/piecewise.hpp"
#include "parallel.hpp"

namespace nblab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDefaultStep = 0.02;
constexpr double kRefineThreshold = 0.1;  // refine panels where |zeta| dips below this
constexpr int kMaxRefineLevels = 8;
constexpr std::size_t kZetaChunk = 4096;

// Dyadic positions inside one panel: the panel spans [0, kSpan].
constexpr int kSpan = 1 << (kMaxRefineLevels + 1);

struct PanelNode {
  Complex zeta;
  double weight = 0.0;
};

struct PanelResult {
  std::map<int, PanelNode> nodes;  // keyed by dyadic position
};

class PanelRefiner {
 public:
  PanelRefiner(double t0, double width, PanelResult& out) : t0_(t0), width_(width), out_(out) {}

  Complex at(int pos) {
    auto it = out_.nodes.find(pos);
    if (it != out_.nodes.end()) return it->second.zeta;
    const Complex z = zeta({0.5, time(pos)});
    out_.nodes[pos] = {z, 0.0};
    return z;
  }

  void seed(int pos, Complex z) { out_.nodes[pos] = {z, 0.0}; }

  // Simpson on [lo, hi] (positions) with midpoint mid, refined while the
  // two-level estimate of int |zeta|^2 disagrees and |zeta| stays small.
  void refine(int lo, int hi, int level) {
    const int mid = (lo + hi) / 2;
    const int q1 = (lo + mid) / 2;
    const int q3 = (mid + hi) / 2;
    const double flo = std::norm(at(lo)), fmid = std::norm(at(mid)), fhi = std::norm(at(hi));
    const double f1 = std::norm(at(q1)), f3 = std::norm(at(q3));
    const double len = time(hi) - time(lo);
    const double coarse = len / 6.0 * (flo + 4.0 * fmid + fhi);
    const double fine = len / 12.0 * (flo + 4.0 * f1 + 2.0 * fmid + 4.0 * f3 + fhi);
    const double min_abs = std::sqrt(std::min({flo, fmid, fhi, f1, f3}));
    // Accuracy is judged on |zeta|^2 / (1/4 + t^2), the weight it enters with.
    const double t_mid = time(mid);
    const bool converged = std::abs(fine - coarse) <= 1e-12 * len * (0.25 + t_mid * t_mid);
    if (level + 1 < kMaxRefineLevels && !converged && min_abs < kRefineThreshold &&
        (mid - lo) >= 4) {
      refine(lo, mid, level + 1);
      refine(mid, hi, level + 1);
      return;
    }
    const double w = len / 12.0;
    out_.nodes[lo].weight += w;
    out_.nodes[q1].weight += 4.0 * w;
    out_.nodes[mid].weight += 2.0 * w;
    out_.nodes[q3].weight += 4.0 * w;
    out_.nodes[hi].weight += w;
  }

 private:
  double time(int pos) const { return t0_ + width_ * static_cast<double>(pos) / kSpan; }

  double t0_;
  double width_;
  PanelResult& out_;
};

void validate_tau_max(double tau_max) {
  if (!(tau_max > 0.0)) throw std::invalid_argument("spectral: tau_max must be positive");
  if (tau_max > kTauCeiling) {
    throw UnsupportedRange("spectral: tau_max = " + std::to_string(tau_max) +
                           " beyond supported ceiling 1e5");
  }
}

}  // namespace

std::size_t default_spectral_intervals(double tau_max) {
  const auto m = static_cast<std::size_t>(std::ceil(tau_max / kDefaultStep));
  return std::max<std::size_t>(100, m + (m % 2));
}

CriticalLineGrid::CriticalLineGrid(double tau_max, std::size_t intervals, unsigned workers)
    : tau_max_(tau_max) {
  validate_tau_max(tau_max);
  if (intervals < 100) throw std::invalid_argument("spectral: at least 100 nodes required");
  base_intervals_ = intervals + (intervals % 2);
  const double h = base_step();
  const std::size_t count = base_intervals_ + 1;

  base_zeta_.resize(count);
  const std::size_t chunks = (count + kZetaChunk - 1) / kZetaChunk;
  detail::parallel_for(chunks, workers, [&](std::size_t c) {
    const std::size_t start = c * kZetaChunk;
    const std::size_t len = std::min(kZetaChunk, count - start);
    const auto z = zeta_on_line(0.5, static_cast<double>(start) * h, h, len);
    std::copy(z.begin(), z.end(), base_zeta_.begin() + static_cast<std::ptrdiff_t>(start));
  });

  base_weights_.assign(count, 0.0);
  const std::size_t panels = base_intervals_ / 2;
  std::vector<std::size_t> flagged;
  for (std::size_t p = 0; p < panels; ++p) {
    const std::size_t i = 2 * p;
    const double m = std::min({std::abs(base_zeta_[i]), std::abs(base_zeta_[i + 1]),
                               std::abs(base_zeta_[i + 2])});
    if (m < kRefineThreshold) {
      flagged.push_back(p);
    } else {
      base_weights_[i] += h / 3.0;
      base_weights_[i + 1] += 4.0 * h / 3.0;
      base_weights_[i + 2] += h / 3.0;
    }
  }

  std::vector<PanelResult> results(flagged.size());
  detail::parallel_for(flagged.size(), workers, [&](std::size_t f) {
    const std::size_t i = 2 * flagged[f];
    PanelRefiner refiner(static_cast<double>(i) * h, 2.0 * h, results[f]);
    refiner.seed(0, base_zeta_[i]);
    refiner.seed(kSpan / 2, base_zeta_[i + 1]);
    refiner.seed(kSpan, base_zeta_[i + 2]);
    refiner.refine(0, kSpan, 0);
  });

  refined_panels_ = flagged.size();
  for (std::size_t f = 0; f < flagged.size(); ++f) {
    const std::size_t i = 2 * flagged[f];
    const double t0 = static_cast<double>(i) * h;
    for (const auto& [pos, node] : results[f].nodes) {
      if (pos == 0) {
        base_weights_[i] += node.weight;
      } else if (pos == kSpan / 2) {
        base_weights_[i + 1] += node.weight;
      } else if (pos == kSpan) {
        base_weights_[i + 2] += node.weight;
      } else if (node.weight != 0.0) {
        refined_t_.push_back(t0 + 2.0 * h * static_cast<double>(pos) / kSpan);
        refined_weights_.push_back(node.weight);
        refined_zeta_.push_back(node.zeta);
      }
    }
  }
}

std::shared_ptr<const CriticalLineGrid> CriticalLineGrid::shared(double tau_max,
                                                                 std::size_t intervals,
                                                                 unsigned workers) {
  static std::mutex mutex;
  static std::map<std::pair<double, std::size_t>, std::shared_ptr<const CriticalLineGrid>> cache;
  std::lock_guard lock(mutex);
  const auto key = std::make_pair(tau_max, intervals);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto grid = std::make_shared<const CriticalLineGrid>(tau_max, intervals, workers);
  cache.emplace(key, grid);
  return grid;
}

DistanceReport spectral_norm(const CoefficientVector& coeffs, const SpectralOptions& options) {
  validate_tau_max(options.tau_max);
  const std::size_t intervals =
      options.nodes == 0 ? default_spectral_intervals(options.tau_max) : options.nodes;
  if (intervals < 100) throw std::invalid_argument("spectral: at least 100 nodes required");
  const auto grid = CriticalLineGrid::shared(options.tau_max, intervals, options.workers);
  return spectral_norm(coeffs, *grid, options.include_chi);
}

DistanceReport spectral_norm(const CoefficientVector& coeffs, const CriticalLineGrid& grid,
                             bool include_chi) {
  if (coeffs.n() == 0) throw std::invalid_argument("spectral_norm: empty coefficient vector");
  const double T = grid.tau_max();
  const double h = grid.base_step();
  const double chi = include_chi ? 1.0 : 0.0;

  // Integrand without the constant: |zeta A|^2 - 2 chi Re(zeta A).
  auto integrand = [chi](Complex z, Complex a, double t) {
    const Complex za = z * a;
    return (std::norm(za) - 2.0 * chi * za.real()) / (0.25 + t * t);
  };

  CompensatedSum sum;
  const auto& zb = grid.base_zeta();
  const auto& wb = grid.base_weights();
  const auto a_base = dirichlet_sum_on_line(coeffs.values, 0.5, 0.0, h, zb.size());
  for (std::size_t j = 0; j < zb.size(); ++j) {
    if (wb[j] == 0.0) continue;
    sum += wb[j] * integrand(zb[j], a_base[j], static_cast<double>(j) * h);
  }
  const auto& tr = grid.refined_t();
  for (std::size_t j = 0; j < tr.size(); ++j) {
    const Complex a = dirichlet_sum(coeffs.values, {0.5, tr[j]});
    sum += grid.refined_weights()[j] * integrand(grid.refined_zeta()[j], a, tr[j]);
  }
  const double constant_body = chi * 2.0 * std::atan(2.0 * T) / kPi;
  const double body = sum.value() / kPi + constant_body;

  // Tail over (T, inf).
  const auto [Q, P] = critical_line_mean_constants(coeffs);
  const double c1 = coeffs(1);
  const double log_t = std::log(T);
  const double constant_tail = chi * (1.0 - 2.0 * std::atan(2.0 * T) / kPi);
  const double mean_tail = (Q * (log_t + 1.0) + P - 2.0 * chi * c1) / (kPi * T);

  double S = 0.0;
  for (std::size_t a = 1; a <= coeffs.n(); ++a) {
    S += std::abs(coeffs(a)) / std::sqrt(static_cast<double>(a));
  }
  double tail_high = std::numeric_limits<double>::infinity();
  if (T >= 10.0) {
    // (1+t)^{1/4} log(2+t) <= growth * t^{1/4} log t for t >= T.
    const double growth = std::pow(1.0 + 1.0 / T, 0.25) * std::log(2.0 + T) / log_t;
    const double K = kZetaGrowthConstant * growth * S;
    const double i1 = (2.0 * log_t * log_t + 8.0 * log_t + 16.0) / std::sqrt(T);
    const double i2 = (4.0 / 3.0 * log_t + 16.0 / 9.0) * std::pow(T, -0.75);
    tail_high = (K * K * i1 + 2.0 * K * chi * i2 + chi / T) / kPi;
  }
  const double tail_est = std::clamp(constant_tail + mean_tail, 0.0, tail_high);

  DistanceReport report;
  report.method = Method::spectral;
  report.value_squared = body + tail_est;
  report.tail_low = 0.0;
  report.tail_high = tail_high;
  report.detail["body"] = body;
  report.detail["tail_estimate"] = tail_est;
  report.detail["tau_max"] = T;
  report.detail["nodes"] = static_cast<double>(grid.node_count());
  report.detail["refined_panels"] = static_cast<double>(grid.refined_panels());
  return report;
}

}  // namespace nblab
