#include "nblab/optimize.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "bernoulli.hpp"
#include "gauss_legendre.hpp"
#include "nblab/errors.hpp"
#include "nblab/piecewise.hpp"
#include "parallel.hpp"

namespace nblab {

double inner_chi_rho(std::uint64_t a) {
  if (a == 0) throw std::invalid_argument("inner_chi_rho: a must be >= 1");
  const double da = static_cast<double>(a);
  return (std::log(da) + 1.0 - std::numbers::egamma) / da;
}

namespace {

constexpr int kMomentOrder = 8;  // J: Bernoulli moments kept in the tail expansion
constexpr std::uint64_t kInitialKappa = 16;

// One piece of a period [0, L): integrand (c0 + c1 w + c2 w^2) / (v0 + w)^2.
struct PeriodPiece {
  double v0;
  double h;
  double c0, c1, c2;
};

std::vector<PeriodPiece> period_pieces(std::uint64_t a, std::uint64_t b, std::uint64_t L) {
  std::vector<PeriodPiece> out;
  out.reserve(L / a + L / b);
  const double inv_ab = 1.0 / (static_cast<double>(a) * static_cast<double>(b));
  std::uint64_t next_a = a, next_b = b, v = 0;
  while (v < L) {
    const std::uint64_t w = std::min(next_a, next_b);
    const double r1 = static_cast<double>(v % a) / static_cast<double>(a);
    const double r2 = static_cast<double>(v % b) / static_cast<double>(b);
    out.push_back({static_cast<double>(v), static_cast<double>(w - v), r1 * r2,
                   r1 / static_cast<double>(b) + r2 / static_cast<double>(a), inv_ab});
    if (w == next_a) next_a += a;
    if (w == next_b) next_b += b;
    v = w;
  }
  return out;
}

const detail::GaussLegendre& gauss6() {
  static const detail::GaussLegendre gl(6);
  return gl;
}

// moments[j] = int_0^L p(v) B_j(v/L) dv for j = 0..J (B_0 = 1). Gauss-Legendre
// of order 6 is exact for the degree <= 10 integrands.
std::array<double, kMomentOrder + 1> period_moments(const std::vector<PeriodPiece>& pieces,
                                                    double L) {
  const auto& gl = gauss6();
  std::array<CompensatedSum, kMomentOrder + 1> acc{};
  for (const auto& p : pieces) {
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
      const double w = 0.5 * p.h * (gl.nodes[i] + 1.0);
      const double f = 0.5 * p.h * gl.weights[i] * (p.c0 + w * (p.c1 + w * p.c2));
      const double x = (p.v0 + w) / L;
      acc[0].add(f);
      for (int j = 1; j <= kMomentOrder; ++j) acc[j].add(f * detail::bernoulli_poly(j, x));
    }
  }
  std::array<double, kMomentOrder + 1> out{};
  for (int j = 0; j <= kMomentOrder; ++j) out[j] = acc[j].value();
  return out;
}

// Bound on the error of the truncated tail expansion at U = kappa L.
double tail_remainder_bound(double kappa) {
  double factorial = 1.0;
  for (int j = 2; j <= kMomentOrder; ++j) factorial *= j;
  return 2.1 * factorial / std::pow(2.0 * std::numbers::pi * kappa, kMomentOrder + 1);
}

}  // namespace

InnerProduct inner_rho_rho_detailed(std::uint64_t a, std::uint64_t b, double tolerance,
                                    std::uint64_t max_pieces) {
  if (a == 0 || b == 0) throw std::invalid_argument("inner_rho_rho: a and b must be >= 1");
  if (!(tolerance >= 1e-10)) throw std::invalid_argument("inner_rho_rho: tolerance must be >= 1e-10");
  if (a > b) std::swap(a, b);

  const std::uint64_t L = std::lcm(a, b);
  const auto pieces = period_pieces(a, b, L);
  const double dL = static_cast<double>(L);

  std::uint64_t kappa = kInitialKappa;
  while (tail_remainder_bound(static_cast<double>(kappa)) > 0.5 * tolerance) kappa *= 2;
  const std::uint64_t total_pieces = kappa * pieces.size();
  if (total_pieces > max_pieces) {
    throw BudgetExceeded("inner_rho_rho(" + std::to_string(a) + ", " + std::to_string(b) +
                         "): " + std::to_string(total_pieces) + " pieces exceed the budget of " +
                         std::to_string(max_pieces));
  }

  // [0, a): both sawtooths are still linear, the integrand is 1/(ab).
  CompensatedSum body;
  body.add(1.0 / static_cast<double>(b));
  for (std::uint64_t period = 0; period < kappa; ++period) {
    const double shift = static_cast<double>(period) * dL;
    for (const auto& p : pieces) {
      if (period == 0 && p.v0 < static_cast<double>(a)) continue;
      body.add(integrate_quadratic_ratio(p.c0, p.c1, p.c2, shift + p.v0, p.h));
    }
  }

  const auto moments = period_moments(pieces, dL);
  const double U = static_cast<double>(kappa) * dL;
  const double ratio = dL / U;
  double tail = moments[0] / dL;  // period mean
  double scale = 1.0;
  for (int j = 1; j <= kMomentOrder; ++j) {
    scale *= -ratio;
    tail += scale * moments[j] / dL;
  }
  tail /= U;

  InnerProduct out;
  out.value = body.value() + tail;
  out.error_bound = tail_remainder_bound(static_cast<double>(kappa)) +
                    64.0 * std::numeric_limits<double>::epsilon() * out.value;
  out.pieces = total_pieces;
  return out;
}

double inner_rho_rho(std::uint64_t a, std::uint64_t b, double tolerance) {
  return inner_rho_rho_detailed(a, b, tolerance).value;
}

GramSystem GramSystem::leading(std::size_t m) const {
  if (m == 0 || m > n) throw std::invalid_argument("GramSystem::leading: m out of range");
  GramSystem out;
  out.n = m;
  out.G = G.topLeftCorner(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  out.b = b.head(static_cast<Eigen::Index>(m));
  return out;
}

GramSystem assemble_gram(std::size_t n, unsigned workers, double tolerance) {
  if (n == 0) throw std::invalid_argument("assemble_gram: n must be >= 1");
  GramSystem sys;
  sys.n = n;
  const auto N = static_cast<Eigen::Index>(n);
  sys.G.resize(N, N);
  sys.b.resize(N);
  for (Eigen::Index i = 0; i < N; ++i) sys.b(i) = inner_chi_rho(static_cast<std::uint64_t>(i + 1));

  // Row i owns the entries (i, j) and (j, i) for j >= i; rows are handed out
  // longest first so the tail of the schedule is short.
  detail::parallel_for(n, workers, [&](std::size_t k) {
    const auto i = static_cast<Eigen::Index>(k);
    for (Eigen::Index j = i; j < N; ++j) {
      const double g = inner_rho_rho(static_cast<std::uint64_t>(i + 1),
                                     static_cast<std::uint64_t>(j + 1), tolerance);
      sys.G(i, j) = g;
      sys.G(j, i) = g;
    }
  });
  return sys;
}

double fallback_ridge(const GramSystem& system) {
  return 1e-12 * system.G.trace() / static_cast<double>(system.n);
}

namespace {

constexpr int kConditionIterations = 20;

double top_eigenvalue(const Eigen::MatrixXd& G) {
  Eigen::VectorXd v = Eigen::VectorXd::Ones(G.rows()).normalized();
  double lambda = 0.0;
  for (int it = 0; it < kConditionIterations; ++it) {
    Eigen::VectorXd w = G * v;
    lambda = v.dot(w);
    const double norm = w.norm();
    if (norm == 0.0) return 0.0;
    v = w / norm;
  }
  return lambda;
}

// Smallest eigenvalue of the factored matrix by inverse iteration.
template <typename Factor>
double bottom_eigenvalue(const Factor& factor, Eigen::Index size) {
  Eigen::VectorXd v(size);
  for (Eigen::Index i = 0; i < size; ++i) v(i) = ((i % 2) ? -1.0 : 1.0) / static_cast<double>(i + 1);
  v.normalize();
  double mu = 0.0;
  for (int it = 0; it < kConditionIterations; ++it) {
    Eigen::VectorXd w = factor.solve(v);
    mu = v.dot(w);  // Rayleigh quotient of the inverse
    const double norm = w.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) break;
    v = w / norm;
  }
  return mu > 0.0 ? 1.0 / mu : 0.0;
}

}  // namespace

void solve(GramSystem& system, double ridge) {
  if (!(ridge >= 0.0)) throw std::invalid_argument("solve: ridge must be >= 0");
  const auto N = static_cast<Eigen::Index>(system.n);
  Eigen::MatrixXd A = system.G;
  A.diagonal().array() += ridge;
  const double top = top_eigenvalue(A);

  Eigen::LLT<Eigen::MatrixXd> llt(A);
  if (llt.info() != Eigen::Success) {
    const double suggested = fallback_ridge(system);
    Eigen::MatrixXd B = system.G;
    B.diagonal().array() += std::max(suggested, ridge);
    Eigen::LLT<Eigen::MatrixXd> retry(B);
    double condition = std::numeric_limits<double>::infinity();
    if (retry.info() == Eigen::Success) {
      const double bottom = bottom_eigenvalue(retry, N);
      if (bottom > 0.0) condition = top / bottom;
    }
    throw FactorizationError("solve: Cholesky factorization failed for n = " +
                                 std::to_string(system.n),
                             condition, suggested);
  }

  Eigen::VectorXd x = llt.solve(system.b);
  const double bottom = bottom_eigenvalue(llt, N);
  system.condition_estimate =
      bottom > 0.0 ? top / bottom : std::numeric_limits<double>::infinity();
  system.ridge = ridge;
  system.residual_squared = 1.0 - system.b.dot(x);
  system.solution = std::move(x);
}

GramSystem best_coefficients(std::size_t n, double regularization, unsigned workers) {
  if (!(regularization >= 0.0)) {
    throw std::invalid_argument("best_coefficients: regularization must be >= 0");
  }
  GramSystem sys = assemble_gram(n, workers);
  solve(sys, regularization);
  return sys;
}

}  // namespace nblab
