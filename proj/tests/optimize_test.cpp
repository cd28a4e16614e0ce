#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "nblab/distance.hpp"
#include "nblab/errors.hpp"
#include "nblab/optimize.hpp"

namespace {

struct GramRef {
  std::uint64_t a, b;
  double value;
};

// mpmath references (tests/oracles/reference_values.py).
constexpr GramRef kGram[] = {
    {1, 1, 1.260661401507812622954147},  {1, 2, 0.7722092559908731398613025},
    {2, 3, 0.4411035092794021763273359}, {3, 5, 0.2735564369630130823902761},
    {4, 6, 0.220551754639701088163668},  {17, 17, 0.07415655302987133076200867},
    {7, 10, 0.1287268301345383126999701},
};

}  // namespace

TEST(InnerChiRho, ClosedForm) {
  EXPECT_NEAR(nblab::inner_chi_rho(1), 0.4227843350984671393934879, 1e-15);
  EXPECT_NEAR(nblab::inner_chi_rho(2), 0.55796575782920622440536, 1e-15);
  EXPECT_NEAR(nblab::inner_chi_rho(17), 0.1915292752443931305672366, 1e-15);
  EXPECT_THROW(nblab::inner_chi_rho(0), std::invalid_argument);
}

TEST(InnerChiRho, BreakpointQuadrature) {
  // In u = 1/x: int_1^inf {u/a} / u^2 du. [1, a) is linear; on [a k, a(k+1))
  // the integral is (log(1 + 1/k) - 1/(k+1)) / a, summed up to K with the
  // remaining terms ~ 1/(2k^2) added in closed form.
  const std::uint64_t a = 17;
  const long double da = a;
  long double sum = 0.0L;
  const std::uint64_t K = 2'000'000;
  for (std::uint64_t k = K; k >= 1; --k) {
    const long double dk = k;
    sum += std::log1p(1.0L / dk) - 1.0L / (dk + 1.0L);
  }
  const long double tail = 1.0L / (2.0L * K);  // error O(1/K^2)
  const long double value = (std::log(da) + sum + tail) / da;
  EXPECT_NEAR(static_cast<double>(value), nblab::inner_chi_rho(a), 1e-10);
}

TEST(InnerChiRho, MatchesExactRoute) {
  // <chi, rho_a> = (||chi + rho_a||^2 - 1 - ||rho_a||^2) / 2
  for (std::uint64_t a : {3u, 17u}) {
    std::vector<double> v(a, 0.0);
    v[a - 1] = 1.0;
    const auto c = nblab::custom_coefficients(v);
    nblab::ExactOptions with, without;
    without.include_chi = false;
    const double both = nblab::exact_norm(c, with).value_squared;
    const double alone = nblab::exact_norm(c, without).value_squared;
    EXPECT_NEAR(0.5 * (both - 1.0 - alone), nblab::inner_chi_rho(a), 1e-8) << a;
  }
}

TEST(InnerRhoRho, Oracles) {
  for (const auto& r : kGram) {
    const auto ip = nblab::inner_rho_rho_detailed(r.a, r.b);
    EXPECT_NEAR(ip.value, r.value, 1e-10) << r.a << "," << r.b;
    EXPECT_LE(std::abs(ip.value - r.value), ip.error_bound + 1e-14) << r.a << "," << r.b;
  }
}

TEST(InnerRhoRho, SymmetricBitwise) {
  for (std::uint64_t a = 1; a <= 12; ++a) {
    for (std::uint64_t b = 1; b <= 12; ++b) {
      EXPECT_EQ(nblab::inner_rho_rho(a, b), nblab::inner_rho_rho(b, a));
    }
  }
}

TEST(InnerRhoRho, ScalesInverselyWithCommonFactor) {
  // <rho_ka, rho_kb> = <rho_a, rho_b> / k
  for (std::uint64_t k : {2u, 3u, 7u}) {
    for (const auto& [a, b] : {std::pair<std::uint64_t, std::uint64_t>{1, 1}, {2, 3}, {4, 9}}) {
      const double base = nblab::inner_rho_rho(a, b);
      EXPECT_NEAR(nblab::inner_rho_rho(k * a, k * b) * static_cast<double>(k), base, 1e-10);
    }
  }
}

TEST(InnerRhoRho, DiagonalAgreesWithExactRoute) {
  for (std::uint64_t a : {1u, 5u, 12u}) {
    std::vector<double> v(a, 0.0);
    v[a - 1] = 1.0;
    nblab::ExactOptions opt;
    opt.include_chi = false;
    const double route = nblab::exact_norm(nblab::custom_coefficients(v), opt).value_squared;
    EXPECT_NEAR(nblab::inner_rho_rho(a, a), route, 1e-8) << a;
  }
}

TEST(InnerRhoRho, BudgetAndPreconditions) {
  EXPECT_THROW(nblab::inner_rho_rho_detailed(97, 89, 1e-10, 1000), nblab::BudgetExceeded);
  EXPECT_THROW(nblab::inner_rho_rho(1, 2, 1e-12), std::invalid_argument);
  EXPECT_THROW(nblab::inner_rho_rho(0, 2), std::invalid_argument);
  const auto loose = nblab::inner_rho_rho_detailed(5, 7, 1e-6);
  const auto tight = nblab::inner_rho_rho_detailed(5, 7, 1e-10);
  EXPECT_LE(loose.pieces, tight.pieces);
  EXPECT_LE(tight.error_bound, 1e-10);
  EXPECT_NEAR(loose.value, tight.value, 1e-6);
}

TEST(Gram, SymmetricAndPositiveDefinite) {
  const auto sys = nblab::assemble_gram(12);
  EXPECT_TRUE(sys.G.isApprox(sys.G.transpose(), 0.0));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sys.G);
  EXPECT_GT(eig.eigenvalues().minCoeff(), 0.0);
}

TEST(Gram, WorkerIndependent) {
  const auto one = nblab::assemble_gram(15, 1);
  const auto three = nblab::assemble_gram(15, 3);
  EXPECT_TRUE((one.G.array() == three.G.array()).all());
}

TEST(BestCoefficients, SingleTerm) {
  const auto sys = nblab::best_coefficients(1);
  const double g = nblab::inner_rho_rho(1, 1);
  const double b = nblab::inner_chi_rho(1);
  EXPECT_NEAR((*sys.solution)(0), b / g, 1e-14);
  EXPECT_NEAR(*sys.residual_squared, 1.0 - b * b / g, 1e-14);
  EXPECT_NEAR(*sys.residual_squared, 0.85821205139551, 1e-12);
}

TEST(BestCoefficients, TwoTermsAgainstOracle) {
  const auto sys = nblab::best_coefficients(2);
  EXPECT_NEAR((*sys.solution)(0), -0.8287970507861060992, 1e-9);
  EXPECT_NEAR((*sys.solution)(1), 1.900542858457225484, 1e-9);
  EXPECT_NEAR(*sys.residual_squared, 0.2899645737422027318, 1e-10);
}

TEST(BestCoefficients, ResidualMatchesExactRoute) {
  const auto sys = nblab::best_coefficients(8);
  std::vector<double> v(8);
  for (int i = 0; i < 8; ++i) v[i] = -(*sys.solution)(i);
  nblab::ExactOptions opt;
  const double route = nblab::exact_norm(nblab::custom_coefficients(v), opt).value_squared;
  EXPECT_NEAR(route / *sys.residual_squared, 1.0, 1e-6);
}

TEST(BestCoefficients, NestedResidualsDecrease) {
  const auto full = nblab::assemble_gram(25);
  double previous = 1.0;
  for (std::size_t n = 1; n <= 25; ++n) {
    auto sys = full.leading(n);
    nblab::solve(sys, 0.0);
    EXPECT_GT(*sys.residual_squared, 0.0);
    EXPECT_LE(*sys.residual_squared, previous + 1e-14) << n;
    previous = *sys.residual_squared;
    EXPECT_GE(sys.condition_estimate, 1.0);
  }
}

TEST(BestCoefficients, LeadingBlockMatchesDirectAssembly) {
  const auto full = nblab::assemble_gram(10);
  const auto direct = nblab::assemble_gram(6);
  const auto lead = full.leading(6);
  EXPECT_TRUE((lead.G.array() == direct.G.array()).all());
  EXPECT_TRUE((lead.b.array() == direct.b.array()).all());
  EXPECT_FALSE(lead.solution.has_value());
  EXPECT_THROW(full.leading(0), std::invalid_argument);
  EXPECT_THROW(full.leading(11), std::invalid_argument);
}

TEST(BestCoefficients, RidgeShrinksTowardZero) {
  auto plain = nblab::assemble_gram(5);
  auto ridged = plain;
  nblab::solve(plain, 0.0);
  nblab::solve(ridged, 1e-2);
  EXPECT_LT(ridged.solution->norm(), plain.solution->norm());
  EXPECT_EQ(ridged.ridge, 1e-2);
  EXPECT_GE(*ridged.residual_squared, *plain.residual_squared);
  EXPECT_THROW(nblab::solve(plain, -1.0), std::invalid_argument);
  EXPECT_THROW(nblab::best_coefficients(3, -1.0), std::invalid_argument);
}

TEST(BestCoefficients, FactorizationErrorCarriesGuidance) {
  nblab::GramSystem sys;
  sys.n = 2;
  sys.G.resize(2, 2);
  sys.G << 1.0, 1.0, 1.0, 1.0 - 1e-17;
  sys.b.resize(2);
  sys.b << 0.5, 0.5;
  try {
    nblab::solve(sys, 0.0);
    FAIL() << "expected FactorizationError";
  } catch (const nblab::FactorizationError& e) {
    EXPECT_GT(e.suggested_ridge(), 0.0);
    EXPECT_NEAR(e.suggested_ridge(), nblab::fallback_ridge(sys), 1e-30);
  }
}
