#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <string>

#include "nblab/distance.hpp"
#include "nblab/experiment.hpp"

using nblab::Scheme;

namespace {

nblab::SweepConfig small_config() {
  nblab::SweepConfig cfg;
  cfg.schemes = {Scheme::natural, Scheme::regularized};
  cfg.n_values = {3, 8};
  cfg.epsilon_values = {0.0, 0.2};
  cfg.x_min = 1e-5;
  return cfg;
}

class EnvGuard {
 public:
  explicit EnvGuard(const char* value) {
    if (const char* old = std::getenv("BEURLING_WORKERS")) saved_ = old;
    if (value) {
      setenv("BEURLING_WORKERS", value, 1);
    } else {
      unsetenv("BEURLING_WORKERS");
    }
  }
  ~EnvGuard() {
    if (saved_) {
      setenv("BEURLING_WORKERS", saved_->c_str(), 1);
    } else {
      unsetenv("BEURLING_WORKERS");
    }
  }

 private:
  std::optional<std::string> saved_;
};

}  // namespace

TEST(Config, ParsesKeyValueLines) {
  std::istringstream in(
      "# a comment\n"
      "schemes = natural, balazard\n"
      "\n"
      "n = 3,10 ,100\n"
      "c = 0.5,1\n"
      "method = both\n"
      "workers = 2\n"
      "x_min = 1e-6\n"
      "tau_max = 500\n"
      "out = rows.csv\n");
  nblab::SweepConfig cfg;
  nblab::read_config(cfg, in);
  ASSERT_EQ(cfg.schemes.size(), 2u);
  EXPECT_EQ(cfg.schemes[1], Scheme::balazard);
  EXPECT_EQ(cfg.n_values, (std::vector<std::size_t>{3, 10, 100}));
  EXPECT_EQ(cfg.c_values, (std::vector<double>{0.5, 1.0}));
  EXPECT_EQ(cfg.method, nblab::SweepMethod::both);
  EXPECT_EQ(cfg.worker_hint, 2u);
  EXPECT_EQ(cfg.x_min, 1e-6);
  EXPECT_EQ(cfg.tau_max, 500.0);
  EXPECT_EQ(cfg.output_path, "rows.csv");
  EXPECT_NO_THROW(cfg.validate());
}

TEST(Config, LaterEntriesOverride) {
  nblab::SweepConfig cfg = small_config();
  nblab::apply_config_entry(cfg, "n", "5");
  nblab::apply_config_entry(cfg, "epsilon", "0.3");
  EXPECT_EQ(cfg.n_values, std::vector<std::size_t>{5});
  EXPECT_EQ(cfg.epsilon_values, std::vector<double>{0.3});
}

TEST(Config, RejectsMalformedInput) {
  nblab::SweepConfig cfg;
  EXPECT_THROW(nblab::apply_config_entry(cfg, "colour", "red"), std::invalid_argument);
  EXPECT_THROW(nblab::apply_config_entry(cfg, "n", "3,x"), std::invalid_argument);
  EXPECT_THROW(nblab::apply_config_entry(cfg, "n", "-4"), std::invalid_argument);
  EXPECT_THROW(nblab::apply_config_entry(cfg, "epsilon", "0.1abc"), std::invalid_argument);
  EXPECT_THROW(nblab::apply_config_entry(cfg, "method", "guess"), std::invalid_argument);
  EXPECT_THROW(nblab::apply_config_entry(cfg, "schemes", "natural,bogus"), std::invalid_argument);
  std::istringstream no_equals("schemes natural\n");
  EXPECT_THROW(nblab::read_config(cfg, no_equals), std::invalid_argument);
  EXPECT_THROW(nblab::read_config_file(cfg, "/nonexistent/sweep.cfg"), std::runtime_error);
}

TEST(Config, ValidationErrors) {
  auto expect_invalid = [](auto mutate) {
    nblab::SweepConfig cfg = small_config();
    mutate(cfg);
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
  };
  expect_invalid([](auto& c) { c.n_values.clear(); });
  expect_invalid([](auto& c) { c.n_values = {5, 5}; });
  expect_invalid([](auto& c) { c.n_values = {0, 4}; });
  expect_invalid([](auto& c) { c.schemes.clear(); });
  expect_invalid([](auto& c) { c.schemes = {Scheme::custom}; });
  expect_invalid([](auto& c) { c.epsilon_values.clear(); });
  expect_invalid([](auto& c) { c.epsilon_values = {-0.1}; });
  expect_invalid([](auto& c) {
    c.schemes = {Scheme::balazard};
    c.c_values = {1.0};
    c.n_values = {2, 8};
  });
  expect_invalid([](auto& c) { c.worker_hint = 0; });
  expect_invalid([](auto& c) { c.x_min = 1.0; });
  expect_invalid([](auto& c) { c.tau_max = 0.0; });
}

TEST(Sweep, RowsFollowGridOrderAndMatchExactRoute) {
  const auto cfg = small_config();
  std::vector<std::string> streamed;
  const auto rows = nblab::run_sweep(cfg, [&](const auto& r) { streamed.push_back(nblab::to_csv(r)); });
  ASSERT_EQ(rows.size(), 6u);  // natural x 2 n, regularized x 2 eps x 2 n
  ASSERT_EQ(streamed.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) EXPECT_EQ(streamed[i], nblab::to_csv(rows[i]));
  EXPECT_EQ(rows[0].scheme, Scheme::natural);
  EXPECT_EQ(rows[0].n, 3u);
  EXPECT_EQ(rows[1].n, 8u);
  EXPECT_EQ(rows[2].epsilon, 0.0);
  EXPECT_EQ(rows[4].epsilon, 0.2);

  const nblab::MobiusTable table(8);
  for (const auto& r : rows) {
    ASSERT_TRUE(r.error.empty()) << r.error;
    EXPECT_EQ(r.method, "exact");
    const auto c = nblab::make_coefficients(r.scheme, r.n, {r.epsilon, r.c}, table);
    EXPECT_EQ(r.distance, std::sqrt(nblab::exact_norm(c, cfg.x_min).value_squared));
  }
  // regularized with eps = 0 is the natural scheme
  EXPECT_EQ(rows[0].distance, rows[2].distance);
  EXPECT_EQ(rows[1].distance, rows[3].distance);
}

TEST(Sweep, BalazardRowsCarryCoupledEpsilon) {
  nblab::SweepConfig cfg;
  cfg.schemes = {Scheme::balazard};
  cfg.n_values = {10, 50};
  cfg.c_values = {1.0, 2.0};
  cfg.x_min = 1e-5;
  const auto rows = nblab::run_sweep(cfg);
  ASSERT_EQ(rows.size(), 4u);
  for (const auto& r : rows) {
    ASSERT_TRUE(r.c && r.epsilon);
    EXPECT_DOUBLE_EQ(*r.epsilon, nblab::balazard_epsilon(*r.c, r.n));
  }
}

TEST(Sweep, BothMethodsAgree) {
  nblab::SweepConfig cfg;
  cfg.schemes = {Scheme::natural};
  cfg.n_values = {5};
  cfg.method = nblab::SweepMethod::both;
  cfg.tau_max = 1000.0;
  const auto rows = nblab::run_sweep(cfg);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].method, "exact");
  EXPECT_EQ(rows[1].method, "spectral");
  EXPECT_NEAR(rows[1].distance / rows[0].distance, 1.0, 1e-3);
}

TEST(Sweep, DeterministicAcrossWorkerCounts) {
  auto cfg = small_config();
  cfg.worker_hint = 1;
  const auto a = nblab::run_sweep(cfg);
  cfg.worker_hint = 4;
  const auto b = nblab::run_sweep(cfg);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].distance, b[i].distance);
    EXPECT_EQ(a[i].tail_high, b[i].tail_high);
    EXPECT_EQ(a[i].epsilon, b[i].epsilon);
  }
}

TEST(Sweep, FailingCellBecomesErrorRow) {
  nblab::SweepConfig cfg;
  cfg.schemes = {Scheme::natural};
  cfg.n_values = {2};
  cfg.method = nblab::SweepMethod::spectral;
  cfg.tau_max = 5e5;  // beyond the supported range
  const auto rows = nblab::run_sweep(cfg);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_FALSE(rows[0].error.empty());
  const auto line = nblab::to_csv(rows[0]);
  EXPECT_EQ(std::count(line.begin(), line.end(), ','), 8);
}

TEST(Csv, FormatsRows) {
  EXPECT_EQ(nblab::sweep_csv_header(), "scheme,n,epsilon,c,distance,tail_high,method,wall_time_ms,error");
  nblab::SweepRow r;
  r.scheme = Scheme::cesaro;
  r.n = 12;
  r.epsilon = 0.25;
  r.distance = 0.1;
  r.tail_high = 2e-7;
  r.method = "exact";
  r.wall_time_ms = 7;
  EXPECT_EQ(nblab::to_csv(r), "cesaro,12,0.25,,0.10000000000000001,1.9999999999999999e-07,exact,7,");
  r.error = "bad, worse";
  EXPECT_EQ(nblab::to_csv(r), "cesaro,12,0.25,,,,exact,7,bad; worse");
}

TEST(Workers, ResolutionOrder) {
  {
    EnvGuard env("3");
    EXPECT_EQ(nblab::resolve_workers(5u), 5u);
    EXPECT_EQ(nblab::resolve_workers(std::nullopt), 3u);
    EXPECT_THROW(nblab::resolve_workers(0u), std::invalid_argument);
  }
  {
    EnvGuard env("zero");
    EXPECT_THROW(nblab::resolve_workers(std::nullopt), std::invalid_argument);
  }
  {
    EnvGuard env(nullptr);
    EXPECT_GE(nblab::resolve_workers(std::nullopt), 1u);
  }
}
