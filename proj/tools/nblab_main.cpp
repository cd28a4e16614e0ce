// nblab: command-line front end for the core library.
//
// Exit status: 0 success, 1 verification failure, 2 bad arguments,
// 3 numerical failure (budget, factorization, unsupported range).

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nblab/arith.hpp"
#include "nblab/beurling.hpp"
#include "nblab/distance.hpp"
#include "nblab/errors.hpp"
#include "nblab/experiment.hpp"
#include "nblab/optimize.hpp"
#include "nblab/special.hpp"
#include "nblab/verify.hpp"

namespace {

using nlohmann::json;

// Output sink: "-" is standard output, anything else a file.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path == "-" || path.empty()) {
      out_ = &std::cout;
    } else {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw std::runtime_error("cannot open output file '" + path + "'");
      out_ = file_.get();
    }
    *out_ << std::setprecision(17);
  }
  std::ostream& operator*() { return *out_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* out_ = nullptr;
};

struct SchemeArgs {
  std::string scheme = "natural";
  std::size_t n = 1;
  std::optional<double> epsilon;
  std::optional<double> c;
};

void add_scheme_options(CLI::App* cmd, SchemeArgs& args) {
  cmd->add_option("--scheme", args.scheme,
                  "natural|selberg|regularized|cesaro|balazard")->required();
  cmd->add_option("--n", args.n, "support size")->required()->check(CLI::PositiveNumber);
  cmd->add_option("--epsilon", args.epsilon, "exponent for regularized and cesaro");
  cmd->add_option("--c", args.c, "constant for balazard");
}

nblab::CoefficientVector build_coefficients(const SchemeArgs& args) {
  const nblab::MobiusTable table(args.n);
  return nblab::make_coefficients(nblab::parse_scheme(args.scheme), args.n,
                                  {args.epsilon, args.c}, table);
}

json report_json(const nblab::DistanceReport& r, long long wall_ms) {
  json j;
  j["method"] = std::string(nblab::to_string(r.method));
  j["value_squared"] = r.value_squared;
  j["distance"] = std::sqrt(std::max(0.0, r.value_squared));
  j["tail_low"] = r.tail_low;
  j["tail_high"] = r.tail_high;
  j["wall_time_ms"] = wall_ms;
  j["detail"] = r.detail;
  return j;
}

long long elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                               start)
      .count();
}

void print_check(std::ostream& os, const nblab::VerificationCheck& c) {
  os << (c.passed ? "PASS" : "FAIL") << "  " << std::left << std::setw(26) << c.name
     << " error=" << std::setprecision(3) << std::scientific << c.measured_error
     << " tol=" << c.tolerance << std::defaultfloat << std::setprecision(3)
     << " time=" << c.seconds << "s  " << c.detail << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nblab: Nyman-Beurling approximation laboratory"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "nblab 0.1.0");

  // sieve
  std::uint64_t sieve_limit = 0;
  std::string sieve_out = "-";
  auto* sieve = app.add_subcommand("sieve", "Moebius values as CSV n,mu");
  sieve->add_option("--limit", sieve_limit)->required()->check(CLI::PositiveNumber);
  sieve->add_option("--out", sieve_out, "output path, - for stdout");

  // zeta
  double zeta_sigma = 0.5, zeta_tau = 0.0, zeta_precision = 1e-12;
  auto* zeta_cmd = app.add_subcommand("zeta", "Riemann zeta at sigma + i tau");
  zeta_cmd->add_option("--sigma", zeta_sigma)->required();
  zeta_cmd->add_option("--tau", zeta_tau)->required();
  zeta_cmd->add_option("--precision", zeta_precision, "relative error target");

  // ratio-scan
  double scan_eps = 0.1, scan_tau_max = 100.0, scan_step = 0.5;
  std::string scan_out = "-";
  auto* scan = app.add_subcommand("ratio-scan", "zeta ratio scan as CSV tau,ratio,envelope");
  scan->add_option("--epsilon", scan_eps)->required();
  scan->add_option("--tau-max", scan_tau_max)->required();
  scan->add_option("--step", scan_step)->required();
  scan->add_option("--out", scan_out);

  // coeffs
  SchemeArgs coeff_args;
  std::string coeff_out = "-";
  auto* coeffs = app.add_subcommand("coeffs", "scheme coefficients as CSV a,c");
  add_scheme_options(coeffs, coeff_args);
  coeffs->add_option("--out", coeff_out);

  // distance
  SchemeArgs dist_args;
  std::string dist_method = "exact", dist_out = "-";
  double dist_x_min = 1e-7, dist_tau_max = 1e4;
  std::optional<unsigned> dist_workers;
  auto* distance = app.add_subcommand("distance", "||chi + sum c_a rho_a||^2 as JSON");
  add_scheme_options(distance, dist_args);
  distance->add_option("--method", dist_method, "exact|spectral|both");
  distance->add_option("--x-min", dist_x_min);
  distance->add_option("--tau-max", dist_tau_max);
  distance->add_option("--workers", dist_workers);
  distance->add_option("--out", dist_out);

  // optimize
  std::size_t opt_n = 1;
  double opt_ridge = 0.0;
  std::string opt_out = "-", opt_csv;
  std::optional<unsigned> opt_workers;
  auto* optimize = app.add_subcommand("optimize", "best coefficients on {1..n} as JSON");
  optimize->add_option("--n", opt_n)->required()->check(CLI::PositiveNumber);
  optimize->add_option("--ridge", opt_ridge, "ridge added to the Gram diagonal");
  optimize->add_option("--out", opt_out);
  optimize->add_option("--csv", opt_csv, "also write CSV a,c_star");
  optimize->add_option("--workers", opt_workers);

  // sweep
  std::string sweep_config;
  std::optional<std::string> sw_schemes, sw_n, sw_eps, sw_c, sw_method, sw_out;
  std::optional<double> sw_x_min, sw_tau_max;
  std::optional<unsigned> sw_workers;
  auto* sweep = app.add_subcommand("sweep", "grid of distances as CSV");
  sweep->add_option("--config", sweep_config, "key=value config file");
  sweep->add_option("--schemes", sw_schemes, "comma-separated scheme list");
  sweep->add_option("--n", sw_n, "comma-separated support sizes");
  sweep->add_option("--epsilon", sw_eps, "comma-separated epsilon values");
  sweep->add_option("--c", sw_c, "comma-separated balazard constants");
  sweep->add_option("--method", sw_method, "exact|spectral|both");
  sweep->add_option("--x-min", sw_x_min);
  sweep->add_option("--tau-max", sw_tau_max);
  sweep->add_option("--workers", sw_workers);
  sweep->add_option("--out", sw_out);

  // verify
  std::string verify_level = "quick", verify_format = "text", verify_out = "-";
  std::optional<unsigned> verify_workers;
  double verify_perturb = 0.0;
  auto* verify = app.add_subcommand("verify", "run the identity checks");
  verify->add_option("--level", verify_level, "quick|full");
  verify->add_option("--format", verify_format, "text|json");
  verify->add_option("--out", verify_out);
  verify->add_option("--workers", verify_workers);
  verify->add_option("--perturb-zeta", verify_perturb,
                     "add a constant to every zeta value (fault injection)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sieve) {
      const auto table = nblab::sieve_mobius(sieve_limit);
      Output out(sieve_out);
      std::string buf = "n,mu\n";
      for (std::uint64_t k = 1; k <= sieve_limit; ++k) {
        buf += std::to_string(k);
        buf += ',';
        buf += std::to_string(table[k]);
        buf += '\n';
        if (buf.size() > (1u << 16)) {
          *out << buf;
          buf.clear();
        }
      }
      *out << buf;
    } else if (*zeta_cmd) {
      const auto z = nblab::zeta({zeta_sigma, zeta_tau}, zeta_precision);
      std::cout << std::setprecision(17) << "sigma,tau,re,im\n"
                << zeta_sigma << ',' << zeta_tau << ',' << z.real() << ',' << z.imag() << '\n';
    } else if (*scan) {
      const auto result = nblab::ratio_scan(scan_eps, scan_tau_max, scan_step);
      Output out(scan_out);
      *out << "tau,ratio,envelope\n";
      for (std::size_t i = 0; i < result.tau_grid.size(); ++i) {
        *out << result.tau_grid[i] << ',' << result.ratios[i] << ','
             << result.envelope(result.tau_grid[i]) << '\n';
      }
      std::cerr << std::setprecision(17) << "fitted_C=" << result.fitted_C << '\n';
    } else if (*coeffs) {
      const auto c = build_coefficients(coeff_args);
      Output out(coeff_out);
      *out << "a,c\n";
      for (std::size_t a = 1; a <= c.n(); ++a) *out << a << ',' << c(a) << '\n';
    } else if (*distance) {
      const auto c = build_coefficients(dist_args);
      const auto method = nblab::parse_sweep_method(dist_method);
      const unsigned workers = nblab::resolve_workers(dist_workers);
      json results = json::array();
      if (method != nblab::SweepMethod::spectral) {
        const auto start = std::chrono::steady_clock::now();
        nblab::ExactOptions opt;
        opt.x_min = dist_x_min;
        opt.workers = workers;
        const auto r = nblab::exact_norm(c, opt);
        results.push_back(report_json(r, elapsed_ms(start)));
      }
      if (method != nblab::SweepMethod::exact) {
        const auto start = std::chrono::steady_clock::now();
        nblab::SpectralOptions opt;
        opt.tau_max = dist_tau_max;
        opt.workers = workers;
        const auto r = nblab::spectral_norm(c, opt);
        results.push_back(report_json(r, elapsed_ms(start)));
      }
      json doc;
      if (results.size() == 1) {
        doc = results[0];
      } else {
        doc["results"] = results;
        const double e = results[0]["value_squared"], s = results[1]["value_squared"];
        doc["relative_gap"] = std::abs(e - s) / e;
      }
      doc["scheme"] = dist_args.scheme;
      doc["n"] = dist_args.n;
      Output out(dist_out);
      *out << doc.dump(2) << '\n';
    } else if (*optimize) {
      const auto start = std::chrono::steady_clock::now();
      auto sys = nblab::assemble_gram(opt_n, nblab::resolve_workers(opt_workers));
      try {
        nblab::solve(sys, opt_ridge);
      } catch (const nblab::FactorizationError& e) {
        std::cerr << "error: " << e.what() << "\n  condition estimate " << e.condition_estimate()
                  << "; retry with --ridge " << std::setprecision(17) << e.suggested_ridge()
                  << '\n';
        return 3;
      }
      json doc;
      doc["n"] = opt_n;
      doc["ridge"] = sys.ridge;
      doc["residual_squared"] = *sys.residual_squared;
      doc["condition_estimate"] = sys.condition_estimate;
      doc["distance_sqrt_log_n"] =
          std::sqrt(std::max(0.0, *sys.residual_squared) * std::log(static_cast<double>(opt_n)));
      std::vector<double> c(sys.solution->data(), sys.solution->data() + sys.solution->size());
      doc["coefficients"] = c;
      doc["wall_time_ms"] = elapsed_ms(start);
      Output out(opt_out);
      *out << doc.dump(2) << '\n';
      if (!opt_csv.empty()) {
        Output csv(opt_csv);
        *csv << "a,c_star\n";
        for (std::size_t a = 0; a < c.size(); ++a) *csv << a + 1 << ',' << c[a] << '\n';
      }
    } else if (*sweep) {
      nblab::SweepConfig config;
      config.worker_hint = 0;  // marks "not set by the config file"
      if (!sweep_config.empty()) nblab::read_config_file(config, sweep_config);
      if (sw_schemes) nblab::apply_config_entry(config, "schemes", *sw_schemes);
      if (sw_n) nblab::apply_config_entry(config, "n", *sw_n);
      if (sw_eps) nblab::apply_config_entry(config, "epsilon", *sw_eps);
      if (sw_c) nblab::apply_config_entry(config, "c", *sw_c);
      if (sw_method) nblab::apply_config_entry(config, "method", *sw_method);
      if (sw_out) config.output_path = *sw_out;
      if (sw_x_min) config.x_min = *sw_x_min;
      if (sw_tau_max) config.tau_max = *sw_tau_max;
      if (sw_workers || config.worker_hint == 0) {
        config.worker_hint = nblab::resolve_workers(sw_workers);
      }
      config.validate();
      Output out(config.output_path);
      *out << nblab::sweep_csv_header() << '\n' << std::flush;
      const auto rows = nblab::run_sweep(config, [&](const nblab::SweepRow& row) {
        *out << nblab::to_csv(row) << '\n' << std::flush;
      });
      for (const auto& r : rows) {
        if (!r.error.empty()) {
          std::cerr << "warning: " << nblab::to_string(r.scheme) << " n=" << r.n << ": "
                    << r.error << '\n';
        }
      }
    } else if (*verify) {
      const auto level = nblab::parse_verify_level(verify_level);
      nblab::testing::set_zeta_perturbation(verify_perturb);
      const auto report = nblab::verify_all(level, nblab::resolve_workers(verify_workers));
      nblab::testing::set_zeta_perturbation(0.0);
      Output out(verify_out);
      if (verify_format == "json") {
        json doc;
        doc["level"] = std::string(nblab::to_string(level));
        doc["passed"] = report.all_passed();
        doc["checks"] = json::array();
        for (const auto& c : report.checks) {
          doc["checks"].push_back({{"name", c.name},
                                   {"passed", c.passed},
                                   {"measured_error", c.measured_error},
                                   {"tolerance", c.tolerance},
                                   {"seconds", c.seconds},
                                   {"detail", c.detail}});
        }
        *out << doc.dump(2) << '\n';
      } else if (verify_format == "text") {
        for (const auto& c : report.checks) print_check(*out, c);
        *out << (report.all_passed() ? "all checks passed" : "verification FAILED") << '\n';
      } else {
        throw std::invalid_argument("unknown format '" + verify_format + "'");
      }
      return report.all_passed() ? 0 : 1;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
