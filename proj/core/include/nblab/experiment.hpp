#ifndef NBLAB_EXPERIMENT_HPP
#define NBLAB_EXPERIMENT_HPP

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nblab/beurling.hpp"

namespace nblab {

enum class SweepMethod { exact, spectral, both };

std::string_view to_string(SweepMethod method);
SweepMethod parse_sweep_method(std::string_view name);

struct SweepConfig {
  std::vector<Scheme> schemes;
  std::vector<std::size_t> n_values;
  std::vector<double> epsilon_values;  // regularized, cesaro
  std::vector<double> c_values;        // balazard
  SweepMethod method = SweepMethod::exact;
  std::string output_path = "-";
  unsigned worker_hint = 1;
  double x_min = 1e-7;
  double tau_max = 1e4;

  /// Throws std::invalid_argument when n_values is empty or not strictly
  /// increasing, a scheme lacks its parameter list, or a (scheme, n,
  /// parameter) cell would be rejected by make_coefficients.
  void validate() const;
};

/// Sets one key of a config from its textual value. Keys: schemes, n,
/// epsilon, c, method, out, workers, x_min, tau_max. Lists are
/// comma-separated. Throws std::invalid_argument on unknown keys or
/// malformed values.
void apply_config_entry(SweepConfig& config, std::string_view key, std::string_view value);

/// Reads `key = value` lines; blank lines and lines starting with '#' are
/// skipped.
void read_config(SweepConfig& config, std::istream& in);
void read_config_file(SweepConfig& config, const std::string& path);

struct SweepRow {
  Scheme scheme = Scheme::natural;
  std::size_t n = 0;
  std::optional<double> epsilon;  // for balazard the coupled c / log log n
  std::optional<double> c;
  double distance = 0.0;  // sqrt(value_squared)
  double tail_high = 0.0;
  std::string method;
  long long wall_time_ms = 0;
  std::string error;  // empty unless the cell failed
};

std::string sweep_csv_header();
/// One CSV line (no newline); floats with 17 significant digits, absent
/// values as empty fields.
std::string to_csv(const SweepRow& row);

/// Evaluates every cell of the grid (scheme, then parameter, then n) on up
/// to worker_hint threads. `on_row` sees rows in grid order as soon as all
/// earlier cells have finished. A failing cell yields a row with `error`
/// set; the sweep continues.
std::vector<SweepRow> run_sweep(const SweepConfig& config,
                                const std::function<void(const SweepRow&)>& on_row = {});

/// --workers flag if given, else BEURLING_WORKERS, else the hardware
/// concurrency (at least 1).
unsigned resolve_workers(std::optional<unsigned> flag);

}  // namespace nblab

#endif  // NBLAB_EXPERIMENT_HPP
