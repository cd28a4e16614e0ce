#include "nblab/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "nblab/arith.hpp"
#include "nblab/distance.hpp"
#include "parallel.hpp"

namespace nblab {

std::string_view to_string(SweepMethod method) {
  switch (method) {
    case SweepMethod::exact: return "exact";
    case SweepMethod::spectral: return "spectral";
    case SweepMethod::both: return "both";
  }
  return "exact";
}

SweepMethod parse_sweep_method(std::string_view name) {
  if (name == "exact") return SweepMethod::exact;
  if (name == "spectral") return SweepMethod::spectral;
  if (name == "both") return SweepMethod::both;
  throw std::invalid_argument("unknown method '" + std::string(name) + "'");
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(std::string_view value) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= value.size()) {
    const auto comma = value.find(',', start);
    const auto end = comma == std::string_view::npos ? value.size() : comma;
    const auto item = trim(value.substr(start, end - start));
    if (!item.empty()) out.emplace_back(item);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

double parse_double(const std::string& text, std::string_view key) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size()) {
    throw std::invalid_argument("config key '" + std::string(key) + "': bad number '" + text + "'");
  }
  return v;
}

unsigned long long parse_unsigned(const std::string& text, std::string_view key) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    if (!text.empty() && text[0] != '-') v = std::stoull(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw std::invalid_argument("config key '" + std::string(key) + "': bad integer '" + text +
                                "'");
  }
  return v;
}

std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

struct Cell {
  Scheme scheme;
  std::size_t n;
  SchemeParams params;
};

std::vector<Cell> grid_cells(const SweepConfig& config) {
  std::vector<Cell> cells;
  for (Scheme s : config.schemes) {
    std::vector<SchemeParams> params;
    switch (s) {
      case Scheme::regularized:
      case Scheme::cesaro:
        for (double e : config.epsilon_values) params.push_back({e, std::nullopt});
        break;
      case Scheme::balazard:
        for (double c : config.c_values) params.push_back({std::nullopt, c});
        break;
      default:
        params.push_back({});
    }
    for (const auto& p : params) {
      for (std::size_t n : config.n_values) cells.push_back({s, n, p});
    }
  }
  return cells;
}

}  // namespace

void SweepConfig::validate() const {
  if (n_values.empty()) throw std::invalid_argument("sweep: n list is empty");
  for (std::size_t i = 0; i < n_values.size(); ++i) {
    if (n_values[i] == 0) throw std::invalid_argument("sweep: n values must be positive");
    if (i > 0 && n_values[i] <= n_values[i - 1]) {
      throw std::invalid_argument("sweep: n values must be strictly increasing");
    }
  }
  if (schemes.empty()) throw std::invalid_argument("sweep: scheme list is empty");
  if (worker_hint == 0) throw std::invalid_argument("sweep: workers must be >= 1");
  if (!(x_min > 0.0 && x_min < 1.0)) throw std::invalid_argument("sweep: x_min must lie in (0, 1)");
  if (!(tau_max > 0.0)) throw std::invalid_argument("sweep: tau_max must be positive");
  for (Scheme s : schemes) {
    switch (s) {
      case Scheme::custom:
        throw std::invalid_argument("sweep: the custom scheme has no generating formula");
      case Scheme::regularized:
      case Scheme::cesaro:
        if (epsilon_values.empty()) {
          throw std::invalid_argument("sweep: " + std::string(to_string(s)) +
                                      " needs epsilon values");
        }
        for (double e : epsilon_values) {
          if (!(e >= 0.0) || !std::isfinite(e)) {
            throw std::invalid_argument("sweep: epsilon values must be finite and >= 0");
          }
        }
        break;
      case Scheme::balazard:
        if (c_values.empty()) throw std::invalid_argument("sweep: balazard needs c values");
        for (double c : c_values) {
          if (!(c > 0.0) || !std::isfinite(c)) {
            throw std::invalid_argument("sweep: c values must be finite and > 0");
          }
        }
        if (n_values.front() < 3) throw std::invalid_argument("sweep: balazard needs n >= 3");
        break;
      default:
        break;
    }
  }
}

void apply_config_entry(SweepConfig& config, std::string_view key, std::string_view value) {
  key = trim(key);
  value = trim(value);
  const auto items = split_list(value);
  if (key == "schemes" || key == "scheme") {
    config.schemes.clear();
    for (const auto& s : items) config.schemes.push_back(parse_scheme(s));
  } else if (key == "n" || key == "n_values") {
    config.n_values.clear();
    for (const auto& s : items) config.n_values.push_back(parse_unsigned(s, key));
  } else if (key == "epsilon" || key == "epsilon_values") {
    config.epsilon_values.clear();
    for (const auto& s : items) config.epsilon_values.push_back(parse_double(s, key));
  } else if (key == "c" || key == "c_values") {
    config.c_values.clear();
    for (const auto& s : items) config.c_values.push_back(parse_double(s, key));
  } else if (key == "method") {
    config.method = parse_sweep_method(value);
  } else if (key == "out" || key == "output_path") {
    config.output_path = std::string(value);
  } else if (key == "workers" || key == "worker_hint") {
    config.worker_hint = static_cast<unsigned>(parse_unsigned(std::string(value), key));
  } else if (key == "x_min") {
    config.x_min = parse_double(std::string(value), key);
  } else if (key == "tau_max") {
    config.tau_max = parse_double(std::string(value), key);
  } else {
    throw std::invalid_argument("unknown config key '" + std::string(key) + "'");
  }
}

void read_config(SweepConfig& config, std::istream& in) {
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": expected key = value");
    }
    apply_config_entry(config, text.substr(0, eq), text.substr(eq + 1));
  }
}

void read_config_file(SweepConfig& config, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  read_config(config, in);
}

std::string sweep_csv_header() {
  return "scheme,n,epsilon,c,distance,tail_high,method,wall_time_ms,error";
}

std::string to_csv(const SweepRow& row) {
  std::string error = row.error;
  std::replace(error.begin(), error.end(), ',', ';');
  std::replace(error.begin(), error.end(), '\n', ' ');
  std::ostringstream os;
  os << to_string(row.scheme) << ',' << row.n << ','
     << (row.epsilon ? format_double(*row.epsilon) : "") << ','
     << (row.c ? format_double(*row.c) : "") << ',';
  if (row.error.empty()) {
    os << format_double(row.distance) << ',' << format_double(row.tail_high);
  } else {
    os << ',';
  }
  os << ',' << row.method << ',' << row.wall_time_ms << ',' << error;
  return os.str();
}

std::vector<SweepRow> run_sweep(const SweepConfig& config,
                                const std::function<void(const SweepRow&)>& on_row) {
  config.validate();
  const auto cells = grid_cells(config);
  const MobiusTable table(config.n_values.back());

  std::vector<Method> methods;
  if (config.method != SweepMethod::spectral) methods.push_back(Method::exact);
  if (config.method != SweepMethod::exact) methods.push_back(Method::spectral);

  std::vector<std::vector<SweepRow>> results(cells.size());
  std::vector<bool> done(cells.size(), false);
  std::size_t next_emit = 0;
  std::mutex emit_mutex;

  detail::parallel_for(cells.size(), config.worker_hint, [&](std::size_t i) {
    const Cell& cell = cells[i];
    std::vector<SweepRow> rows;
    for (Method m : methods) {
      SweepRow row;
      row.scheme = cell.scheme;
      row.n = cell.n;
      row.c = cell.params.c;
      row.epsilon = cell.params.epsilon;
      row.method = std::string(to_string(m));
      const auto start = std::chrono::steady_clock::now();
      try {
        if (cell.scheme == Scheme::balazard) row.epsilon = balazard_epsilon(*cell.params.c, cell.n);
        const auto coeffs = make_coefficients(cell.scheme, cell.n, cell.params, table);
        DistanceReport report;
        if (m == Method::exact) {
          ExactOptions opt;
          opt.x_min = config.x_min;
          report = exact_norm(coeffs, opt);
        } else {
          SpectralOptions opt;
          opt.tau_max = config.tau_max;
          opt.workers = config.worker_hint;
          report = spectral_norm(coeffs, opt);
        }
        row.distance = std::sqrt(std::max(0.0, report.value_squared));
        row.tail_high = report.tail_high;
      } catch (const std::exception& e) {
        row.error = e.what();
        if (row.error.empty()) row.error = "error";
      }
      row.wall_time_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - start)
                             .count();
      rows.push_back(std::move(row));
    }

    std::lock_guard lock(emit_mutex);
    results[i] = std::move(rows);
    done[i] = true;
    while (next_emit < cells.size() && done[next_emit]) {
      if (on_row) {
        for (const auto& r : results[next_emit]) on_row(r);
      }
      ++next_emit;
    }
  });

  std::vector<SweepRow> out;
  for (auto& rows : results) {
    for (auto& r : rows) out.push_back(std::move(r));
  }
  return out;
}

unsigned resolve_workers(std::optional<unsigned> flag) {
  if (flag) {
    if (*flag == 0) throw std::invalid_argument("--workers must be >= 1");
    return *flag;
  }
  if (const char* env = std::getenv("BEURLING_WORKERS")) {
    const std::string text(trim(env));
    try {
      std::size_t used = 0;
      const unsigned long v = std::stoul(text, &used);
      if (used == text.size() && v >= 1) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
    throw std::invalid_argument("BEURLING_WORKERS must be a positive integer, got '" + text + "'");
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace nblab
