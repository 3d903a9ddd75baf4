#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>

#include "dickeent/correlations.hpp"
#include "dickeent/dicke_core.hpp"
#include "dickeent/measures.hpp"
#include "dickeent/oracle.hpp"
#include "dickeent/parallel.hpp"
#include "dickeent/thermal.hpp"
#include "dickeent/verify.hpp"

namespace dickeent::cli {

namespace {

constexpr std::int64_t kMaxClosedFormN = std::int64_t{1} << 20;
constexpr std::int64_t kMaxThermalN = 20000;
constexpr std::int64_t kMaxRows = 2'000'000;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

template <class T>
std::optional<T> parse_number(const std::string& raw) {
  const std::string s = trim(raw);
  if (s.empty()) return std::nullopt;
  T v{};
  const char* first = s.data();
  if (*first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

template <class T>
T need_number(const std::string& s, const std::string& what) {
  auto v = parse_number<T>(s);
  if (!v) throw UsageError("invalid " + what + ": '" + s + "'");
  return *v;
}

}  // namespace

std::vector<std::int64_t> parse_int_sweep(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() < 3 || parts.size() > 4) throw UsageError("sweep must look like A:B:lin[:step] or A:B:log[:factor]");
  const auto a = need_number<std::int64_t>(parts[0], "sweep start");
  const auto b = need_number<std::int64_t>(parts[1], "sweep end");
  if (a < 1 || b < a) throw UsageError("sweep needs 1 <= A <= B");
  std::vector<std::int64_t> out;
  if (parts[2] == "lin") {
    const std::int64_t step = parts.size() == 4 ? need_number<std::int64_t>(parts[3], "sweep step") : 1;
    if (step < 1) throw UsageError("lin sweep step must be >= 1");
    if ((b - a) / step + 1 > kMaxRows) throw UsageError("sweep has too many points");
    for (std::int64_t x = a; x <= b; x += step) out.push_back(x);
  } else if (parts[2] == "log") {
    const double f = parts.size() == 4 ? need_number<double>(parts[3], "sweep factor") : 2.0;
    if (!(f > 1.0)) throw UsageError("log sweep factor must be > 1");
    for (double x = static_cast<double>(a); x < static_cast<double>(b); x *= f) {
      out.push_back(static_cast<std::int64_t>(std::llround(x)));
    }
    out.push_back(b);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  } else {
    throw UsageError("sweep spacing must be lin or log, got '" + parts[2] + "'");
  }
  return out;
}

std::vector<double> parse_real_sweep(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() < 3 || parts.size() > 4) throw UsageError("sweep must look like A:B:lin[:step] or A:B:log[:factor]");
  const auto a = need_number<double>(parts[0], "sweep start");
  const auto b = need_number<double>(parts[1], "sweep end");
  if (!std::isfinite(a) || !std::isfinite(b) || b < a) throw UsageError("sweep needs finite A <= B");
  std::vector<double> out;
  if (parts[2] == "lin") {
    const double step = parts.size() == 4 ? need_number<double>(parts[3], "sweep step") : 1.0;
    if (!(step > 0.0)) throw UsageError("lin sweep step must be > 0");
    if ((b - a) / step + 1 > static_cast<double>(kMaxRows)) throw UsageError("sweep has too many points");
    for (std::int64_t i = 0;; ++i) {
      const double x = a + static_cast<double>(i) * step;
      if (x > b + 1e-12 * std::max(1.0, std::abs(b))) break;
      out.push_back(x);
    }
  } else if (parts[2] == "log") {
    if (!(a > 0.0)) throw UsageError("log sweep needs A > 0");
    const double f = parts.size() == 4 ? need_number<double>(parts[3], "sweep factor") : 2.0;
    if (!(f > 1.0)) throw UsageError("log sweep factor must be > 1");
    for (std::int64_t i = 0;; ++i) {
      const double x = a * std::pow(f, static_cast<double>(i));
      if (x >= b * (1.0 - 1e-12)) break;
      out.push_back(x);
    }
    out.push_back(b);
  } else {
    throw UsageError("sweep spacing must be lin or log, got '" + parts[2] + "'");
  }
  return out;
}

std::vector<double> parse_energy_csv(std::istream& in, const std::string& source) {
  std::vector<std::pair<std::int64_t, double>> rows;
  std::string line;
  int lineno = 0;
  bool seen_content = false;
  auto fail = [&](const std::string& msg) { throw IoError(source + ":" + std::to_string(lineno) + ": " + msg); };
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto fields = split(t, ',');
    const bool first = !seen_content;
    seen_content = true;
    if (fields.size() != 2) {
      if (first) continue;
      fail("expected two comma-separated fields (k, E_k)");
    }
    const auto k = parse_number<std::int64_t>(fields[0]);
    const auto e = parse_number<double>(fields[1]);
    if (!k || !e) {
      if (first) continue;  // header row
      fail(!k ? "level index is not an integer" : "energy is not a number");
    }
    if (*k < 0) fail("level index must be >= 0");
    if (!std::isfinite(*e)) fail("energy must be finite");
    rows.emplace_back(*k, *e);
  }
  if (in.bad()) throw IoError(source + ": read error");
  if (rows.empty()) throw IoError(source + ": no energy rows");
  std::int64_t n = 0;
  for (const auto& r : rows) n = std::max(n, r.first);
  if (n < 1) throw IoError(source + ": need levels 0..n with n >= 1");
  std::vector<double> energies(static_cast<std::size_t>(n) + 1, 0.0);
  std::vector<bool> have(energies.size(), false);
  for (const auto& [k, e] : rows) {
    if (have[static_cast<std::size_t>(k)]) throw IoError(source + ": level " + std::to_string(k) + " given twice");
    have[static_cast<std::size_t>(k)] = true;
    energies[static_cast<std::size_t>(k)] = e;
  }
  for (std::size_t k = 0; k < have.size(); ++k) {
    if (!have[k]) throw IoError(source + ": level " + std::to_string(k) + " missing");
  }
  return energies;
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

TableWriter::TableWriter(std::ostream& os, Format f, std::vector<std::string> columns)
    : os_(os), format_(f), columns_(std::move(columns)) {
  if (format_ == Format::kCsv) {
    for (std::size_t i = 0; i < columns_.size(); ++i) os_ << (i ? "," : "") << csv_field(columns_[i]);
    os_ << "\r\n";
  }
}

void TableWriter::row(const std::vector<Cell>& cells) {
  if (cells.size() != columns_.size()) throw std::logic_error("row width does not match header");
  if (format_ == Format::kCsv) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) os_ << ',';
      std::visit(
          [this](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, bool>) {
              os_ << (v ? "true" : "false");
            } else if constexpr (std::is_same_v<T, std::int64_t>) {
              os_ << v;
            } else if constexpr (std::is_same_v<T, double>) {
              os_ << format_number(v);
            } else if constexpr (std::is_same_v<T, std::string>) {
              os_ << csv_field(v);
            }
          },
          cells[i]);
    }
    os_ << "\r\n";
    return;
  }
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (std::size_t i = 0; i < cells.size(); ++i) {
    auto& slot = j[columns_[i]];
    std::visit(
        [&slot](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, std::monostate>) {
            slot = nullptr;
          } else if constexpr (std::is_same_v<T, double>) {
            // Same 12 significant digits as the CSV output.
            if (std::isfinite(v)) {
              slot = std::stod(format_number(v));
            } else {
              slot = nullptr;
            }
          } else {
            slot = v;
          }
        },
        cells[i]);
  }
  os_ << j.dump() << '\n';
}

namespace {

using Row = std::vector<Cell>;

struct Config {
  std::string command;
  std::string format = "csv";
  bool nats = false;
  int threads = 1;
  std::string output;
  bool dump_config = false;

  // pure, scaling, thermal, generalized
  std::optional<std::int64_t> n;
  std::optional<std::int64_t> k;
  std::string sweep_n;
  bool half_filling = false;
  bool all_k = false;

  // scaling
  bool crossover = false;
  std::int64_t max_m = 40;
  std::string first_term = "reduced";
  std::int64_t block_l = 2;

  // thermal
  bool uniform = false;
  std::string energies;
  std::vector<double> kT;
  std::string kT_sweep;
  std::string mode = "fd";
  bool critical_temperature = false;
  double energy_scale_ev = 1.0;
  double coupling = 0.2;

  // verify
  int max_n = 8;
  int two_site_max_n = 50;
  std::uint64_t seed = 1;
  bool timing = false;
  bool list_checks = false;
  std::vector<std::string> checks;

  // generalized
  std::vector<std::int64_t> counts;
  std::int64_t d = 3;
  bool all_counts = false;

  double unit() const { return nats ? kLn2 : 1.0; }
  Format fmt() const { return format == "jsonl" ? Format::kJsonl : Format::kCsv; }
};

nlohmann::ordered_json dump(const Config& c) {
  nlohmann::ordered_json j;
  j["command"] = c.command;
  j["format"] = c.format;
  j["units"] = c.nats ? "nats" : "bits";
  j["threads"] = c.threads;
  j["output"] = c.output.empty() ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(c.output);
  auto opt = [](const std::optional<std::int64_t>& v) {
    return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
  };
  if (c.command == "pure" || c.command == "scaling") {
    j["n"] = opt(c.n);
    j["k"] = opt(c.k);
    j["sweep_n"] = c.sweep_n;
    j["half_filling"] = c.half_filling;
    j["all_k"] = c.all_k;
  }
  if (c.command == "scaling") {
    j["crossover"] = c.crossover;
    j["max_m"] = c.max_m;
    j["first"] = c.first_term;
    j["block_l"] = c.block_l;
  }
  if (c.command == "thermal") {
    j["n"] = opt(c.n);
    j["sweep_n"] = c.sweep_n;
    j["uniform"] = c.uniform;
    j["energies"] = c.energies;
    j["kT"] = c.kT;
    j["kT_sweep"] = c.kT_sweep;
    j["mode"] = c.mode;
    j["critical_temperature"] = c.critical_temperature;
    j["energy_scale_ev"] = c.energy_scale_ev;
    j["coupling"] = c.coupling;
  }
  if (c.command == "verify") {
    j["max_n"] = c.max_n;
    j["two_site_max_n"] = c.two_site_max_n;
    j["seed"] = c.seed;
    j["timing"] = c.timing;
    j["checks"] = c.checks;
  }
  if (c.command == "generalized") {
    j["counts"] = c.counts;
    j["d"] = c.d;
    j["n"] = opt(c.n);
    j["all_counts"] = c.all_counts;
  }
  return j;
}

std::vector<std::int64_t> n_grid(const Config& c, std::int64_t lo, std::int64_t hi, const std::string& fallback) {
  std::vector<std::int64_t> ns;
  if (!c.sweep_n.empty()) {
    if (c.n) throw UsageError("give either --n or --sweep-n, not both");
    ns = parse_int_sweep(c.sweep_n);
  } else if (c.n) {
    ns = {*c.n};
  } else if (!fallback.empty()) {
    ns = parse_int_sweep(fallback);
  } else {
    throw UsageError("need --n or --sweep-n");
  }
  for (auto n : ns) {
    if (n < lo || n > hi) {
      throw UsageError("n = " + std::to_string(n) + " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
  }
  return ns;
}

std::vector<std::int64_t> k_values(const Config& c, std::int64_t n) {
  const int modes = (c.k ? 1 : 0) + (c.half_filling ? 1 : 0) + (c.all_k ? 1 : 0);
  if (modes != 1) throw UsageError("choose exactly one of --k, --half-filling, --all-k");
  if (c.k) {
    if (*c.k < 0 || *c.k > n) throw UsageError("k = " + std::to_string(*c.k) + " outside [0, n] for n = " + std::to_string(n));
    return {*c.k};
  }
  if (c.half_filling) return {n / 2};
  std::vector<std::int64_t> ks(static_cast<std::size_t>(n) + 1);
  for (std::int64_t k = 0; k <= n; ++k) ks[static_cast<std::size_t>(k)] = k;
  return ks;
}

void emit(TableWriter& w, const std::vector<std::vector<Row>>& blocks) {
  for (const auto& b : blocks) {
    for (const auto& r : b) w.row(r);
  }
}

int cmd_pure(const Config& c, std::ostream& out) {
  const auto ns = n_grid(c, 2, kMaxClosedFormN, "");
  std::int64_t total = 0;
  for (auto n : ns) total += static_cast<std::int64_t>(k_values(c, n).size());
  if (total > kMaxRows) throw UsageError("request produces more than " + std::to_string(kMaxRows) + " rows");
  const double u = c.unit();
  const auto blocks = parallel_map(ns.size(), c.threads, [&](std::size_t i) {
    const auto n = ns[i];
    std::vector<Row> rows;
    for (auto k : k_values(c, n)) {
      const auto rep = correlation_report(n, k);
      rows.push_back({n, k, u * ree_pure(n, k), u * rep.e12, u * entropy_one_vs_rest(n, k), rep.odlro,
                      u * rep.classical, u * rep.mutual});
    }
    return rows;
  });
  TableWriter w(out, c.fmt(), {"n", "k", "E_pure", "E_12", "E_1rest", "ODLRO", "C_closed", "I"});
  emit(w, blocks);
  return kOk;
}

int cmd_crossover(const Config& c, std::ostream& out) {
  const std::int64_t n = c.n.value_or(100);
  const std::int64_t k = c.k.value_or(n / 2);
  if (n < 2 || n > 100000 || k < 0 || k > n) throw UsageError("crossover needs 2 <= n <= 100000 and 0 <= k <= n");
  if (c.max_m < 1) throw UsageError("--max-m must be >= 1");
  SingleSiteTerm first;
  if (c.first_term == "reduced") {
    first = SingleSiteTerm::kReducedState;
  } else if (c.first_term == "rest") {
    first = SingleSiteTerm::kEntropyWithRest;
  } else {
    throw UsageError("--first must be reduced or rest");
  }
  const auto scan = crossover_scan(n, k, c.max_m, first);
  const double u = c.unit();
  TableWriter w(out, c.fmt(), {"n", "k", "m", "sum_lower", "higher", "ordering", "flip"});
  for (std::size_t i = 0; i < scan.rows.size(); ++i) {
    const auto m = static_cast<std::int64_t>(i) + 1;
    const auto& r = scan.rows[i];
    w.row({n, k, m, u * r.sum_lower, u * r.higher, std::string(to_string(r.ordering)), scan.flip && *scan.flip == m});
  }
  return kOk;
}

int cmd_scaling(const Config& c, std::ostream& out) {
  if (c.crossover) return cmd_crossover(c, out);
  const auto ns = n_grid(c, 2, kMaxClosedFormN, "16:65536:log");
  if (c.block_l < 1) throw UsageError("--block-l must be >= 1");
  const double u = c.unit();
  const auto blocks = parallel_map(ns.size(), c.threads, [&](std::size_t i) {
    const auto n = ns[i];
    const auto k = n / 2;
    const double e = ree_pure(n, k);
    const double e12 = ree_two_site(n, k);
    Row r{n, k, u * e, u * (e - 0.5 * std::log2(static_cast<double>(n))), u * e12,
          u * static_cast<double>(n) * e12, u * static_cast<double>(n - 1) * e12, u * entropy_one_vs_rest(n, k),
          c.block_l};
    if (c.block_l <= n - 1) {
      r.insert(r.end(), {u * entropy_block(n, k, c.block_l), u * entropy_block_gaussian(n, k, c.block_l),
                         u * std::log2(static_cast<double>(c.block_l))});
    } else {
      r.insert(r.end(), {std::monostate{}, std::monostate{}, std::monostate{}});
    }
    return std::vector<Row>{r};
  });
  TableWriter w(out, c.fmt(),
                {"n", "k", "E_pure", "E_pure_offset", "E_12", "n_E_12", "n1_E_12", "E_1rest", "l", "S_block",
                 "S_block_gauss", "log2_l"});
  emit(w, blocks);
  return kOk;
}

Row thermal_row(const thermal::ThermalEnsemble& e, Cell kT, double u) {
  return {e.n(),
          std::move(kT),
          thermal::thermal_inseparable(e),
          u * thermal::ree_upper_bound(e),
          u * thermal::ree_upper_bound_printed(e),
          u * thermal::average_entanglement(e),
          u * thermal::average_entanglement_asymptotic(e),
          thermal::odlro_mixture(e),
          thermal::odlro_mixture_finite(e),
          u * thermal::mutual_information_mixture(e),
          u * thermal::mutual_information_mixture_printed(e)};
}

const std::vector<std::string> kThermalColumns = {"n",      "kT",        "inseparable",      "E_bound",
                                                  "E_bound_printed", "E_avr", "E_avr_asym", "ODLRO_mix",
                                                  "ODLRO_mix_finite", "I_mix", "I_mix_printed"};

int cmd_thermal(const Config& c, std::ostream& out) {
  if (c.critical_temperature) {
    const auto tc = thermal::critical_temperature({c.energy_scale_ev, c.coupling});
    TableWriter w(out, c.fmt(), {"energy_scale_ev", "coupling", "T_c_kelvin", "warning"});
    w.row({c.energy_scale_ev, c.coupling, tc.kelvin, tc.warning ? Cell(*tc.warning) : Cell(std::monostate{})});
    return kOk;
  }
  const double u = c.unit();
  if (c.uniform == !c.energies.empty()) throw UsageError("choose exactly one of --uniform and --energies");
  if (c.uniform) {
    if (!c.kT.empty() || !c.kT_sweep.empty()) throw UsageError("--uniform takes no temperature");
    const auto ns = n_grid(c, 2, kMaxThermalN, "");
    const auto blocks = parallel_map(ns.size(), c.threads, [&](std::size_t i) {
      return std::vector<Row>{thermal_row(thermal::ThermalEnsemble::uniform(ns[i]), std::monostate{}, u)};
    });
    TableWriter w(out, c.fmt(), kThermalColumns);
    emit(w, blocks);
    return kOk;
  }

  if (!c.sweep_n.empty()) throw UsageError("--sweep-n needs --uniform");
  std::ifstream in(c.energies);
  if (!in) throw IoError("cannot open energy file '" + c.energies + "'");
  const auto energies = parse_energy_csv(in, c.energies);
  const auto n = static_cast<std::int64_t>(energies.size()) - 1;
  if (c.n && *c.n != n) {
    throw UsageError("--n " + std::to_string(*c.n) + " does not match the energy file (levels 0.." + std::to_string(n) + ")");
  }
  if (n < 2 || n > kMaxThermalN) throw UsageError("energy file must describe 2 <= n <= " + std::to_string(kMaxThermalN));
  std::vector<double> temps = c.kT;
  if (!c.kT_sweep.empty()) {
    const auto s = parse_real_sweep(c.kT_sweep);
    temps.insert(temps.end(), s.begin(), s.end());
  }
  if (temps.empty()) throw UsageError("need --kT or --kT-sweep");
  for (double t : temps) {
    if (!(t > 0.0) || !std::isfinite(t)) throw UsageError("temperatures must be positive");
  }
  thermal::Occupation mode;
  if (c.mode == "fd") {
    mode = thermal::Occupation::kFermiDirac;
  } else if (c.mode == "boltzmann") {
    mode = thermal::Occupation::kBoltzmann;
  } else {
    throw UsageError("--mode must be fd or boltzmann");
  }
  const auto blocks = parallel_map(temps.size(), c.threads, [&](std::size_t i) {
    return std::vector<Row>{thermal_row(thermal::make_ensemble(energies, temps[i], mode), temps[i], u)};
  });
  TableWriter w(out, c.fmt(), kThermalColumns);
  emit(w, blocks);
  return kOk;
}

int cmd_verify(const Config& c, std::ostream& out) {
  if (c.list_checks) {
    for (const auto& name : verify::check_names()) out << name << '\n';
    return kOk;
  }
  if (c.max_n < 1 || c.max_n > 8) throw UsageError("--max-n must lie in [1, 8]");
  if (c.two_site_max_n < 2) throw UsageError("--two-site-max-n must be >= 2");
  verify::Options o;
  o.max_n = c.max_n;
  o.two_site_max_n = c.two_site_max_n;
  o.seed = c.seed;
  o.threads = c.threads;
  verify::Report report;
  try {
    report = verify::run(o, c.checks);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  verify::write_report(out, report, c.timing);
  return report.all_passed() ? kOk : kVerifyFailed;
}

std::string join_counts(const std::vector<std::int64_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

int cmd_generalized(const Config& c, std::ostream& out) {
  std::vector<std::vector<std::int64_t>> all;
  if (c.all_counts) {
    if (!c.counts.empty()) throw UsageError("give either --counts or --all with --d/--n");
    if (!c.n) throw UsageError("--all needs --n");
    const std::int64_t n = *c.n;
    if (c.d < 2 || c.d > 16 || n < 1) throw UsageError("--all needs 2 <= d <= 16 and n >= 1");
    if (log_binomial(n + c.d - 1, c.d - 1) > std::log(static_cast<double>(kMaxRows))) {
      throw UsageError("too many count vectors");
    }
    std::vector<std::int64_t> cur(static_cast<std::size_t>(c.d), 0);
    // Compositions of n into d parts, lexicographic in (c_0, c_1, ...).
    std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t pos, std::int64_t left) {
      if (pos + 1 == cur.size()) {
        cur[pos] = left;
        all.push_back(cur);
        return;
      }
      for (std::int64_t x = 0; x <= left; ++x) {
        cur[pos] = x;
        rec(pos + 1, left - x);
      }
    };
    rec(0, n);
  } else {
    if (c.counts.empty()) throw UsageError("need --counts or --all");
    all.push_back(c.counts);
  }
  const double u = c.unit();
  TableWriter w(out, c.fmt(), {"d", "n", "counts", "E_pure"});
  for (const auto& counts : all) {
    const GeneralizedDickeState g(counts);
    w.row({static_cast<std::int64_t>(g.d()), static_cast<std::int64_t>(g.n()), join_counts(counts),
           u * ree_pure_generalized(g)});
  }
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"Entanglement and correlations of symmetric (Dicke) qubit states", "dickeent"};
  app.require_subcommand(1);
  app.add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"csv", "jsonl"}))
      ->envname("DICKEENT_FORMAT")
      ->capture_default_str();
  app.add_flag("--nats", c.nats, "Report entropies in nats instead of bits")->envname("DICKEENT_NATS");
  app.add_option("--threads", c.threads, "Worker threads for sweeps")
      ->check(CLI::Range(1, 256))
      ->envname("DICKEENT_THREADS")
      ->capture_default_str();
  app.add_option("--output,-o", c.output, "Write the table to a file instead of stdout")->envname("DICKEENT_OUTPUT");
  app.add_flag("--dump-config", c.dump_config, "Print the resolved configuration as JSON and exit");

  auto common_n = [&c](CLI::App* s) {
    s->add_option("--n", c.n, "Number of sites");
    s->add_option("--sweep-n", c.sweep_n, "n grid A:B:lin[:step] or A:B:log[:factor]");
  };

  auto* pure = app.add_subcommand("pure", "Closed-form quantities of |k, n-k>");
  common_n(pure);
  pure->add_option("--k", c.k, "Number of occupied sites");
  pure->add_flag("--half-filling", c.half_filling, "k = floor(n/2)");
  pure->add_flag("--all-k", c.all_k, "Every k in 0..n");

  auto* scaling = app.add_subcommand("scaling", "Half-filling scaling curves, or a crossover scan");
  common_n(scaling);
  scaling->add_option("--k", c.k, "Occupied sites for --crossover (default n/2)");
  scaling->add_flag("--crossover", c.crossover, "Compare sum_{i<=m} E_i with E_{m+1}");
  scaling->add_option("--max-m", c.max_m, "Largest m of the crossover scan")->capture_default_str();
  scaling->add_option("--first", c.first_term, "E_1 term: reduced (single-site REE, 0) or rest (entropy with the rest)")
      ->capture_default_str();
  scaling->add_option("--block-l", c.block_l, "Block size for the S_block columns")->capture_default_str();

  auto* therm = app.add_subcommand("thermal", "Mixtures of Dicke levels");
  common_n(therm);
  therm->add_flag("--uniform", c.uniform, "Equal weight on every level (infinite temperature)");
  therm->add_option("--energies", c.energies, "CSV file of k,E_k rows");
  therm->add_option("--kT", c.kT, "Temperature(s) in the energy units")->delimiter(',');
  therm->add_option("--kT-sweep", c.kT_sweep, "Temperature grid A:B:lin[:step] or A:B:log[:factor]");
  therm->add_option("--mode", c.mode, "Level occupation: fd or boltzmann")->capture_default_str();
  therm->add_flag("--critical-temperature", c.critical_temperature, "Evaluate T_c = (E/k_B) exp(-1/lambda)");
  therm->add_option("--energy-scale", c.energy_scale_ev, "Energy scale in eV for T_c")->capture_default_str();
  therm->add_option("--coupling", c.coupling, "Dimensionless coupling lambda for T_c")->capture_default_str();

  auto* ver = app.add_subcommand("verify", "Check closed forms against the dense oracle");
  ver->add_option("--max-n", c.max_n, "Largest n for 2^n-dimensional checks")
      ->envname("DICKEENT_MAX_N")
      ->capture_default_str();
  ver->add_option("--two-site-max-n", c.two_site_max_n, "Largest n for two-site checks")->capture_default_str();
  ver->add_option("--seed", c.seed, "Seed for sampled checks")->envname("DICKEENT_SEED")->capture_default_str();
  ver->add_flag("--timing", c.timing, "Append per-check wall time");
  ver->add_option("--check", c.checks, "Run only the named check (repeatable)");
  ver->add_flag("--list", c.list_checks, "List check names");

  auto* gen = app.add_subcommand("generalized", "d-level symmetric states");
  gen->add_option("--counts", c.counts, "Level counts, e.g. 1,1,1")->delimiter(',');
  gen->add_flag("--all", c.all_counts, "Every count vector for --d and --n");
  gen->add_option("--d", c.d, "Local dimension for --all")->capture_default_str();
  gen->add_option("--n", c.n, "Number of sites for --all");

  for (auto* s : {pure, scaling, therm, ver, gen}) s->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }
  c.command = app.get_subcommands().front()->get_name();

  if (c.dump_config) {
    out << dump(c).dump(2) << '\n';
    return kOk;
  }

  try {
    std::unique_ptr<std::ofstream> file;
    std::ostream* sink = &out;
    if (!c.output.empty()) {
      file = std::make_unique<std::ofstream>(c.output, std::ios::binary);
      if (!*file) throw IoError("cannot open output file '" + c.output + "'");
      sink = file.get();
    }
    int code = kOk;
    if (c.command == "pure") code = cmd_pure(c, *sink);
    if (c.command == "scaling") code = cmd_scaling(c, *sink);
    if (c.command == "thermal") code = cmd_thermal(c, *sink);
    if (c.command == "verify") code = cmd_verify(c, *sink);
    if (c.command == "generalized") code = cmd_generalized(c, *sink);
    sink->flush();
    if (!*sink) throw IoError("write failed");
    return code;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace dickeent::cli
