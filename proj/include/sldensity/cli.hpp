#pragma once

// Batch front end: density tables, rho grids, convergence studies and
// reproduction presets, written as CSV or aligned text.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "sldensity/sldensity.hpp"

namespace sld::cli {

enum class Command { Density, Rho, Converge, Table };
enum class OutputFormat { Csv, Text };

inline std::string to_string(Command c) {
  switch (c) {
    case Command::Density: return "density";
    case Command::Rho: return "rho";
    case Command::Converge: return "converge";
    case Command::Table: return "table";
  }
  return "?";
}

inline Command command_from_string(const std::string& s) {
  if (s == "density") return Command::Density;
  if (s == "rho") return Command::Rho;
  if (s == "converge") return Command::Converge;
  if (s == "table") return Command::Table;
  throw ParseError("command: unknown command '" + s + "'");
}

inline constexpr double kDefaultTol = 1e-8;

struct RunConfig {
  Command command = Command::Density;
  std::string potential;      // rational:A=..,B=.. | barrier:ell=..,a=..
  std::string lambdas;        // comma list or grid:paper16
  std::optional<double> tol;  // default kDefaultTol
  double rho0 = 0.0;
  std::optional<Method> method;
  std::optional<int> N;
  std::string x;              // comma list of matching points (density, converge)
  std::string table;          // preset name for `table`
  OutputFormat format = OutputFormat::Csv;
  std::string out;            // empty = stdout

  bool operator==(const RunConfig&) const = default;

  double effective_tol() const { return tol.value_or(kDefaultTol); }
};

/// Sixteen-point lambda grid used by the rho tables.
inline const std::vector<double>& paper16() {
  static const std::vector<double> g = {0.1, 0.2, 0.4, 1, 2, 4, 10, 20, 40, 100, 200, 400, 1000, 2000, 4000, 10000};
  return g;
}

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(trim(cur));
  return out;
}

inline double parse_real(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ParseError(key + ": expected a number, got '" + v + "'");
  }
}

inline int parse_int(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const int i = std::stoi(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return i;
  } catch (const std::exception&) {
    throw ParseError(key + ": expected an integer, got '" + v + "'");
  }
}

inline std::string shortest(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

}  // namespace detail

/// Parses `rational:A=<v>,B=<v>` or `barrier:ell=<n>,a=<v>`.
/// Omitted parameters default to 0 (rational) or ell = 0, a = 1 (barrier).
inline Potential parse_potential(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string kind = detail::trim(spec.substr(0, colon));
  std::map<std::string, std::string> kv;
  if (colon != std::string::npos) {
    for (const auto& item : detail::split(spec.substr(colon + 1), ',')) {
      if (item.empty()) continue;
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw ParseError("potential: expected key=value, got '" + item + "'");
      kv[detail::trim(item.substr(0, eq))] = detail::trim(item.substr(eq + 1));
    }
  }
  auto take = [&](const std::string& key, const std::string& dflt) {
    auto it = kv.find(key);
    if (it == kv.end()) return dflt;
    std::string v = it->second;
    kv.erase(it);
    return v;
  };
  auto reject_leftovers = [&] {
    if (!kv.empty()) throw ParseError("potential: unknown key '" + kv.begin()->first + "' for " + kind);
  };
  if (kind == "rational") {
    const double A = detail::parse_real("potential.A", take("A", "0"));
    const double B = detail::parse_real("potential.B", take("B", "0"));
    reject_leftovers();
    return make_rational(A, B);
  }
  if (kind == "barrier") {
    const int ell = detail::parse_int("potential.ell", take("ell", "0"));
    const double a = detail::parse_real("potential.a", take("a", "1"));
    reject_leftovers();
    if (ell < 0) throw ParseError("potential.ell: must be nonnegative");
    return make_barrier(ell, a);
  }
  throw ParseError("potential: unknown kind '" + kind + "' (expected rational or barrier)");
}

/// Comma list of positive reals, or a named grid (`grid:paper16`).
inline std::vector<double> parse_lambdas(const std::string& spec) {
  const std::string s = detail::trim(spec);
  if (s.rfind("grid:", 0) == 0) {
    if (s == "grid:paper16") return paper16();
    throw ParseError("lambda: unknown grid '" + s.substr(5) + "'");
  }
  std::vector<double> out;
  for (const auto& item : detail::split(s, ',')) {
    if (item.empty()) continue;
    const double v = detail::parse_real("lambda", item);
    if (!(v > 0.0)) throw ParseError("lambda: values must be positive, got '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw ParseError("lambda: no values given");
  return out;
}

/// CSV number: 12 significant digits, scientific notation below 1e-3.
inline std::string format_csv_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";
  char buf[64];
  if (std::abs(v) < 1e-3) {
    std::snprintf(buf, sizeof buf, "%.11e", v);
  } else {
    std::snprintf(buf, sizeof buf, "%.12g", v);
  }
  return buf;
}

using Cell = std::variant<double, std::string>;

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
};

inline void write_csv(const Table& t, std::ostream& os) {
  for (std::size_t i = 0; i < t.header.size(); ++i) os << (i ? "," : "") << t.header[i];
  os << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ",";
      if (const auto* d = std::get_if<double>(&row[i])) {
        os << format_csv_number(*d);
      } else {
        os << std::get<std::string>(row[i]);
      }
    }
    os << "\n";
  }
  os.flush();
}

inline void write_text(const Table& t, std::ostream& os) {
  auto render = [](const Cell& c) {
    if (const auto* d = std::get_if<double>(&c)) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.10g", *d);
      return std::string(buf);
    }
    return std::get<std::string>(c);
  };
  std::vector<std::size_t> width(t.header.size());
  for (std::size_t i = 0; i < t.header.size(); ++i) width[i] = t.header[i].size();
  std::vector<std::vector<std::string>> cells;
  for (const auto& row : t.rows) {
    auto& r = cells.emplace_back();
    for (std::size_t i = 0; i < row.size(); ++i) {
      r.push_back(render(row[i]));
      if (i < width.size()) width[i] = std::max(width[i], r.back().size());
    }
  }
  for (std::size_t i = 0; i < t.header.size(); ++i) {
    os << (i ? "  " : "") << std::setw(static_cast<int>(width[i])) << t.header[i];
  }
  os << "\n";
  for (const auto& r : cells) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      os << (i ? "  " : "") << std::setw(static_cast<int>(i < width.size() ? width[i] : 0)) << r[i];
    }
    os << "\n";
  }
  os.flush();
}

/// Textual key=value form; `from_text` accepts it back (also the --config file format).
inline std::string to_text(const RunConfig& c) {
  std::ostringstream os;
  os << "command=" << to_string(c.command) << "\n";
  if (!c.potential.empty()) os << "potential=" << c.potential << "\n";
  if (!c.lambdas.empty()) os << "lambda=" << c.lambdas << "\n";
  if (c.tol) os << "tol=" << detail::shortest(*c.tol) << "\n";
  os << "rho0=" << detail::shortest(c.rho0) << "\n";
  if (c.method) os << "method=" << sld::to_string(*c.method) << "\n";
  if (c.N) os << "N=" << *c.N << "\n";
  if (!c.x.empty()) os << "x=" << c.x << "\n";
  if (!c.table.empty()) os << "table=" << c.table << "\n";
  os << "format=" << (c.format == OutputFormat::Csv ? "csv" : "text") << "\n";
  if (!c.out.empty()) os << "out=" << c.out << "\n";
  return os.str();
}

/// Applies one key=value setting; keys are the long flag names.
inline void apply_setting(RunConfig& c, const std::string& key, const std::string& value) {
  if (key == "command") {
    c.command = command_from_string(value);
  } else if (key == "potential") {
    c.potential = value;
  } else if (key == "lambda") {
    c.lambdas = value;
  } else if (key == "tol") {
    c.tol = detail::parse_real("tol", value);
  } else if (key == "rho0") {
    c.rho0 = detail::parse_real("rho0", value);
  } else if (key == "method") {
    try {
      c.method = method_from_string(value);
    } catch (const ParseError& e) {
      throw ParseError(std::string("method: ") + e.what());
    }
  } else if (key == "N") {
    c.N = detail::parse_int("N", value);
  } else if (key == "x") {
    c.x = value;
  } else if (key == "table") {
    c.table = value;
  } else if (key == "format") {
    if (value == "csv") {
      c.format = OutputFormat::Csv;
    } else if (value == "text") {
      c.format = OutputFormat::Text;
    } else {
      throw ParseError("format: expected csv or text, got '" + value + "'");
    }
  } else if (key == "out") {
    c.out = value;
  } else {
    throw ParseError(key + ": unknown key");
  }
}

inline RunConfig from_text(const std::string& text, RunConfig base = {}) {
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    line = detail::trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("config: expected key=value, got '" + line + "'");
    apply_setting(base, detail::trim(line.substr(0, eq)), detail::trim(line.substr(eq + 1)));
  }
  return base;
}

/// Checks ranges that depend on the command.
inline void validate(const RunConfig& c) {
  const double tol = c.effective_tol();
  const bool needs_potential = c.command != Command::Table;
  if (needs_potential && c.potential.empty()) throw ParseError("potential: required for " + to_string(c.command));
  if (needs_potential) parse_potential(c.potential);
  if ((c.command == Command::Density || c.command == Command::Rho || c.command == Command::Converge) &&
      c.lambdas.empty()) {
    throw ParseError("lambda: required for " + to_string(c.command));
  }
  if (!c.lambdas.empty()) parse_lambdas(c.lambdas);
  if (c.command == Command::Density && !(tol >= 1e-12 && tol <= 1e-2)) throw ParseError("tol: must lie in [1e-12, 1e-2]");
  if (c.command == Command::Rho && !(tol >= 1e-10 && tol <= 1e-3)) throw ParseError("tol: must lie in [1e-10, 1e-3]");
  if (c.command == Command::Table && c.table.empty()) throw ParseError("table: preset name required");
  if (c.N && *c.N < 1) throw ParseError("N: must be at least 1");
  if (c.method == Method::fN && needs_potential && !parse_potential(c.potential).is_rational()) {
    throw ParseError("method: fN needs a rational potential");
  }
  if (c.command == Command::Converge && !c.lambdas.empty() && parse_lambdas(c.lambdas).size() != 1) {
    throw ParseError("lambda: converge takes exactly one value");
  }
}

struct HelpShown {};

/// Parses argv (subcommand first). A `--config` file supplies defaults with
/// the same keys as the long flags; flags given on the command line win.
/// Throws ParseError, or HelpShown after printing help for `--help`.
inline RunConfig parse_command_line(int argc, const char* const* argv) {
  CLI::App app{"Spectral density and spectral function of -y'' + q y = lambda y on (0, inf)"};
  app.require_subcommand(1, 1);

  std::map<std::string, std::string> flags;
  std::string config_path, table;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "key=value file with the long flag names as keys");
    const std::vector<std::pair<std::string, std::string>> opts = {
        {"potential", "rational:A=<v>,B=<v> | barrier:ell=<n>,a=<v>"},
        {"lambda", "comma list or grid:paper16"},
        {"tol", "accuracy target (default 1e-8)"},
        {"rho0", "rho(0) (default 0)"},
        {"method", "F1 | F2 | F3 | F3R | fN"},
        {"N", "order of the fN approximant"},
        {"x", "comma list of matching points"},
        {"format", "csv | text (default csv)"},
        {"out", "output file (default stdout)"}};
    for (const auto& [key, help] : opts) {
      sub->add_option_function<std::string>(
          "--" + key, [&flags, key = key](const std::string& v) { flags[key] = v; }, help);
    }
  };
  auto* density = app.add_subcommand("density", "f(lambda) per lambda");
  auto* rho = app.add_subcommand("rho", "rho(lambda) on a grid");
  auto* converge = app.add_subcommand("converge", "density estimates over increasing matching points");
  auto* table_cmd = app.add_subcommand("table", "reproduction presets: t8.1 t8.2 t8.3 t8.4 t9.1 t9.2-errors");
  for (auto* s : {density, rho, converge, table_cmd}) add_common(s);
  table_cmd->add_option("preset", table, "preset name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e);
    throw HelpShown{};
  } catch (const CLI::ParseError& e) {
    throw ParseError(std::string("command line: ") + e.what());
  }

  RunConfig c;
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw ParseError("config: cannot read '" + config_path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    c = from_text(buf.str());
  }
  c.command = command_from_string(app.get_subcommands().front()->get_name());
  if (c.command == Command::Table) c.table = table;
  for (const auto& [key, value] : flags) apply_setting(c, key, value);
  validate(c);
  return c;
}

/// Argument vector equivalent to the config.
inline std::vector<std::string> to_args(const RunConfig& c) {
  std::vector<std::string> a = {"sldensity", to_string(c.command)};
  if (c.command == Command::Table) a.push_back(c.table);
  auto add = [&](const std::string& k, const std::string& v) {
    a.push_back("--" + k);
    a.push_back(v);
  };
  if (!c.potential.empty()) add("potential", c.potential);
  if (!c.lambdas.empty()) add("lambda", c.lambdas);
  if (c.tol) add("tol", detail::shortest(*c.tol));
  add("rho0", detail::shortest(c.rho0));
  if (c.method) add("method", sld::to_string(*c.method));
  if (c.N) add("N", std::to_string(*c.N));
  if (!c.x.empty()) add("x", c.x);
  add("format", c.format == OutputFormat::Csv ? "csv" : "text");
  if (!c.out.empty()) add("out", c.out);
  return a;
}

namespace detail {

inline double scaled_error(double exact, double computed) {
  // exact - computed; relative once the exact value exceeds one
  return (exact - computed) / std::max(1.0, std::abs(exact));
}

inline Cell guarded(const std::function<double()>& f) {
  try {
    return f();
  } catch (const TurningPointError&) {
    return std::string("n/a");
  } catch (const MatchingPointTooSmall&) {
    return std::string("n/a");
  }
}

inline std::vector<double> parse_x_list(const std::string& s) {
  std::vector<double> out;
  for (const auto& item : split(s, ',')) {
    if (item.empty()) continue;
    const double v = parse_real("x", item);
    if (!(v > 0.0)) throw ParseError("x: values must be positive");
    out.push_back(v);
  }
  return out;
}

inline Table run_density(const RunConfig& c, bool& failed, std::ostream& err) {
  const Potential p = parse_potential(c.potential);
  const auto lambdas = parse_lambdas(c.lambdas);
  const auto xs = parse_x_list(c.x);
  Table t{{"lambda", "f", "x_match", "err_est", "method", "status"}, {}};
  for (double lambda : lambdas) {
    try {
      DensityEstimate e;
      if (!xs.empty()) {
        e = density_at(p, lambda, xs.front(), c.method.value_or(p.is_rational() ? Method::fN : kGeneralPotentialMethod),
                       c.N.value_or(kDefaultTableN));
      } else {
        AutoDensityOptions o;
        o.method = c.method;
        o.N = c.N;
        e = auto_density(p, lambda, c.effective_tol(), o);
      }
      std::string m = sld::to_string(e.method);
      if (e.method == Method::fN) m = "f" + std::to_string(e.order);
      t.rows.push_back({lambda, e.value, e.x_match, e.err_est, m, std::string("ok")});
    } catch (const Error& e) {
      err << "lambda = " << lambda << ": " << e.what() << "\n";
      t.rows.push_back({lambda, std::string("nan"), std::string("nan"), std::string("nan"), std::string("-"),
                        std::string("FAILED")});
      failed = true;
      break;
    }
  }
  return t;
}

inline Table run_rho(const RunConfig& c, bool& failed, std::ostream& err) {
  const Potential p = parse_potential(c.potential);
  const auto lambdas = parse_lambdas(c.lambdas);
  RhoOptions o;
  o.method = c.method;
  o.N = c.N;
  if (const auto xs = parse_x_list(c.x); !xs.empty()) o.x_match = xs.front();
  const SpectralGrid g = rho_grid(p, lambdas, c.rho0, c.effective_tol(), o);
  Table t{{"lambda", "rho", "interval_err", "evaluations", "status"}, {}};
  for (std::size_t j = 0; j < lambdas.size(); ++j) {
    const auto& r = g.intervals[j];
    const bool ok = r.converged && r.failure.empty() && !failed;
    if (!r.failure.empty()) err << "interval ending at " << lambdas[j] << ": " << r.failure << "\n";
    t.rows.push_back({lambdas[j], g.rho[j], r.est_error, static_cast<double>(r.evaluations),
                      std::string(ok ? "ok" : "FAILED")});
    if (!ok) failed = true;
  }
  return t;
}

inline Table converge_table(const Potential& p, double lambda, const std::vector<double>& xs, int N,
                            const std::vector<Method>& methods) {
  Table t;
  t.header.push_back("x");
  for (Method m : methods) t.header.push_back(m == Method::fN ? "f" + std::to_string(N) : sld::to_string(m));
  PrincipalSolution phi(p, lambda);
  for (double x : xs) {
    std::vector<Cell> row{x};
    for (Method m : methods) row.push_back(guarded([&] { return density_at(phi, p, x, m, N).value; }));
    t.rows.push_back(std::move(row));
  }
  return t;
}

inline Table run_converge(const RunConfig& c) {
  const Potential p = parse_potential(c.potential);
  const double lambda = parse_lambdas(c.lambdas).front();
  std::vector<double> xs = parse_x_list(c.x);
  if (xs.empty()) {
    for (double x = 5.0; x <= 640.0; x *= 2.0) xs.push_back(x);
  }
  std::vector<Method> methods = {Method::F1, Method::F2, Method::F3, Method::F3R};
  if (p.is_rational()) methods.push_back(Method::fN);
  if (c.method) methods = {*c.method};
  return converge_table(p, lambda, xs, c.N.value_or(kDefaultTableN), methods);
}

/// Matching points used for the density error tables, one per paper16 lambda.
inline const std::vector<double>& table8_matching_points() {
  static const std::vector<double> x = {320, 225, 160, 100, 71, 50, 32, 22.5, 16, 10, 7, 5, 3.2, 2.2, 1.6, 1.0};
  return x;
}

inline Table density_error_table(const ExactExample& ex) {
  const Potential p = ex.potential();
  const std::vector<Method> methods = {Method::F1, Method::F2, Method::F3, Method::F3R, Method::fN};
  Table t{{"lambda", "x", "err_F1", "err_F2", "err_F3", "err_F3R", "err_f6"}, {}};
  const auto& lambdas = paper16();
  const auto& xs = table8_matching_points();
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    const double exact = exact_density(ex, lambdas[i]);
    PrincipalSolution phi(p, lambdas[i]);
    std::vector<Cell> row{lambdas[i], xs[i]};
    for (Method m : methods) {
      row.push_back(guarded([&] { return scaled_error(exact, density_at(phi, p, xs[i], m, 6).value); }));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

inline Table barrier_table(Method method) {
  const std::vector<double> lambdas = {7, 10, 20, 40};
  Table t{{"x"}, {}};
  for (double l : lambdas) {
    for (int ell = 0; ell <= 2; ++ell) {
      std::ostringstream h;
      h << "lambda" << l << "_ell" << ell;
      t.header.push_back(h.str());
    }
  }
  std::vector<Potential> pots = {make_barrier(0, 1.0), make_barrier(1, 1.0), make_barrier(2, 1.0)};
  for (double x : {5.0, 10.0, 15.0, 20.0, 25.0}) {
    std::vector<Cell> row{x};
    for (double l : lambdas) {
      for (const auto& p : pots) row.push_back(guarded([&] { return density_at(p, l, x, method).value; }));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

inline Table bessel_rho_table() {
  const std::vector<double> lambdas = {1, 2, 4, 10, 20, 40};
  const Potential p = make_rational(0.0, 0.75);
  Table t{{"x"}, {}};
  for (double l : lambdas) t.header.push_back("lambda" + shortest(l));
  for (double x : {6.0, 12.0, 24.0, 36.0}) {
    RhoOptions o;
    o.x_match = x;
    o.method = Method::fN;
    o.N = 7;
    o.ivp_tol = 1e-9;
    const auto g = rho_grid(p, lambdas, 0.0, 1e-8, o);
    std::vector<Cell> row{x};
    for (double r : g.rho) row.push_back(r);
    t.rows.push_back(std::move(row));
  }
  const auto g = rho_grid(p, lambdas, 0.0, 1e-8);
  std::vector<Cell> row{std::string("auto")};
  for (double r : g.rho) row.push_back(r);
  t.rows.push_back(std::move(row));
  return t;
}

inline std::vector<ExactExample> autob_examples() {
  return {ExactExample::bessel(1.0), ExactExample::hydrogen(1, 1.0), ExactExample::coulomb(1, -1.0),
          ExactExample::bessel(1.0 / 3.0)};
}

/// Max error over paper16 (relative where |exact| > 1) against the closed-form
/// rho. Coulomb-type problems compare differences from the first grid point.
inline double autob_max_error(const ExactExample& ex, double tau, const std::vector<double>& grid) {
  const Potential p = ex.potential();
  std::vector<double> exact(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) exact[j] = rho_closed_form_oracle(ex, grid[j]);
  const auto g = rho_grid(p, grid, 0.0, tau);
  if (!g.ok()) throw RefinementFailure("rho_grid did not converge for " + ex.name());
  double worst = 0.0;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    worst = std::max(worst, std::abs(g.rho[j] - exact[j]) / std::max(1.0, std::abs(exact[j])));
  }
  return worst;
}

inline Table autob_error_table(const std::vector<double>& taus) {
  Table t{{"potential"}, {}};
  for (double tau : taus) {
    t.header.push_back("error_tau" + shortest(tau));
    t.header.push_back("time_tau" + shortest(tau));
  }
  for (const auto& ex : autob_examples()) {
    std::vector<Cell> row{ex.name()};
    for (double tau : taus) {
      const auto t0 = std::chrono::steady_clock::now();
      const double err = autob_max_error(ex, tau, paper16());
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      row.push_back(err);
      row.push_back(secs);
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

inline Table run_table(const RunConfig& c) {
  const std::string& name = c.table;
  if (name == "t8.1") return density_error_table(ExactExample::hydrogen(1, 1.0));
  if (name == "t8.2") return density_error_table(ExactExample::hydrogen(2, 1.0));
  if (name == "t8.3") return density_error_table(ExactExample::bessel(1.0 / 3.0));
  if (name == "t8.4") return barrier_table(c.method.value_or(kGeneralPotentialMethod));
  if (name == "t9.1") return bessel_rho_table();
  if (name == "t9.2-errors") {
    if (c.tol) return autob_error_table({*c.tol});
    return autob_error_table({1e-4, 1e-6, 1e-8, 1e-10});
  }
  throw ParseError("table: unknown preset '" + name + "' (t8.1 t8.2 t8.3 t8.4 t9.1 t9.2-errors)");
}

}  // namespace detail

/// Executes a validated config; returns the process exit status.
inline int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  std::ofstream file;
  std::ostream* os = &out;
  if (!c.out.empty()) {
    file.open(c.out);
    if (!file) {
      err << "out: cannot open '" << c.out << "'\n";
      return 2;
    }
    os = &file;
  }
  bool failed = false;
  Table t;
  try {
    validate(c);
    switch (c.command) {
      case Command::Density: t = detail::run_density(c, failed, err); break;
      case Command::Rho: t = detail::run_rho(c, failed, err); break;
      case Command::Converge: t = detail::run_converge(c); break;
      case Command::Table: t = detail::run_table(c); break;
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    if (!t.header.empty()) (c.format == OutputFormat::Csv ? write_csv : write_text)(t, *os);
    return 1;
  }
  if (c.format == OutputFormat::Csv) {
    write_csv(t, *os);
  } else {
    write_text(t, *os);
  }
  return failed ? 1 : 0;
}

}  // namespace sld::cli
