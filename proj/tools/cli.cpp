#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "fracops/discrete.hpp"
#include "fracops/errors.hpp"
#include "fracops/evaluate.hpp"
#include "fracops/exact_solutions.hpp"
#include "fracops/heat_kernel.hpp"
#include "fracops/kernels.hpp"
#include "fracops/registry.hpp"
#include "fracops/verify.hpp"
#include "fracops/wos.hpp"

namespace fracops::cli {

namespace {

using Json = nlohmann::ordered_json;

/// Invalid command line or configuration.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------------------------
// Output

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_cell(const Json& v) {
  if (v.is_null()) return "";
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) return format_number(v.get<double>());
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

/// Non-finite doubles become null so that every record stays valid JSON.
Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

/// Rows sharing one set of columns, written as CSV with a header or as newline-delimited JSON.
class Table {
 public:
  void add(Json row) { rows_.push_back(std::move(row)); }

  void write(std::ostream& out, const std::string& format) const {
    if (format == "json") {
      for (const auto& r : rows_) out << r.dump() << '\n';
      return;
    }
    if (rows_.empty()) return;
    std::vector<std::string> columns;
    for (const auto& [k, v] : rows_.front().items()) columns.push_back(k);
    for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
    out << '\n';
    for (const auto& r : rows_) {
      for (std::size_t i = 0; i < columns.size(); ++i)
        out << (i ? "," : "") << csv_cell(r.contains(columns[i]) ? r[columns[i]] : Json());
      out << '\n';
    }
  }

 private:
  std::vector<Json> rows_;
};

// ---------------------------------------------------------------------------------------------
// Configuration

struct RunConfig {
  std::string command;
  Params params;
  std::string out_path;
  std::string format = "csv";
};

const std::map<std::string, std::set<std::string>>& allowed_keys() {
  static const std::set<std::string> kernel_keys{"kernel", "atoms", "lambda", "Lambda", "density", "scale", "amplitude"};
  static const std::set<std::string> field_keys{"shift", "value", "center", "radius", "amplitude"};
  auto merge = [](std::initializer_list<std::set<std::string>> sets) {
    std::set<std::string> all{"s", "n"};
    for (const auto& s : sets) all.insert(s.begin(), s.end());
    return all;
  };
  static const std::map<std::string, std::set<std::string>> keys{
      {"eval", merge({kernel_keys, field_keys, {"field", "x", "operator", "tol", "angular_order"}})},
      {"symbol", merge({kernel_keys, {"xi", "tol"}})},
      {"wos", merge({field_keys, {"domain", "g", "x", "samples", "seed", "streams", "max_steps", "radius_safety", "a",
                                  "b", "lo", "hi", "offset"}})},
      {"solve", merge({field_keys, {"a", "b", "N", "f", "g"}})},
      {"obstacle", merge({field_keys, {"a", "b", "N", "phi", "height", "curvature", "g", "tol", "omega",
                                       "max_iterations"}})},
      {"heat", {"s", "n", "t", "x"}},
      {"verify", {"checks"}},
  };
  return keys;
}

const std::map<std::string, std::vector<std::string>>& required_keys() {
  static const std::map<std::string, std::vector<std::string>> keys{
      {"eval", {"s", "x"}}, {"symbol", {"s", "xi"}}, {"wos", {"s", "x"}}, {"solve", {"s"}},
      {"obstacle", {"s"}},  {"heat", {"s", "x"}},    {"verify", {}},
  };
  return keys;
}

std::pair<std::string, std::string> split_pair(const std::string& item, const std::string& where) {
  const auto eq = item.find('=');
  if (eq == std::string::npos || eq == 0) throw UsageError(where + ": expected key=value, got '" + item + "'");
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  return {trim(item.substr(0, eq)), trim(item.substr(eq + 1))};
}

Params read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path + "'");
  Params p;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto [k, v] = split_pair(line, path + ":" + std::to_string(lineno));
    p[k] = v;
  }
  return p;
}

void validate(const RunConfig& cfg) {
  const auto& allowed = allowed_keys().at(cfg.command);
  for (const auto& [k, v] : cfg.params)
    if (!allowed.count(k)) throw UsageError(cfg.command + ": unknown parameter '" + k + "'");
  for (const auto& k : required_keys().at(cfg.command))
    if (!cfg.params.count(k)) throw UsageError(cfg.command + ": missing required parameter '" + k + "'");
  if (cfg.format != "csv" && cfg.format != "json") throw UsageError("format must be csv or json");
}

// ---------------------------------------------------------------------------------------------
// Parameter helpers

int dim_of(const Params& p) {
  const int n = param_int(p, "n", 1);
  if (n < 1 || n > 3) throw DomainError("n must be 1, 2 or 3");
  return n;
}

/// "lo:hi:count" samples the first axis uniformly; otherwise a ';'-separated list of points.
std::vector<Point> parse_points(const std::string& text, int n) {
  std::vector<Point> pts;
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
    if (parts.size() != 3) throw DomainError("range '" + text + "' must read lo:hi:count");
    const Params tmp{{"lo", parts[0]}, {"hi", parts[1]}, {"count", parts[2]}};
    const double lo = param_double(tmp, "lo", 0.0), hi = param_double(tmp, "hi", 0.0);
    const int count = param_int(tmp, "count", 0);
    if (count < 1) throw DomainError("range count must be positive");
    for (int i = 0; i < count; ++i) {
      const double t = count == 1 ? lo : lo + (hi - lo) * i / (count - 1);
      pts.push_back(t * Point::unit(n, 0));
    }
    return pts;
  }
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ';');) pts.push_back(parse_point(item, n));
  if (pts.empty()) throw DomainError("empty point list");
  return pts;
}

void add_coords(Json& row, const std::string& prefix, const Point& x) {
  if (x.dim() == 1) {
    row[prefix] = x[0];
    return;
  }
  for (int i = 0; i < x.dim(); ++i) row[prefix + std::to_string(i + 1)] = x[i];
}

Grid1D grid_of(const Params& p, int fallback_N) {
  Grid1D g{param_double(p, "a", -1.0), param_double(p, "b", 1.0), param_int(p, "N", fallback_N)};
  g.validate();
  return g;
}

Eigen::VectorXd sample_nodes(const Grid1D& grid, const ScalarField& u) {
  Eigen::VectorXd v(grid.N);
  for (int i = 0; i < grid.N; ++i) v[i] = u(Point{grid.node(i)});
  return v;
}

// ---------------------------------------------------------------------------------------------
// Commands

Table cmd_eval(const Params& p) {
  const int n = dim_of(p);
  const double s = param_double(p, "s", 0.5);
  const auto oracle = make_field(param_string(p, "field", "ball_torsion"), n, s, p);
  QuadConfig qc;
  qc.target_rel_err = param_double(p, "tol", qc.target_rel_err);
  qc.angular_order = param_int(p, "angular_order", qc.angular_order);
  qc.validate();
  const std::string op = param_string(p, "operator", "L");
  std::function<Evaluation(const Point&)> apply;
  if (op == "L") {
    Params rec = p;
    rec["n"] = std::to_string(n);
    const Kernel K = parse_kernel(rec);
    apply = [K, &oracle, qc](const Point& x) { return apply_operator(K, oracle.field, x, qc); };
  } else if (op == "mplus" || op == "mminus") {
    const double lambda = param_double(p, "lambda", 1.0), Lambda = param_double(p, "Lambda", 1.0);
    const Extremal which = op == "mplus" ? Extremal::plus : Extremal::minus;
    apply = [=, &oracle](const Point& x) { return apply_extremal(lambda, Lambda, which, s, oracle.field, x, qc); };
  } else {
    throw DomainError("operator must be L, mplus or mminus");
  }
  const bool plain = op == "L" && param_string(p, "kernel", "fraclap") == "fraclap";
  Table t;
  for (const Point& x : parse_points(param_string(p, "x", "0"), n)) {
    const Evaluation e = apply(x);
    Json row;
    add_coords(row, "x", x);
    row["value"] = number(e.value);
    row["err_est"] = number(e.err_est);
    row["accuracy_met"] = e.accuracy_met;
    const bool known = plain && oracle.known_operator_value && oracle.in_validity_region &&
                       oracle.in_validity_region(x);
    row["exact"] = known ? number(oracle.known_operator_value(x)) : Json(nullptr);
    t.add(std::move(row));
  }
  return t;
}

Table cmd_symbol(const Params& p) {
  const int n = dim_of(p);
  Params rec = p;
  rec["n"] = std::to_string(n);
  const Kernel K = parse_kernel(rec);
  const double tol = param_double(p, "tol", 1e-7);
  // Closed forms are exact up to rounding; quadrature carries its refinement tolerance.
  const double rel_err = K.variant() == KernelVariant::comparable ? tol : 1e-14;
  Table t;
  for (const Point& xi : parse_points(param_string(p, "xi", "1"), n)) {
    const double A = fourier_symbol(K, xi, tol);
    const double r = xi.norm();
    Json row;
    add_coords(row, "xi", xi);
    row["symbol"] = number(A);
    row["err_est"] = number(rel_err * std::abs(A));
    row["ratio"] = r > 0.0 ? number(A / std::pow(r, 2.0 * K.order())) : Json(nullptr);
    t.add(std::move(row));
  }
  return t;
}

Table cmd_wos(const Params& p) {
  const int n = dim_of(p);
  const double s = param_double(p, "s", 0.5);
  const DomainPtr domain = make_domain(param_string(p, "domain", "ball"), n, p);
  const ExteriorData g = make_exterior(param_string(p, "g", "zero"), n, s, p);
  WosConfig cfg;
  cfg.n_samples = static_cast<std::int64_t>(param_double(p, "samples", static_cast<double>(cfg.n_samples)));
  const double seed = param_double(p, "seed", static_cast<double>(cfg.master_seed));
  if (seed < 0.0 || seed != std::floor(seed)) throw DomainError("seed must be a non-negative integer");
  cfg.master_seed = static_cast<std::uint64_t>(seed);
  cfg.n_streams = param_int(p, "streams", cfg.n_streams);
  cfg.max_steps = param_int(p, "max_steps", cfg.max_steps);
  cfg.radius_safety = param_double(p, "radius_safety", cfg.radius_safety);
  cfg.validate();
  Table t;
  for (const Point& x : parse_points(param_string(p, "x", "0"), n)) {
    const WosEstimate e = wos_solve(*domain, g, x, s, cfg);
    Json row;
    add_coords(row, "x", x);
    row["mean"] = number(e.mean);
    row["stderr"] = number(e.std_error);
    row["n_samples"] = e.n_samples;
    row["mean_steps"] = number(e.mean_steps);
    row["max_steps_hit"] = e.max_steps_hit;
    row["bias_warning"] = e.bias_warning;
    row["seed"] = cfg.master_seed;
    t.add(std::move(row));
  }
  return t;
}

/// Right-hand side: a number is a constant, otherwise a named field sampled at the nodes.
Eigen::VectorXd rhs_of(const Params& p, const Grid1D& grid, double s) {
  const std::string f = param_string(p, "f", "1");
  try {
    std::size_t used = 0;
    const double c = std::stod(f, &used);
    if (used == f.size()) return Eigen::VectorXd::Constant(grid.N, c);
  } catch (const std::invalid_argument&) {
  }
  return sample_nodes(grid, make_field(f, 1, s, p).field);
}

Table cmd_solve(const Params& p) {
  if (dim_of(p) != 1) throw UnsupportedError("solve: only n = 1 is discretized");
  const double s = param_double(p, "s", 0.5);
  const Grid1D grid = grid_of(p, 256);
  const DiscreteOperator op = assemble_operator(s, grid);
  const ExteriorData g = make_exterior(param_string(p, "g", "zero"), 1, s, p);
  const Eigen::VectorXd f = rhs_of(p, grid, s);
  const GridFunction1D u = solve_dirichlet(op, f, g);
  const Eigen::VectorXd residual = op.apply(u.values, g) - f;
  Table t;
  for (int i = 0; i < grid.N; ++i) {
    Json row;
    row["x"] = grid.node(i);
    row["value"] = number(u.values[i]);
    // Backward error of the linear solve at this node, in units of the unknown.
    row["err_est"] = number(std::abs(residual[i]) / op.matrix()(i, i));
    t.add(std::move(row));
  }
  return t;
}

struct ObstacleRun {
  Table nodes;
  Json summary;
};

ObstacleRun cmd_obstacle(const Params& p) {
  if (dim_of(p) != 1) throw UnsupportedError("obstacle: only n = 1 is discretized");
  const double s = param_double(p, "s", 0.5);
  const Grid1D grid = grid_of(p, 1024);
  const DiscreteOperator op = assemble_operator(s, grid);
  const ExteriorData g = make_exterior(param_string(p, "g", "zero"), 1, s, p);
  const std::string phi_name = param_string(p, "phi", "quadratic");
  Eigen::VectorXd phi(grid.N);
  if (phi_name == "quadratic") {
    const double height = param_double(p, "height", 0.5), curvature = param_double(p, "curvature", 1.0);
    for (int i = 0; i < grid.N; ++i) phi[i] = height - curvature * grid.node(i) * grid.node(i);
  } else {
    phi = sample_nodes(grid, make_field(phi_name, 1, s, p).field);
  }
  ObstacleOptions opts;
  opts.omega = param_double(p, "omega", opts.omega);
  opts.max_iterations = param_int(p, "max_iterations", opts.max_iterations);
  const double tol = param_double(p, "tol", 1e-10);
  const ObstacleSolution sol = solve_obstacle(op, phi, g, tol, opts);

  ObstacleRun run;
  const Eigen::VectorXd Lv = op.apply(sol.v.values, g);
  for (int i = 0; i < grid.N; ++i) {
    const double gap = sol.v.values[i] - phi[i];
    Json row;
    row["x"] = grid.node(i);
    row["value"] = number(sol.v.values[i]);
    row["phi"] = number(phi[i]);
    row["gap"] = number(gap);
    row["residual"] = number(std::abs(std::min(Lv[i], gap)));
    run.nodes.add(std::move(row));
  }
  Json& sm = run.summary;
  sm["record"] = "obstacle_summary";
  sm["s"] = s;
  sm["N"] = grid.N;
  sm["a"] = grid.a;
  sm["b"] = grid.b;
  sm["residual"] = number(sol.residual);
  sm["iterations"] = sol.iterations;
  sm["contact_nodes"] = sol.contact_set.size();
  if (!sol.contact_set.empty()) {
    sm["contact_first"] = grid.node(sol.contact_set.front());
    sm["contact_last"] = grid.node(sol.contact_set.back());
  }
  for (auto [side, label] : {std::pair{Side::left, "left"}, std::pair{Side::right, "right"}}) {
    Json fit;
    try {
      const GrowthFit f = fit_growth_exponent(sol, phi, side);
      fit["exponent"] = number(f.exponent);
      fit["r2"] = number(f.r2);
      fit["free_boundary"] = number(f.free_boundary);
      fit["points"] = f.points;
    } catch (const Error& e) {
      fit["error"] = e.what();
    }
    sm[std::string("fit_") + label] = fit;
  }
  return run;
}

Table cmd_heat(const Params& p) {
  const int n = dim_of(p);
  const double s = param_double(p, "s", 0.5);
  const double time = param_double(p, "t", 1.0);
  const HeatGridOptions opts;
  const double abs_err = s == 0.5 ? 0.0 : opts.aliasing + opts.truncation;
  Table t;
  for (const Point& x : parse_points(param_string(p, "x", "0"), n)) {
    const double v = heat_kernel(n, s, time, x);
    Json row;
    add_coords(row, "x", x);
    row["p"] = number(v);
    row["err_est"] = number(abs_err + 4e-16 * std::abs(v));
    t.add(std::move(row));
  }
  return t;
}

Table cmd_verify(const Params& p, std::ostream& err, bool& all_passed) {
  std::vector<int> ids;
  const std::string list = param_string(p, "checks", "");
  if (!list.empty()) {
    std::stringstream ss(list);
    for (std::string item; std::getline(ss, item, ',');) {
      const int id = param_int({{"checks", item}}, "checks", 0);
      if (id < 1 || id > check_count()) throw DomainError("check id out of range: " + item);
      ids.push_back(id);
    }
  }
  Table t;
  all_passed = true;
  int passed = 0, total = 0;
  for (const CheckResult& r : run_checks(ids)) {
    Json row;
    row["id"] = r.id;
    row["name"] = r.name;
    row["passed"] = r.passed;
    row["measured"] = number(r.measured);
    row["threshold"] = number(r.threshold);
    row["detail"] = r.detail;
    t.add(std::move(row));
    all_passed = all_passed && r.passed;
    passed += r.passed;
    ++total;
    char line[160];
    std::snprintf(line, sizeof line, "[%2d] %-40s %s (%.1fs)\n", r.id, r.name.c_str(), r.passed ? "PASS" : "FAIL",
                  r.seconds);
    err << line;
  }
  err << passed << "/" << total << " checks passed\n";
  return t;
}

// ---------------------------------------------------------------------------------------------

void emit(const RunConfig& cfg, std::ostream& out, std::ostream& err, bool& verify_ok) {
  std::unique_ptr<std::ofstream> file;
  std::ostream* sink = &out;
  if (!cfg.out_path.empty()) {
    file = std::make_unique<std::ofstream>(cfg.out_path);
    if (!*file) throw UsageError("cannot write '" + cfg.out_path + "'");
    sink = file.get();
  }
  const Params& p = cfg.params;
  const std::string& c = cfg.command;
  verify_ok = true;
  if (c == "eval") cmd_eval(p).write(*sink, cfg.format);
  else if (c == "symbol") cmd_symbol(p).write(*sink, cfg.format);
  else if (c == "wos") cmd_wos(p).write(*sink, cfg.format);
  else if (c == "solve") cmd_solve(p).write(*sink, cfg.format);
  else if (c == "heat") cmd_heat(p).write(*sink, cfg.format);
  else if (c == "verify") cmd_verify(p, err, verify_ok).write(*sink, cfg.format);
  else if (c == "obstacle") {
    const ObstacleRun run = cmd_obstacle(p);
    run.nodes.write(*sink, cfg.format);
    if (cfg.format == "json") {
      *sink << run.summary.dump() << '\n';
    } else if (!cfg.out_path.empty()) {
      std::ofstream js(cfg.out_path + ".summary.json");
      if (!js) throw UsageError("cannot write '" + cfg.out_path + ".summary.json'");
      js << run.summary.dump() << '\n';
    } else {
      err << run.summary.dump() << '\n';
    }
  }
  sink->flush();
}

Json diagnostic(const std::string& kind, const std::string& command, const std::string& what) {
  Json d;
  d["error"] = kind;
  d["command"] = command;
  d["message"] = what;
  return d;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"fracops: nonlocal operator toolkit", "fracops"};
  app.require_subcommand(1);
  struct Flags {
    std::string s, n, grid_n, seed, samples, tol, out, format, config;
    std::vector<std::string> pairs;
  };
  std::map<std::string, Flags> flags;
  const std::map<std::string, std::string> help{
      {"eval", "apply an operator to a named field at points"},
      {"symbol", "Fourier symbol of a kernel"},
      {"wos", "walk-on-spheres estimate of an s-harmonic extension"},
      {"solve", "discrete Dirichlet problem on an interval"},
      {"obstacle", "discrete obstacle problem on an interval"},
      {"heat", "heat kernel p(t, x)"},
      {"verify", "run the consistency checks"},
  };
  for (const auto& [name, text] : help) {
    Flags& f = flags[name];
    CLI::App* sub = app.add_subcommand(name, text);
    sub->add_option("--s", f.s, "order s in (0,1)");
    sub->add_option("--n", f.n, "dimension");
    sub->add_option("--grid-n", f.grid_n, "number of interior grid nodes");
    sub->add_option("--seed", f.seed, "master seed");
    sub->add_option("--samples", f.samples, "Monte Carlo samples");
    sub->add_option("--tol", f.tol, "tolerance");
    sub->add_option("--out", f.out, "output file (default stdout)");
    sub->add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--config", f.config, "file of key=value lines");
    sub->add_option("params", f.pairs, "key=value parameters");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : usage;
  }

  RunConfig cfg;
  cfg.command = app.get_subcommands().front()->get_name();
  try {
    const Flags& f = flags.at(cfg.command);
    Params merged;
    if (!f.config.empty()) merged = read_config_file(f.config);
    for (const auto& item : f.pairs) {
      auto [k, v] = split_pair(item, "argument");
      merged[k] = v;
    }
    const std::pair<const char*, const std::string*> flag_keys[] = {
        {"s", &f.s}, {"n", &f.n}, {"N", &f.grid_n}, {"seed", &f.seed}, {"samples", &f.samples}, {"tol", &f.tol}};
    for (const auto& [key, value] : flag_keys)
      if (!value->empty()) merged[key] = *value;
    if (auto it = merged.find("out"); it != merged.end()) cfg.out_path = it->second, merged.erase(it);
    if (auto it = merged.find("format"); it != merged.end()) cfg.format = it->second, merged.erase(it);
    if (!f.out.empty()) cfg.out_path = f.out;
    if (!f.format.empty()) cfg.format = f.format;
    cfg.params = std::move(merged);
    validate(cfg);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  }

  try {
    bool verify_ok = true;
    emit(cfg, out, err, verify_ok);
    return verify_ok ? ok : verification;
  } catch (const NonConvergenceError& e) {
    Json d = diagnostic("nonconvergence", cfg.command, e.what());
    d["residual"] = number(e.residual());
    d["iterations"] = e.iterations();
    err << d.dump() << '\n';
    return numerical;
  } catch (const NumericalError& e) {
    Json d = diagnostic("numerical", cfg.command, e.what());
    d["achieved"] = number(e.achieved());
    err << d.dump() << '\n';
    return numerical;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  } catch (const std::exception& e) {
    err << diagnostic("internal", cfg.command, e.what()).dump() << '\n';
    return numerical;
  }
}

}  // namespace fracops::cli
