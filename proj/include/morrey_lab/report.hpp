#pragma once

// Experiment configs in, verification reports and plot data out.

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "morrey_lab/errors.hpp"
#include "morrey_lab/group.hpp"
#include "morrey_lab/harness/exponents.hpp"
#include "morrey_lab/harness/sides.hpp"
#include "morrey_lab/quadrature_spec.hpp"
#include "morrey_lab/test_function.hpp"

namespace morrey {

using json = nlohmann::json;

inline constexpr const char* kToolVersion = "0.1.0";

struct BatteryItem {
  std::string kind;  // gauss | bump | power
  double size = 1.0;  // width or radius
  std::optional<double> a;  // power exponent; unset means (Q - lambda) / (2p)
};

struct TheoremEntry {
  PartialConfig partial;
  double perturb_inv_q = 0.0;
};

struct Tolerances {
  double spread = 1.10;
  double slope_abs = 0.05;
  double slope_rel = 0.10;
  double min_mismatch = 0.2;
  double maximal_spread = 2.0;
};

struct HedbergRequest {
  double gamma = 0.3;
  double p = 2.0;
  double lambda = 0.2;
  double width = 1.0;
  int points = 100;
  double spread = 0.10;  // allowed relative change between refinement levels
};

struct ExperimentConfig {
  GroupDescriptor group;
  QuadratureSpec spec;
  std::vector<TheoremEntry> theorems;
  std::vector<BatteryItem> battery;
  std::vector<double> t_values{0.25, 0.5, 1.0, 2.0, 4.0};
  std::uint64_t seed = 1;
  int workers = 1;
  std::string output = "report.json";
  Tolerances tolerances;
  std::optional<HedbergRequest> hedberg;
  json echo;
};

namespace detail {

inline const json& require(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ConfigError(path + "." + key + ": missing");
  return *it;
}

inline double get_number(const json& j, const std::string& key, const std::string& path) {
  const json& v = require(j, key, path);
  if (!v.is_number()) throw ConfigError(path + "." + key + ": expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigError(path + "." + key + ": not finite");
  return d;
}

inline double number_or(const json& j, const std::string& key, const std::string& path, double dflt) {
  return j.contains(key) ? get_number(j, key, path) : dflt;
}

inline std::optional<double> optional_number(const json& j, const std::string& key, const std::string& path) {
  if (!j.contains(key)) return std::nullopt;
  return get_number(j, key, path);
}

inline std::string get_string(const json& j, const std::string& key, const std::string& path) {
  const json& v = require(j, key, path);
  if (!v.is_string()) throw ConfigError(path + "." + key + ": expected a string");
  return v.get<std::string>();
}

inline GroupDescriptor parse_group(const json& j) {
  const std::string path = "group";
  const std::string law = get_string(j, "law", path);
  GroupDescriptor g;
  if (law == "euclidean") {
    const double n = get_number(j, "dimension", path);
    if (n != std::floor(n) || n < 1 || n > 3) throw ConfigError("group.dimension: must be 1, 2 or 3");
    GaugeKind gk = GaugeKind::euclidean;
    if (j.contains("gauge")) {
      const std::string s = get_string(j, "gauge", path);
      if (s == "euclidean") gk = GaugeKind::euclidean;
      else if (s == "anisotropic") gk = GaugeKind::anisotropic;
      else throw ConfigError("group.gauge: unknown gauge '" + s + "' for the euclidean law");
    }
    g = GroupDescriptor::euclidean(static_cast<std::size_t>(n), gk);
  } else if (law == "heisenberg1") {
    g = GroupDescriptor::heisenberg();
    if (j.contains("gauge") && get_string(j, "gauge", path) != "koranyi")
      throw ConfigError("group.gauge: heisenberg1 uses the koranyi gauge");
  } else {
    throw ConfigError("group.law: unknown law '" + law + "'");
  }
  if (j.contains("weights")) {
    const json& w = j["weights"];
    if (!w.is_array() || w.size() != g.dimension) throw ConfigError("group.weights: expected one weight per axis");
    for (std::size_t i = 0; i < g.dimension; ++i) {
      if (!w[i].is_number() || w[i].get<double>() != g.weights[i])
        throw ConfigError("group.weights[" + std::to_string(i) + "]: does not match the law");
    }
  }
  return g;
}

inline QuadratureSpec parse_quadrature(const json& j) {
  const std::string path = "quadrature";
  QuadratureSpec s;
  s.R_max = number_or(j, "R_max", path, s.R_max);
  s.lattice_h = number_or(j, "lattice_h", path, s.lattice_h);
  s.shell_ratio = number_or(j, "shell_ratio", path, s.shell_ratio);
  s.inner_cutoff = number_or(j, "inner_cutoff", path, s.inner_cutoff);
  const double lvl = number_or(j, "refinement_level", path, 0.0);
  if (lvl != std::floor(lvl) || lvl < 0 || lvl > 8) throw ConfigError("quadrature.refinement_level: must be 0..8");
  s.refinement_level = static_cast<int>(lvl);
  try {
    s.validate();
  } catch (const DomainError& e) {
    throw ConfigError(std::string("quadrature: ") + e.what());
  }
  return s;
}

}  // namespace detail

/// Parses and validates a config document; errors name the offending field.
inline ExperimentConfig parse_config(const json& doc) {
  using namespace detail;
  if (!doc.is_object()) throw ConfigError("config: expected an object at top level");
  ExperimentConfig cfg;
  cfg.echo = doc;
  cfg.group = parse_group(require(doc, "group", "config"));
  if (doc.contains("quadrature")) cfg.spec = parse_quadrature(doc["quadrature"]);
  if (doc.contains("t_values")) {
    const json& t = doc["t_values"];
    if (!t.is_array() || t.empty()) throw ConfigError("t_values: expected a non-empty array");
    cfg.t_values.clear();
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (!t[i].is_number() || !(t[i].get<double>() > 0.0))
        throw ConfigError("t_values[" + std::to_string(i) + "]: must be a positive number");
      cfg.t_values.push_back(t[i].get<double>());
    }
  }
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned()) throw ConfigError("seed: expected a non-negative integer");
    cfg.seed = doc["seed"].get<std::uint64_t>();
  }
  if (doc.contains("workers")) {
    if (!doc["workers"].is_number_integer() || doc["workers"].get<int>() < 1)
      throw ConfigError("workers: expected a positive integer");
    cfg.workers = doc["workers"].get<int>();
  }
  if (doc.contains("output")) cfg.output = get_string(doc, "output", "config");
  if (doc.contains("tolerances")) {
    const json& t = doc["tolerances"];
    cfg.tolerances.spread = number_or(t, "spread", "tolerances", cfg.tolerances.spread);
    cfg.tolerances.slope_abs = number_or(t, "slope_abs", "tolerances", cfg.tolerances.slope_abs);
    cfg.tolerances.slope_rel = number_or(t, "slope_rel", "tolerances", cfg.tolerances.slope_rel);
    cfg.tolerances.min_mismatch = number_or(t, "min_mismatch", "tolerances", cfg.tolerances.min_mismatch);
    cfg.tolerances.maximal_spread = number_or(t, "maximal_spread", "tolerances", cfg.tolerances.maximal_spread);
  }
  const double Q = cfg.group.Q;
  if (doc.contains("theorems")) {
    const json& ts = doc["theorems"];
    if (!ts.is_array()) throw ConfigError("theorems: expected an array");
    for (std::size_t i = 0; i < ts.size(); ++i) {
      const std::string path = "theorems[" + std::to_string(i) + "]";
      const json& e = ts[i];
      TheoremEntry te;
      const std::string name = get_string(e, "theorem", path);
      const auto th = parse_theorem(name);
      if (!th) throw ConfigError(path + ".theorem: unknown theorem '" + name + "'");
      te.partial.theorem = *th;
      te.partial.Q = Q;
      te.partial.p = get_number(e, "p", path);
      te.partial.lambda = get_number(e, "lambda", path);
      if (!(te.partial.lambda >= 0.0 && te.partial.lambda < Q))
        throw ConfigError(path + ".lambda: must satisfy 0 <= lambda < Q = " + std::to_string(Q));
      te.partial.gamma = optional_number(e, "gamma", path);
      te.partial.alpha = optional_number(e, "alpha", path);
      te.partial.beta = optional_number(e, "beta", path);
      te.partial.a = optional_number(e, "a", path);
      te.partial.r_exp = optional_number(e, "r", path);
      te.perturb_inv_q = number_or(e, "perturb_inv_q", path, 0.0);
      const auto ad = admissible(te.partial);
      if (!ad.accepted()) throw ConfigError(path + ": exponents violate " + ad.violated);
      try {
        perturb_q(*ad.config, te.perturb_inv_q);
      } catch (const DomainError& err) {
        throw ConfigError(path + ".perturb_inv_q: " + err.what());
      }
      cfg.theorems.push_back(te);
    }
  }
  if (doc.contains("battery")) {
    const json& b = doc["battery"];
    if (!b.is_array()) throw ConfigError("battery: expected an array");
    for (std::size_t i = 0; i < b.size(); ++i) {
      const std::string path = "battery[" + std::to_string(i) + "]";
      BatteryItem it;
      it.kind = get_string(b[i], "kind", path);
      if (it.kind == "gauss") {
        it.size = get_number(b[i], "width", path);
      } else if (it.kind == "bump" || it.kind == "power") {
        it.size = get_number(b[i], "radius", path);
        if (it.kind == "power" && b[i].contains("a") && !(b[i]["a"].is_string() && b[i]["a"] == "auto"))
          it.a = get_number(b[i], "a", path);
      } else {
        throw ConfigError(path + ".kind: unknown kind '" + it.kind + "'");
      }
      if (!(it.size > 0.0)) throw ConfigError(path + ": size must be positive");
      if (it.a && !(*it.a > 0.0 && *it.a < Q)) throw ConfigError(path + ".a: must lie in (0, Q)");
      cfg.battery.push_back(it);
    }
  }
  if (doc.contains("hedberg")) {
    const json& h = doc["hedberg"];
    HedbergRequest r;
    r.gamma = number_or(h, "gamma", "hedberg", r.gamma);
    r.p = number_or(h, "p", "hedberg", r.p);
    r.lambda = number_or(h, "lambda", "hedberg", r.lambda);
    r.width = number_or(h, "width", "hedberg", r.width);
    r.spread = number_or(h, "tolerance", "hedberg", r.spread);
    const double pts = number_or(h, "points", "hedberg", r.points);
    if (pts != std::floor(pts) || pts < 1) throw ConfigError("hedberg.points: expected a positive integer");
    r.points = static_cast<int>(pts);
    PartialConfig pc;
    pc.theorem = Theorem::adams_hls;
    pc.Q = Q;
    pc.p = r.p;
    pc.lambda = r.lambda;
    pc.gamma = r.gamma;
    if (!admissible(pc).accepted()) throw ConfigError("hedberg: exponents violate " + admissible(pc).violated);
    cfg.hedberg = r;
  }
  return cfg;
}

inline ExperimentConfig parse_config_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return parse_config(doc);
}

inline ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

/// Battery entry realized for one theorem config (the power exponent may depend on it).
inline TestFunction make_test_function(const GroupDescriptor& g, const BatteryItem& it, const ExponentConfig& c) {
  if (it.kind == "gauss") return TestFunction::gauss_tensor(g, it.size);
  if (it.kind == "bump") return TestFunction::bump_compact(g, it.size);
  const double a = it.a.value_or((c.Q - c.lambda) / (2.0 * c.p));
  return TestFunction::power_truncated(g, a, it.size);
}

inline json config_json(const ExponentConfig& c) {
  json j = {{"theorem", std::string(theorem_name(c.theorem))},
            {"Q", c.Q},
            {"p", c.p},
            {"gamma", c.gamma},
            {"alpha", c.alpha},
            {"beta", c.beta},
            {"lambda", c.lambda},
            {"q", c.q},
            {"p_prime", c.p_prime},
            {"q_prime", c.q_prime},
            {"admissible", c.admissible}};
  if (c.a) j["a"] = *c.a;
  if (c.r_exp) j["r"] = *c.r_exp;
  return j;
}

struct RunOutcome {
  json report;
  int status = 0;  // 0 all checks pass, 1 some check failed
};

namespace detail {

struct Task {
  ExponentConfig config;
  BatteryItem item;
};

struct TaskResult {
  json record;
  json telemetry;
  bool passed = false;
};

template <class F>
void parallel_for(std::size_t n, int workers, F&& f) {
  if (workers <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  const auto w = std::min<std::size_t>(static_cast<std::size_t>(workers), n);
  for (std::size_t k = 0; k < w; ++k)
    pool.emplace_back([&]() {
      for (std::size_t i = next++; i < n; i = next++) f(i);
    });
  for (auto& t : pool) t.join();
}

inline TaskResult run_task(const ExperimentConfig& cfg, const Task& task) {
  TaskResult res;
  const auto t0 = std::chrono::steady_clock::now();
  const auto& g = cfg.group;
  const auto& tol = cfg.tolerances;
  json rec;
  rec["theorem"] = std::string(theorem_name(task.config.theorem));
  rec["config"] = config_json(task.config);
  Lattice probe(g, cfg.spec.R_max, cfg.spec.effective_h());
  try {
    const TestFunction u = make_test_function(g, task.item, task.config);
    rec["test_function"] = u.label();
    double widest = 0.0;
    for (double t : cfg.t_values) widest = std::max(widest, u.dilated(t).decay_radius());
    const SweepGrid grid = make_sweep_grid(g, cfg.spec, widest);
    rec["grid"] = {{"R_max", cfg.spec.R_max},
                   {"lattice_h", cfg.spec.lattice_h},
                   {"refinement_level", cfg.spec.refinement_level},
                   {"shell_ratio", cfg.spec.shell_ratio},
                   {"inner_cutoff", cfg.spec.inner_cutoff},
                   {"centers", grid.centers.size()},
                   {"radii", grid.radii}};
    const auto r = dilation_sweep(g, task.config, u, cfg.t_values, grid);
    rec["t_values"] = r.t_values;
    rec["ratios"] = r.ratios;
    rec["lhs"] = r.lhs;
    rec["rhs"] = r.rhs;
    rec["fitted_slope"] = r.fitted_slope;
    rec["predicted_mismatch"] = r.predicted_mismatch;
    rec["estimated_constant"] = r.estimated_constant;
    rec["spread"] = r.spread();
    rec["degenerate"] = r.degenerate;
    json check;
    if (task.config.admissible) {
      const bool maximal = task.config.theorem == Theorem::maximal_bound;
      const double band = maximal ? tol.maximal_spread : tol.spread;
      check = {{"name", maximal ? "maximal_bound_spread" : "dilation_invariance"}, {"spread_tolerance", band}};
      res.passed = r.spread() <= band;
      if (!maximal) {
        check["slope_tolerance"] = tol.slope_abs;
        res.passed = res.passed && std::abs(r.fitted_slope) <= tol.slope_abs;
      }
      check["applicable"] = true;
    } else {
      const double m = r.predicted_mismatch;
      const bool applicable = std::abs(m) >= tol.min_mismatch;
      check = {{"name", "negative_control"},
               {"relative_tolerance", tol.slope_rel},
               {"min_mismatch", tol.min_mismatch},
               {"applicable", applicable}};
      res.passed = !applicable || std::abs(r.fitted_slope - m) <= tol.slope_rel * std::abs(m);
    }
    check["passed"] = res.passed;
    rec["check"] = check;
  } catch (const Error& e) {
    rec["error"] = e.what();
    rec["check"] = {{"name", "error"}, {"passed", false}};
    res.passed = false;
  }
  res.record = rec;
  res.telemetry = {{"wall_seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()},
                   {"lattice_nodes", probe.size()}};
  return res;
}

inline json run_hedberg(const ExperimentConfig& cfg, bool& passed) {
  const auto& h = *cfg.hedberg;
  const auto& g = cfg.group;
  PartialConfig pc;
  pc.theorem = Theorem::adams_hls;
  pc.Q = g.Q;
  pc.p = h.p;
  pc.lambda = h.lambda;
  pc.gamma = h.gamma;
  const ExponentConfig c = *admissible(pc).config;
  const TestFunction u = TestFunction::gauss_tensor(g, h.width);
  std::mt19937_64 rng(cfg.seed);
  std::vector<Point> xs;
  const double span = 0.5 * cfg.spec.R_max;
  for (int k = 0; k < h.points; ++k) {
    Point x(g.dimension);
    for (std::size_t i = 0; i < g.dimension; ++i) {
      const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      x[i] = (2.0 * unit - 1.0) * std::pow(span, g.weights[i]);
    }
    xs.push_back(x);
  }
  const auto radii = default_radii(cfg.spec, u.decay_radius());
  const auto rep = hedberg_pointwise_check(g, c, u, xs, radii, cfg.spec);
  passed = std::isfinite(rep.max_ratio) && rep.max_ratio > 0.0 && rep.relative_change < h.spread;
  return {{"name", "hedberg_pointwise"},
          {"config", config_json(c)},
          {"test_function", u.label()},
          {"points", h.points},
          {"skipped", rep.skipped},
          {"theta", rep.theta},
          {"frac_order", rep.frac_order},
          {"max_ratio", rep.max_ratio},
          {"refined_max_ratio", rep.refined_max_ratio},
          {"relative_change", rep.relative_change},
          {"tolerance", h.spread},
          {"passed", passed}};
}

}  // namespace detail

/// Runs every (theorem, battery function) sweep plus the optional pointwise check.
/// Records appear in config order; telemetry is kept under its own key.
inline RunOutcome run_experiment(const ExperimentConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<detail::Task> tasks;
  for (const auto& te : cfg.theorems) {
    const ExponentConfig base = *admissible(te.partial).config;
    const ExponentConfig c = perturb_q(base, te.perturb_inv_q);
    for (const auto& item : cfg.battery) tasks.push_back({c, item});
  }
  std::vector<detail::TaskResult> results(tasks.size());
  detail::parallel_for(tasks.size(), cfg.workers, [&](std::size_t i) { results[i] = detail::run_task(cfg, tasks[i]); });
  RunOutcome out;
  json records = json::array(), tele = json::array(), checks = json::array();
  std::size_t passed = 0;
  for (const auto& r : results) {
    records.push_back(r.record);
    tele.push_back(r.telemetry);
    passed += r.passed ? 1 : 0;
  }
  bool all = passed == results.size();
  if (cfg.hedberg) {
    bool ok = false;
    try {
      checks.push_back(detail::run_hedberg(cfg, ok));
    } catch (const Error& e) {
      checks.push_back({{"name", "hedberg_pointwise"}, {"error", e.what()}, {"passed", false}});
    }
    all = all && ok;
  }
  out.report = {{"tool", "morrey_lab"},
                {"version", kToolVersion},
                {"config", cfg.echo},
                {"group", cfg.group.name()},
                {"records", records},
                {"checks", checks},
                {"summary", {{"records", results.size()}, {"passed", passed}, {"all_passed", all}}}};
  out.report["telemetry"] = {
      {"wall_seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()},
      {"workers", cfg.workers},
      {"records", tele}};
  out.status = all ? 0 : 1;
  return out;
}

/// Report text without the telemetry key, the part covered by the determinism contract.
inline std::string deterministic_dump(const json& report) {
  json r = report;
  r.erase("telemetry");
  return r.dump(2);
}

// ---------------------------------------------------------------------------
// Plot data

struct PlotRow {
  std::string theorem;
  std::string test_function;
  double t = 0.0;
  double ratio = 0.0;
  double predicted_mismatch = 0.0;
  double fitted_slope = 0.0;
};

inline constexpr const char* kPlotHeader = "theorem,test_function,t,ratio,predicted_mismatch,fitted_slope";

namespace detail {

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (quoted) throw ConfigError("plot data: unterminated quote");
  out.push_back(cur);
  return out;
}

inline double parse_double(const std::string& s, std::size_t line) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size())
    throw ConfigError("plot data line " + std::to_string(line) + ": bad number '" + s + "'");
  return v;
}

}  // namespace detail

/// One row per (record, t); records carrying an error note are skipped.
inline std::vector<PlotRow> plot_rows(const json& report) {
  if (!report.is_object() || !report.contains("records") || !report["records"].is_array())
    throw ConfigError("report: missing records array");
  std::vector<PlotRow> rows;
  for (std::size_t i = 0; i < report["records"].size(); ++i) {
    const json& r = report["records"][i];
    const std::string path = "records[" + std::to_string(i) + "]";
    if (r.contains("error")) continue;
    try {
      const auto& ts = r.at("t_values");
      const auto& rs = r.at("ratios");
      if (ts.size() != rs.size()) throw ConfigError(path + ": t_values and ratios differ in length");
      for (std::size_t k = 0; k < ts.size(); ++k) {
        rows.push_back({r.at("theorem").get<std::string>(), r.at("test_function").get<std::string>(),
                        ts[k].get<double>(), rs[k].get<double>(), r.at("predicted_mismatch").get<double>(),
                        r.at("fitted_slope").get<double>()});
      }
    } catch (const json::exception& e) {
      throw ConfigError(path + ": " + e.what());
    }
  }
  return rows;
}

inline std::string emit_plotdata(const json& report) {
  std::string out = std::string(kPlotHeader) + "\n";
  for (const auto& r : plot_rows(report)) {
    out += detail::csv_field(r.theorem) + "," + detail::csv_field(r.test_function) + "," + detail::g17(r.t) + "," +
           detail::g17(r.ratio) + "," + detail::g17(r.predicted_mismatch) + "," + detail::g17(r.fitted_slope) + "\n";
  }
  return out;
}

inline std::vector<PlotRow> parse_plotdata(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kPlotHeader) throw ConfigError("plot data: missing or wrong header");
  std::vector<PlotRow> rows;
  std::size_t n = 1;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty()) continue;
    const auto f = detail::split_csv_line(line);
    if (f.size() != 6) throw ConfigError("plot data line " + std::to_string(n) + ": expected 6 fields");
    rows.push_back({f[0], f[1], detail::parse_double(f[2], n), detail::parse_double(f[3], n),
                    detail::parse_double(f[4], n), detail::parse_double(f[5], n)});
  }
  return rows;
}

/// Human-readable battery listing for a config (power exponents shown for the first theorem).
inline std::vector<std::string> battery_labels(const ExperimentConfig& cfg) {
  std::vector<std::string> out;
  std::optional<ExponentConfig> first;
  if (!cfg.theorems.empty()) first = admissible(cfg.theorems.front().partial).config;
  for (const auto& it : cfg.battery) {
    if (it.kind == "power" && !it.a && !first) {
      out.push_back("power(a=auto,rho=" + detail::g17(it.size) + ")");
      continue;
    }
    ExponentConfig c = first.value_or(ExponentConfig{});
    out.push_back(make_test_function(cfg.group, it, c).label());
  }
  return out;
}

}  // namespace morrey
