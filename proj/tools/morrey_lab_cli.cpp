// Command-line front end: run experiments, check exponent tuples, export plot data.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "morrey_lab/report.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;
constexpr int kInternal = 3;

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw morrey::ConfigError("cannot write '" + path + "'");
  out << text;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw morrey::ConfigError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dilation-invariance harness for Morrey-space inequalities"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run the sweeps described by a config file");
  std::string config_path, out_path;
  int workers = 0, refine = 0;
  std::uint64_t seed = 0;
  bool seed_given = false;
  run->add_option("--config", config_path, "Config JSON")->required();
  run->add_option("--out", out_path, "Report path (overrides config output; '-' for stdout)");
  run->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
  auto* seed_opt = run->add_option("--seed", seed, "Seed for sampled points");
  run->add_flag("--refine", refine, "Raise the refinement level by one (repeatable)");

  auto* adm = app.add_subcommand("check-admissibility", "Validate one exponent tuple and print q");
  std::string theorem;
  double Q = 0, p = 0, lambda = 0;
  std::optional<double> gamma, alpha, beta, a, r;
  adm->add_option("--theorem", theorem)->required();
  adm->add_option("--Q", Q)->required();
  adm->add_option("--p", p)->required();
  adm->add_option("--lambda", lambda)->required();
  adm->add_option("--gamma", gamma);
  adm->add_option("--alpha", alpha);
  adm->add_option("--beta", beta);
  adm->add_option("--a", a);
  adm->add_option("--r", r);

  auto* plot = app.add_subcommand("emit-plotdata", "Export a report as CSV");
  std::string report_path, csv_path = "-";
  plot->add_option("--report", report_path)->required();
  plot->add_option("--out", csv_path);

  auto* bat = app.add_subcommand("list-battery", "List the test functions a config would use");
  std::string bat_config;
  bat->add_option("--config", bat_config)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }
  seed_given = seed_opt->count() > 0;

  try {
    if (*run) {
      auto cfg = morrey::load_config(config_path);
      if (workers > 0) cfg.workers = workers;
      if (seed_given) cfg.seed = seed;
      cfg.spec.refinement_level += refine;
      if (!out_path.empty()) cfg.output = out_path;
      const auto outcome = morrey::run_experiment(cfg);
      write_text(cfg.output, outcome.report.dump(2) + "\n");
      const auto& s = outcome.report["summary"];
      std::cerr << "records " << s["passed"].get<std::size_t>() << "/" << s["records"].get<std::size_t>()
                << " passed" << (s["all_passed"].get<bool>() ? "" : ", some checks failed") << "\n";
      return outcome.status == 0 ? kOk : kCheckFailed;
    }
    if (*adm) {
      const auto th = morrey::parse_theorem(theorem);
      if (!th) {
        std::cerr << "error: unknown theorem '" << theorem << "'\n";
        return kUsage;
      }
      morrey::PartialConfig pc{*th, Q, p, lambda, gamma, alpha, beta, a, r};
      const auto res = morrey::admissible(pc);
      if (!res.accepted()) {
        std::cout << "rejected: " << res.violated << "\n";
        return kCheckFailed;
      }
      std::cout << "q = " << fmt(res.config->q) << ", admissible\n";
      return kOk;
    }
    if (*plot) {
      const auto report = morrey::json::parse(read_text(report_path));
      write_text(csv_path, morrey::emit_plotdata(report));
      return kOk;
    }
    if (*bat) {
      const auto cfg = morrey::load_config(bat_config);
      for (const auto& label : morrey::battery_labels(cfg)) std::cout << label << "\n";
      return kOk;
    }
  } catch (const morrey::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kUsage;
  } catch (const morrey::json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kUsage;
  } catch (const morrey::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kInternal;
}
