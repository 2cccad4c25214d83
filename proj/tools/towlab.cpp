// towlab: batch front end for the tug-of-war laboratory. All the actual work
// happens behind the C API in libtow; this binary only assembles a JSON
// config from flags (optionally merged over a config file), runs it, and
// writes the report.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tow/tow.h"

namespace {

using json = nlohmann::json;

struct CommonFlags {
  double p = 0.0, eps = 0.0, h = 0.0, tol = 0.0, r = 0.0, t = 0.0;
  int n = 0, threads = 0;
  long trials = 0;
  std::uint64_t seed = 0;
  std::string domain, boundary, strategy_i, strategy_ii, stop, out, config_file, suite,
      sweep_kind, csv_out;
  std::vector<double> eps_list, start;
  bool decomposed = false;
  bool emit_field = false;
};

// Adds the shared flag set; each option writes its value into `f` and the
// parse callback later copies only the flags the user actually passed.
void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--p", f.p, "exponent p > 2");
  cmd->add_option("--n", f.n, "dimension");
  cmd->add_option("--eps", f.eps, "step size epsilon");
  cmd->add_option("--spacing", f.h, "grid spacing h (default eps/2)");
  cmd->add_option("--domain", f.domain, "shape spec, e.g. ball:2,0,0,5");
  cmd->add_option("--boundary", f.boundary, "boundary data spec, e.g. affine:0,1,0");
  cmd->add_option("--trials", f.trials, "Monte Carlo trials");
  cmd->add_option("--seed", f.seed, "master RNG seed");
  cmd->add_option("--tol", f.tol, "solver tolerance");
  cmd->add_option("--threads", f.threads, "worker threads (0 = hardware)");
  cmd->add_option("--out", f.out, "write the JSON report here");
  cmd->add_option("--config", f.config_file, "JSON config file; flags override its fields");
}

void merge_flag(json& cfg, const CLI::App* cmd, const std::string& flag, const json& value) {
  if (cmd->count(flag) > 0) cfg[flag.substr(2)] = value;
}

std::string resolve_out_path(const std::string& path) {
  if (path.empty() || path.front() == '/') return path;
  const char* dir = std::getenv("TOWLAB_OUT_DIR");
  if (!dir || !*dir) return path;
  return std::string(dir) + "/" + path;
}

int fail_with(tow_status st) {
  std::cerr << "towlab: " << tow_status_name(st) << ": " << tow_last_error() << "\n";
  switch (st) {
    case TOW_ERR_VERDICT:
      return 2;
    case TOW_ERR_INVALID_ARG:
      return 3;
    default:
      return 4;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tug-of-war-with-noise laboratory"};
  app.require_subcommand(1);
  CommonFlags f;

  CLI::App* solve = app.add_subcommand("solve", "solve the dynamic programming principle");
  CLI::App* play = app.add_subcommand("play", "simulate the game under chosen strategies");
  CLI::App* cylinder = app.add_subcommand("cylinder", "cylinder walk escape probabilities");
  CLI::App* verify = app.add_subcommand("verify", "run a named verification suite");
  CLI::App* sweep = app.add_subcommand("sweep", "parameter sweeps with CSV output");
  for (CLI::App* cmd : {solve, play, cylinder, verify, sweep}) add_common(cmd, f);

  solve->add_flag("--emit-field", f.emit_field, "embed the solved field in the report");
  play->add_option("--strategy-i", f.strategy_i, "Player I strategy spec");
  play->add_option("--strategy-ii", f.strategy_ii, "Player II strategy spec");
  play->add_option("--stop", f.stop, "stopping rule: boundary | pointexit:target;center;R");
  play->add_option("--start", f.start, "start point coordinates");
  cylinder->add_option("--r", f.r, "cylinder radius");
  cylinder->add_option("--t", f.t, "start height");
  cylinder->add_flag("--decomposed", f.decomposed, "sample via the three-component decomposition");
  verify->add_option("suite", f.suite, "oscillation | lipschitz | harnack | growth | reach");
  verify->add_option("--r", f.r, "ball radius for the growth/lipschitz suites");
  verify->add_option("--eps-list", f.eps_list, "epsilon sweep for the reach suite")
      ->delimiter(',');
  sweep->add_option("kind", f.sweep_kind, "oscillation | cylinder");
  sweep->add_option("--eps-list", f.eps_list, "epsilon sweep values")->delimiter(',');
  sweep->add_option("--csv", f.csv_out, "write the CSV table here");

  CLI11_PARSE(app, argc, argv);
  CLI::App* cmd = app.get_subcommands().front();

  json cfg = json::object();
  if (!f.config_file.empty()) {
    std::ifstream in(f.config_file);
    if (!in) {
      std::cerr << "towlab: cannot read config file " << f.config_file << "\n";
      return 3;
    }
    try {
      in >> cfg;
    } catch (const json::exception& e) {
      std::cerr << "towlab: bad config file: " << e.what() << "\n";
      return 3;
    }
    if (!cfg.is_object()) {
      std::cerr << "towlab: config file must hold a JSON object\n";
      return 3;
    }
  }
  cfg["command"] = cmd->get_name();

  merge_flag(cfg, cmd, "--p", f.p);
  merge_flag(cfg, cmd, "--n", f.n);
  merge_flag(cfg, cmd, "--eps", f.eps);
  if (cmd->count("--spacing") > 0) cfg["h"] = f.h;
  merge_flag(cfg, cmd, "--domain", f.domain);
  merge_flag(cfg, cmd, "--boundary", f.boundary);
  merge_flag(cfg, cmd, "--trials", f.trials);
  merge_flag(cfg, cmd, "--seed", f.seed);
  merge_flag(cfg, cmd, "--tol", f.tol);
  merge_flag(cfg, cmd, "--threads", f.threads);
  if (cmd == solve) merge_flag(cfg, cmd, "--emit-field", f.emit_field);
  if (cmd == play) {
    if (cmd->count("--strategy-i")) cfg["strategy_i"] = f.strategy_i;
    if (cmd->count("--strategy-ii")) cfg["strategy_ii"] = f.strategy_ii;
    merge_flag(cfg, cmd, "--stop", f.stop);
    merge_flag(cfg, cmd, "--start", f.start);
  }
  if (cmd == cylinder) {
    merge_flag(cfg, cmd, "--r", f.r);
    merge_flag(cfg, cmd, "--t", f.t);
    merge_flag(cfg, cmd, "--decomposed", f.decomposed);
  }
  if (cmd == verify) {
    if (cmd->count("suite")) cfg["suite"] = f.suite;
    merge_flag(cfg, cmd, "--r", f.r);
    if (cmd->count("--eps-list")) cfg["eps_list"] = f.eps_list;
  }
  if (cmd == sweep) {
    if (cmd->count("kind")) cfg["sweep"] = f.sweep_kind;
    if (cmd->count("--eps-list")) cfg["eps_list"] = f.eps_list;
  }

  char* report = nullptr;
  const tow_status st = tow_run_json(cfg.dump().c_str(), &report);
  if (!report) return fail_with(st);

  const std::string report_text(report);
  tow_string_free(report);

  if (!f.out.empty()) {
    const std::string path = resolve_out_path(f.out);
    std::ofstream out_file(path);
    if (!out_file) {
      std::cerr << "towlab: cannot write " << path << "\n";
      return 3;
    }
    out_file << report_text << "\n";
  } else {
    std::cout << report_text << "\n";
  }

  if (cmd == sweep && !f.csv_out.empty()) {
    try {
      const json rep = json::parse(report_text);
      const std::string path = resolve_out_path(f.csv_out);
      std::ofstream csv_file(path);
      if (!csv_file) {
        std::cerr << "towlab: cannot write " << path << "\n";
        return 3;
      }
      csv_file << rep.at("csv").get<std::string>();
    } catch (const json::exception& e) {
      std::cerr << "towlab: report has no CSV payload: " << e.what() << "\n";
      return 4;
    }
  }

  if (st != TOW_OK) return fail_with(st);
  return 0;
}
