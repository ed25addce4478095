// Copyright 2026 The freqpath Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "freqpath/config.hpp"
#include "freqpath/errors.hpp"
#include "freqpath/interference.hpp"
#include "freqpath/io.hpp"
#include "freqpath/virtual_lab.hpp"
#include "validation.hpp"

namespace freqpath::cli {

namespace fs = std::filesystem;

namespace {

// Thrown by the fit command after the best-effort result has been written.
struct NotConverged {};

fs::path default_out_dir() {
  const char* env = std::getenv(kOutDirEnv);
  return (env != nullptr && *env != '\0') ? fs::path(env) : fs::path(".");
}

fs::path resolve_out(const std::string& given, const char* default_name) {
  return given.empty() ? default_out_dir() / default_name : fs::path(given);
}

fs::path manifest_path_for(const fs::path& out) {
  fs::path p = out;
  p.replace_extension(".manifest.json");
  return p;
}

struct GridFlags {
  double dphi_min = -2.0 * std::numbers::pi;
  double dphi_max = 2.0 * std::numbers::pi;
  int points = 241;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--dphi-min", dphi_min, "Lower end of the phase scan (rad)");
    cmd->add_option("--dphi-max", dphi_max, "Upper end of the phase scan (rad)");
    cmd->add_option("--points", points, "Number of phase samples")->check(CLI::PositiveNumber);
  }

  std::vector<double> grid() const {
    if (points > 1 && !(dphi_max > dphi_min)) {
      throw ConfigError("--dphi-max must exceed --dphi-min");
    }
    return linspace(dphi_min, dphi_max, points);
  }
};

RunManifest make_manifest(const std::string& command, const fs::path& input) {
  RunManifest m;
  m.command = command;
  m.config_hash = sha256_file(input);
  m.timestamp = utc_timestamp();
  return m;
}

int cmd_pattern(const std::string& config_path, const GridFlags& grid,
                const std::string& out_flag, std::ostream& out) {
  const ExperimentConfig cfg = load_config(config_path);
  const Pattern p = pattern_scan(cfg, grid.grid());
  const fs::path csv = resolve_out(out_flag, "pattern.csv");
  write_pattern_csv(csv, p);

  RunManifest m = make_manifest("pattern", config_path);
  m.outputs = {csv.string()};
  m.config_snapshot = serialize_config(cfg);
  write_manifest(manifest_path_for(csv), m);
  if (p.meta.truncation_warning) out << "warning: k-sum truncation tail above tolerance\n";
  out << "wrote " << csv.string() << " (" << p.values.size() << " points)\n";
  return kExitOk;
}

int cmd_scan_distance(const std::string& config_path, double l_min, double l_max, int l_points,
                      const GridFlags& grid, const std::string& out_dir_flag, std::ostream& out) {
  const ExperimentConfig cfg = load_config(config_path);
  if (l_min < 0.0 || (l_points > 1 && !(l_max > l_min))) {
    throw ConfigError("need 0 <= --l-min < --l-max");
  }
  const std::vector<double> lengths = linspace(l_min, l_max, l_points);
  const std::vector<Pattern> patterns = distance_scan(cfg, lengths, grid.grid());

  const fs::path dir = out_dir_flag.empty() ? default_out_dir() : fs::path(out_dir_flag);
  fs::create_directories(dir);
  RunManifest m = make_manifest("scan-distance", config_path);
  m.lengths_km = lengths;
  m.config_snapshot = serialize_config(cfg);
  for (std::size_t i = 0; i < patterns.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "pattern_L%03zu.csv", i);
    const fs::path csv = dir / name;
    write_pattern_csv(csv, patterns[i]);
    m.outputs.push_back(csv.string());
  }
  const fs::path bundle = dir / "heatmap.json";
  write_text_file(bundle, heatmap_json(cfg, lengths, patterns));
  m.outputs.push_back(bundle.string());
  write_manifest(dir / "manifest.json", m);
  out << "wrote " << patterns.size() << " patterns to " << dir.string() << "\n";
  return kExitOk;
}

int cmd_counts(const std::string& config_path, const std::string& plan_path,
               std::optional<std::uint64_t> seed, const GridFlags& grid,
               const std::string& out_flag, std::ostream& out) {
  const ExperimentConfig cfg = load_config(config_path);
  std::string plan_text;
  try {
    plan_text = read_text_file(plan_path);
  } catch (const std::runtime_error& e) {
    throw ConfigError(std::string("counting plan: ") + e.what());
  }
  CountingPlan plan = parse_counting_plan(plan_text);
  if (seed) plan.seed = *seed;

  const Pattern probabilities = pattern_scan(cfg, grid.grid());
  const Pattern counts = simulate_counts(probabilities, plan);
  const fs::path csv = resolve_out(out_flag, "counts.csv");
  write_counts_csv(csv, counts);

  RunManifest m = make_manifest("counts", config_path);
  m.outputs = {csv.string()};
  m.config_snapshot = serialize_config(cfg);
  write_manifest(manifest_path_for(csv), m);
  out << "wrote " << csv.string() << " (seed " << plan.seed << ")\n";
  return kExitOk;
}

int cmd_fit(const std::string& counts_path, const std::string& init_path, int max_iter,
            const std::string& out_flag, std::ostream& out) {
  const Pattern data = read_counts_csv(counts_path);
  FitParams init;
  init.scale = *std::max_element(data.values.begin(), data.values.end());
  init.background = 0.0;
  if (!init_path.empty()) {
    std::string text;
    try {
      text = read_text_file(init_path);
    } catch (const std::runtime_error& e) {
      throw ConfigError(std::string("fit init: ") + e.what());
    }
    init = parse_fit_params(text, init);
  }
  FitOptions options;
  options.max_iterations = max_iter;
  const FitResult fit = fit_bessel_pattern(data, init, {}, options);

  const fs::path json_out = resolve_out(out_flag, "fit.json");
  write_text_file(json_out, fit_result_json(fit));
  RunManifest m = make_manifest("fit", counts_path);
  m.outputs = {json_out.string()};
  write_manifest(manifest_path_for(json_out), m);

  const auto se = fit.standard_errors();
  out << "a = " << format_number(fit.params.a) << " +- " << format_number(se[1]) << "\n"
      << "b = " << format_number(fit.params.b) << " +- " << format_number(se[2]) << "\n"
      << "chi2/dof = " << format_number(fit.chi2_per_dof)
      << (fit.converged ? "" : " (not converged)") << "\n";
  if (!fit.converged) throw NotConverged{};
  return kExitOk;
}

int cmd_validate(const std::string& config_path, const std::string& out_flag, std::ostream& out) {
  const ExperimentConfig cfg = load_config(config_path);
  const std::vector<ValidationCheck> checks = run_validation(cfg);
  bool all = true;
  for (const ValidationCheck& c : checks) {
    all = all && c.passed;
    out << (c.passed ? "[PASS] " : "[FAIL] ") << c.name << "  measured=" << format_number(c.measured)
        << "  bound=" << format_number(c.threshold) << "  " << c.detail << "\n";
  }
  const fs::path report = resolve_out(out_flag, "validation.json");
  write_text_file(report, validation_report_json(checks));
  RunManifest m = make_manifest("validate", config_path);
  m.outputs = {report.string()};
  write_manifest(manifest_path_for(report), m);
  return all ? kExitOk : kExitValidation;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Frequency-path two-photon interferometry simulator", "freqpath"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kEngineVersion);

  std::string config_path;
  std::string out_flag;
  GridFlags grid;

  auto* pattern = app.add_subcommand("pattern", "Coincidence probability versus phase difference");
  pattern->add_option("config", config_path, "Experiment config (JSON)")->required();
  grid.add_to(pattern);
  pattern->add_option("--out", out_flag, "Output CSV");

  double l_min = 0.0;
  double l_max = 60.0;
  int l_points = 61;
  auto* scan = app.add_subcommand("scan-distance", "Patterns versus total propagation distance");
  scan->add_option("config", config_path, "Experiment config (JSON)")->required();
  scan->add_option("--l-min", l_min, "Shortest total distance (km)");
  scan->add_option("--l-max", l_max, "Longest total distance (km)");
  scan->add_option("--l-points", l_points, "Number of distances")->check(CLI::PositiveNumber);
  grid.add_to(scan);
  scan->add_option("--out-dir", out_flag, "Output directory");

  std::string plan_path;
  std::optional<std::uint64_t> seed;
  auto* counts = app.add_subcommand("counts", "Emulate a photon-counting acquisition");
  counts->add_option("config", config_path, "Experiment config (JSON)")->required();
  counts->add_option("--plan", plan_path, "Counting plan (JSON)")->required();
  counts->add_option("--seed", seed, "Override the plan's RNG seed");
  grid.add_to(counts);
  counts->add_option("--out", out_flag, "Output counts CSV");

  std::string counts_path;
  std::string init_path;
  int max_iter = FitOptions{}.max_iterations;
  auto* fit = app.add_subcommand("fit", "Fit the Bessel model to a counts CSV");
  fit->add_option("counts", counts_path, "Counts CSV")->required();
  fit->add_option("--init", init_path, "Initial parameters (JSON)");
  fit->add_option("--max-iter", max_iter, "Iteration cap")->check(CLI::NonNegativeNumber);
  fit->add_option("--out", out_flag, "Output fit JSON");

  auto* validate_cmd = app.add_subcommand("validate", "Run the invariant suite on a config");
  validate_cmd->add_option("config", config_path, "Experiment config (JSON)")->required();
  validate_cmd->add_option("--out", out_flag, "Output report JSON");

  std::vector<std::string> rest(args.begin() + (args.empty() ? 0 : 1), args.end());
  std::reverse(rest.begin(), rest.end());  // CLI11 consumes a reversed vector
  try {
    app.parse(rest);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*pattern) return cmd_pattern(config_path, grid, out_flag, out);
    if (*scan) return cmd_scan_distance(config_path, l_min, l_max, l_points, grid, out_flag, out);
    if (*counts) return cmd_counts(config_path, plan_path, seed, grid, out_flag, out);
    if (*fit) return cmd_fit(counts_path, init_path, max_iter, out_flag, out);
    if (*validate_cmd) return cmd_validate(config_path, out_flag, out);
  } catch (const NotConverged&) {
    err << "fit did not converge; best-effort result written\n";
    return kExitNotConverged;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DataError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const SolverError& e) {
    err << "solver error: " << e.what() << "\n";
    return kExitSolver;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace freqpath::cli
