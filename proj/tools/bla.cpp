#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "bla/checker.hpp"
#include "bla/sim.hpp"
#include "bla/sweep.hpp"

namespace {

int run_command(const std::string& config_path, const std::string& out_path,
                const std::string& invert, bool quiet) {
  std::ifstream in(config_path);
  if (!in) {
    std::cerr << "error: cannot read config " << config_path << "\n";
    return 2;
  }
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const std::exception& e) {
    std::cerr << "error: config is not valid JSON: " << e.what() << "\n";
    return 2;
  }
  std::string err;
  const auto cfg = bla::RunConfig::from_json(j, &err);
  if (!cfg) {
    std::cerr << "error: invalid config: " << err << "\n";
    return 2;
  }
  if (const auto bad = bla::validate_config(*cfg)) {
    std::cerr << "error: invalid config: " << *bad << "\n";
    return 2;
  }
  if (!invert.empty()) {
    const auto props = bla::checker_properties(cfg->algorithm);
    if (std::find(props.begin(), props.end(), invert) == props.end()) {
      std::cerr << "error: --invert-check names no property of "
                << bla::algo_name(cfg->algorithm) << ": " << invert << "\n";
      return 2;
    }
  }

  const bla::Transcript tr = bla::simulate(*cfg);
  std::vector<bla::Verdict> verdicts = bla::check_all(tr);
  for (bla::Verdict& v : verdicts) {
    if (v.property != invert) continue;
    v.pass = !v.pass;
    v.witness = v.pass ? "" : "verdict inverted by --invert-check";
  }

  const auto report = bla::make_report(tr, verdicts);
  {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "error: cannot write report " << out_path << "\n";
      return 2;
    }
    out << report.dump(2) << "\n";
  }

  bool all_pass = true;
  for (const bla::Verdict& v : verdicts) {
    all_pass = all_pass && v.pass;
    if (!quiet)
      std::cout << (v.pass ? "pass  " : "FAIL  ") << v.property
                << (v.pass ? "" : "  " + v.witness) << "\n";
  }
  if (!quiet)
    std::cout << "report: " << out_path << " (" << tr.sub_rounds
              << " sub-rounds, " << tr.envelopes_total() << " envelopes)\n";
  if (!all_pass) {
    std::cerr << "property failure, witness in " << out_path << "\n";
    return 1;
  }
  return 0;
}

int sweep_command(const std::string& spec_path, const std::string& out_dir,
                  bool fail_fast, bool quiet) {
  std::ifstream in(spec_path);
  if (!in) {
    std::cerr << "error: cannot read sweep spec " << spec_path << "\n";
    return 2;
  }
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const std::exception& e) {
    std::cerr << "error: sweep spec is not valid JSON: " << e.what() << "\n";
    return 2;
  }
  std::string err;
  const auto spec = bla::SweepSpec::from_json(j, &err);
  if (!spec) {
    std::cerr << "error: invalid sweep spec: " << err << "\n";
    return 2;
  }
  const std::vector<bla::RunConfig> points = bla::expand_sweep(*spec);
  if (points.empty()) {
    std::cerr << "error: sweep spec expands to no runs\n";
    return 2;
  }

  const std::filesystem::path dir(out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    std::cerr << "error: cannot create " << out_dir << ": " << ec.message()
              << "\n";
    return 2;
  }

  const bla::SweepResult result = fail_fast
                                      ? bla::run_sweep_serial(points, true)
                                      : bla::run_sweep_parallel(points);
  for (const bla::SweepRow& row : result.rows) {
    std::ofstream out(dir / row.report_name);
    if (!out) {
      std::cerr << "error: cannot write " << (dir / row.report_name).string()
                << "\n";
      return 2;
    }
    out << row.report;
    if (!quiet)
      std::cout << (row.all_pass ? "pass  " : "FAIL  ") << row.report_name
                << "  n=" << row.cfg.n << " "
                << bla::algo_name(row.cfg.algorithm) << " "
                << row.cfg.adversary << " seed=" << row.cfg.seed << "\n";
  }
  {
    std::ofstream csv(dir / "sweep.csv");
    if (!csv) {
      std::cerr << "error: cannot write " << (dir / "sweep.csv").string()
                << "\n";
      return 2;
    }
    csv << bla::sweep_csv(result);
  }

  int failed = 0;
  for (const bla::SweepRow& row : result.rows)
    if (!row.all_pass) ++failed;
  if (!quiet)
    std::cout << result.rows.size() << " of " << points.size()
              << " points run, " << failed << " failed, summary in "
              << (dir / "sweep.csv").string() << "\n";
  if (!result.all_pass) {
    std::cerr << failed << " sweep point(s) failed, reports in " << out_dir
              << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Byzantine lattice agreement: simulate, check, report"};
  app.require_subcommand(1);

  bool quiet = false;
  bool fail_fast = false;
  app.add_flag("--quiet", quiet, "suppress per-run and per-point output");
  app.add_flag("--fail-fast", fail_fast,
               "stop a sweep at the first failing point");

  std::string config_path;
  std::string out_path = "report.json";
  std::string invert;
  CLI::App* run =
      app.add_subcommand("run", "simulate one configuration and check it");
  run->fallthrough();
  run->add_option("--config", config_path, "run configuration JSON file")
      ->required();
  run->add_option("--out", out_path, "report output path")
      ->capture_default_str();
  // Test hook: flip the named verdict after checking.
  run->add_option("--invert-check", invert)->group("");

  std::string spec_path;
  std::string out_dir;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "run a matrix of configurations, one report per point");
  sweep->fallthrough();
  sweep->add_option("--spec", spec_path, "sweep spec JSON file")->required();
  sweep->add_option("--out-dir", out_dir,
                    "directory for per-point reports and sweep.csv")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (run->parsed()) return run_command(config_path, out_path, invert, quiet);
  return sweep_command(spec_path, out_dir, fail_fast, quiet);
}
