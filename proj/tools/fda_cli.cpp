// Command-line front end: run, report, verify, plot, import-ref.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "fda/fda.hpp"

namespace {

using fda::runner::ExperimentPlan;

struct RunFlags {
  std::string config;
  std::string dims, functions, instances, out, order;
  long long budget_multiplier = 0;
  int depth = 0, jobs = 0;
  double alpha = 0, inflation = 0, ratio = 0, omega_min = 0;
  bool seedless = false;
};

int cmd_run(const RunFlags& flags, CLI::App& sub) {
  ExperimentPlan plan;
  if (!flags.config.empty())
    fda::runner::apply_config_text(plan, fda::io::read_file(flags.config), flags.config);
  // Flags override the configuration file.
  auto set = [&](const char* opt, const char* key, const std::string& value) {
    if (sub.count(opt) > 0) fda::runner::apply_setting(plan, key, value);
  };
  set("--dims", "dims", flags.dims);
  set("--functions", "functions", flags.functions);
  set("--instances", "instances", flags.instances);
  set("--out", "out", flags.out);
  set("--order", "order", flags.order);
  if (sub.count("--budget-multiplier")) plan.budget_multiplier = flags.budget_multiplier;
  if (sub.count("--depth")) plan.fda.max_depth = flags.depth;
  if (sub.count("--jobs")) plan.jobs = flags.jobs;
  if (sub.count("--alpha")) plan.fda.geometry.alpha = flags.alpha;
  if (sub.count("--inflation")) plan.fda.geometry.inflation_coefficient = flags.inflation;
  if (sub.count("--ratio")) plan.fda.geometry.child_radius_ratio = flags.ratio;
  if (sub.count("--omega-min")) plan.fda.omega_min = flags.omega_min;
  // No stage of a run draws random numbers; --seedless records that.
  if (flags.seedless) plan.seedless = true;

  const auto result = fda::runner::run_experiment(plan);
  std::size_t ok = 0;
  for (const auto& run : result.runs) {
    if (run.ok) {
      ++ok;
      continue;
    }
    std::cerr << fda::bench::problem_key(run.problem.function_id, run.problem.dimension, run.problem.instance_id)
              << ": " << run.error << "\n";
  }
  std::cout << "runs: " << result.runs.size() << " ok: " << ok << " failed: " << result.failures << "\n"
            << "output: " << plan.out.string() << "\n"
            << "manifest_hash: " << result.manifest_hash << "\n";
  return 0;
}

int cmd_report(const std::string& out) {
  const auto tables = fda::runner::write_reports(out);
  const auto hash = fda::runner::refresh_manifest(out);
  std::cout << "tables: " << tables.size() << "\nmanifest_hash: " << hash << "\n";
  return 0;
}

int cmd_plot(const std::string& out) {
  const auto plots = fda::runner::write_plots(out);
  const auto hash = fda::runner::refresh_manifest(out);
  std::cout << "plots: " << plots.size() << "\nmanifest_hash: " << hash << "\n";
  return 0;
}

int cmd_verify(const std::string& out) {
  const auto report = fda::runner::verify(out);
  for (const auto& d : report.discrepancies) std::cout << "DIFF " << d << "\n";
  std::cout << "checked: " << report.files_checked << " discrepancies: " << report.discrepancies.size() << "\n";
  return report.ok() ? 0 : 1;
}

int cmd_import_ref(const std::string& path, const std::string& against) {
  fda::runner::ReferenceDataset ref;
  try {
    ref = fda::runner::import_reference(path);
  } catch (const fda::runner::ReferenceImportError& e) {
    std::cerr << e.what();
    return 1;
  }
  std::cout << "reference cells: " << ref.size() << "\n";
  if (against.empty()) return 0;
  const std::filesystem::path out = against;
  const auto art = fda::runner::parse_tsv(fda::io::read_file(out / "tables/art.tsv"), "tables/art.tsv");
  const auto joined = fda::runner::join_reference(art, ref);
  fda::io::write_file_atomic(out / "comparison/reference_comparison.tsv", fda::runner::format_tsv(joined));
  std::cout << "joined cells: " << joined.rows.size() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fractal decomposition search and fixed-target benchmarking"};
  app.require_subcommand(1);

  RunFlags rf;
  auto* run = app.add_subcommand("run", "Execute a run matrix and write logs, tables, plots and manifest");
  run->add_option("--config", rf.config, "Key = value configuration file")->check(CLI::ExistingFile);
  run->add_option("--dims", rf.dims, "Dimensions, e.g. 2,3,5 (default 2,3,5,10,20,40)");
  run->add_option("--functions", rf.functions, "Function ids, e.g. 1-3,8 (default: all implemented)");
  run->add_option("--instances", rf.instances, "Instance ids (default 1-15)");
  run->add_option("--budget-multiplier", rf.budget_multiplier, "Budget = multiplier x D (default 1000)");
  run->add_option("--depth", rf.depth, "Maximum decomposition depth k (default 2)");
  run->add_option("--alpha", rf.alpha, "Quality probe offset (default 0.1)");
  run->add_option("--inflation", rf.inflation, "Child inflation coefficient (default 1.75)");
  run->add_option("--ratio", rf.ratio, "Child radius ratio r'/r (default 0.5)");
  run->add_option("--omega-min", rf.omega_min, "Local search step tolerance (default 1e-10)");
  run->add_option("--order", rf.order, "Frontier order: descending|ascending");
  run->add_option("--out", rf.out, "Output directory (default fda-out)");
  run->add_option("--jobs", rf.jobs, "Concurrent runs (default 1)");
  run->add_flag("--seedless", rf.seedless, "Assert a fully deterministic run");

  std::string out_dir = "fda-out";
  auto* report = app.add_subcommand("report", "Recompute tables from raw logs");
  report->add_option("--out", out_dir, "Experiment directory");
  auto* verify = app.add_subcommand("verify", "Recompute everything from raw logs and diff");
  verify->add_option("--out", out_dir, "Experiment directory");
  auto* plot = app.add_subcommand("plot", "Render SVG plots from the tables");
  plot->add_option("--out", out_dir, "Experiment directory");

  std::string ref_path, against;
  auto* import_ref = app.add_subcommand("import-ref", "Validate reference aRT data and join it with native tables");
  import_ref->add_option("path", ref_path, "Reference TSV")->required();
  import_ref->add_option("--against", against, "Experiment directory to join with");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(rf, *run);
    if (*report) return cmd_report(out_dir);
    if (*verify) return cmd_verify(out_dir);
    if (*plot) return cmd_plot(out_dir);
    if (*import_ref) return cmd_import_ref(ref_path, against);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
