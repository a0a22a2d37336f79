#ifndef FDA_EXPERIMENT_HPP
#define FDA_EXPERIMENT_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include <nlohmann/json.hpp>

#include "driver.hpp"
#include "optimize_instance.hpp"
#include "io.hpp"
#include "plan.hpp"
#include "plot.hpp"
#include "report.hpp"
#include "run_log.hpp"
#include "suite.hpp"

namespace fda::runner {

namespace fs = std::filesystem;

inline constexpr const char* kManifestName = "manifest.json";
inline const char* const kOutputDirs[] = {"logs", "tables", "plots"};

struct RunOutcome {
  metrics::ProblemId problem;
  bool ok = false;
  std::string error;
  RunLog log;
};

struct ExperimentResult {
  std::vector<RunOutcome> runs;
  std::string manifest_hash;
  std::size_t failures = 0;
};

inline std::string stop_name(StopReason r) {
  switch (r) {
    case StopReason::Budget: return "budget";
    case StopReason::DepthExhausted: return "depth-exhausted";
    case StopReason::Continue: break;
  }
  return "running";
}

/// One FDA run on (function, dimension, instance) with budget multiplier * D.
inline RunLog execute_run(int function_id, std::size_t dimension, int instance_id, const ExperimentPlan& plan) {
  bench::ProblemInstance instance = bench::make_instance(function_id, dimension, instance_id);
  FdaConfig config = plan.fda;
  config.bounds = instance.bounds();
  config.budget = plan.budget_for(dimension);
  const OptimizeResult result = optimize(instance, config);
  RunLog log;
  log.problem = {function_id, dimension, instance_id};
  log.f_opt = instance.f_opt();
  log.budget = config.budget;
  log.evaluations_used = result.trace.evaluations_used;
  log.stop = stop_name(result.reason);
  log.best_value = result.trace.best.value;
  log.points = result.trace.points;
  return log;
}

inline std::string log_path(const metrics::ProblemId& p) {
  return "logs/" + bench::problem_key(p.function_id, p.dimension, p.instance_id) + ".csv";
}

/// Every file under logs/, tables/ and plots/, relative to `out`, sorted.
inline std::vector<std::string> list_outputs(const fs::path& out) {
  std::vector<std::string> files;
  for (const char* dir : kOutputDirs) {
    if (!fs::exists(out / dir)) continue;
    for (const auto& entry : fs::recursive_directory_iterator(out / dir)) {
      if (!entry.is_regular_file()) continue;
      const std::string rel = fs::relative(entry.path(), out).generic_string();
      if (!rel.ends_with(".tmp")) files.push_back(rel);
    }
  }
  std::sort(files.begin(), files.end());
  return files;
}

inline nlohmann::json hash_outputs(const fs::path& out) {
  nlohmann::json outputs = nlohmann::json::array();
  for (const std::string& rel : list_outputs(out))
    outputs.push_back({{"path", rel}, {"sha256", io::sha256_hex(io::read_file(out / rel))}});
  return outputs;
}

/// Hash over configuration, run statuses and every output's digest.
inline std::string manifest_hash(const nlohmann::json& manifest) {
  const nlohmann::json body{{"format_version", manifest.at("format_version")},
                            {"config", manifest.at("config")},
                            {"runs", manifest.at("runs")},
                            {"outputs", manifest.at("outputs")}};
  return io::sha256_hex(body.dump());
}

inline std::string write_manifest(const fs::path& out, const nlohmann::json& config, const nlohmann::json& runs) {
  nlohmann::json manifest{{"format_version", io::kFormatVersion},
                          {"config", config},
                          {"runs", runs},
                          {"outputs", hash_outputs(out)}};
  manifest["manifest_hash"] = manifest_hash(manifest);
  io::write_file_atomic(out / kManifestName, manifest.dump(2) + "\n");
  return manifest["manifest_hash"].get<std::string>();
}

inline nlohmann::json read_manifest(const fs::path& out) {
  return nlohmann::json::parse(io::read_file(out / kManifestName));
}

inline void write_files(const fs::path& out, const FileSet& files) {
  for (const auto& [rel, content] : files) io::write_file_atomic(out / rel, content);
}

/// Reads every run log under out/logs, ordered by problem.
inline std::vector<RunLog> load_logs(const fs::path& out) {
  std::vector<RunLog> logs;
  if (!fs::exists(out / "logs")) return logs;
  for (const auto& entry : fs::directory_iterator(out / "logs"))
    if (entry.is_regular_file() && entry.path().extension() == ".csv")
      logs.push_back(parse_run_log(io::read_file(entry.path()), entry.path().string()));
  std::sort(logs.begin(), logs.end(), [](const RunLog& a, const RunLog& b) { return a.problem < b.problem; });
  return logs;
}

/// Recomputes tables from the logs on disk and rewrites them. Returns the
/// tables written.
inline FileSet write_reports(const fs::path& out, const ReportBuilder& builder = {}) {
  const auto logs = load_logs(out);
  FileSet tables = builder.build(logs);
  if (fs::exists(out / "tables")) fs::remove_all(out / "tables");
  write_files(out, tables);
  return tables;
}

inline FileSet load_tables(const fs::path& out) {
  FileSet tables;
  if (!fs::exists(out / "tables")) return tables;
  for (const auto& entry : fs::directory_iterator(out / "tables"))
    if (entry.is_regular_file() && entry.path().extension() == ".tsv")
      tables["tables/" + entry.path().filename().string()] = io::read_file(entry.path());
  return tables;
}

inline FileSet write_plots(const fs::path& out) {
  FileSet plots = emit_plots(load_tables(out));
  if (fs::exists(out / "plots")) fs::remove_all(out / "plots");
  write_files(out, plots);
  return plots;
}

/// Re-hashes outputs after `report` or `plot`, keeping config and runs.
inline std::string refresh_manifest(const fs::path& out) {
  const nlohmann::json old = read_manifest(out);
  return write_manifest(out, old.at("config"), old.at("runs"));
}

/// Runs the whole matrix, then writes tables, plots and the manifest.
/// Runs are independent and may execute on `plan.jobs` threads; every log is
/// written atomically and aggregation starts only after all runs finished.
/// A failing run (e.g. an unimplemented function) is recorded, not fatal.
inline ExperimentResult run_experiment(const ExperimentPlan& plan) {
  plan.validate();
  const fs::path& out = plan.out;
  fs::create_directories(out);
  for (const char* dir : kOutputDirs) fs::remove_all(out / dir);

  std::vector<metrics::ProblemId> matrix;
  for (int f : plan.functions)
    for (int d : plan.dimensions)
      for (int i : plan.instances) matrix.push_back({f, static_cast<std::size_t>(d), i});

  ExperimentResult result;
  result.runs.resize(matrix.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < matrix.size(); k = next++) {
      RunOutcome& outcome = result.runs[k];
      outcome.problem = matrix[k];
      try {
        RunLog log = execute_run(matrix[k].function_id, matrix[k].dimension, matrix[k].instance_id, plan);
        const std::string text = format_run_log(log);
        io::write_file_atomic(out / log_path(matrix[k]), text);
        outcome.log = parse_run_log(text);
        outcome.ok = true;
      } catch (const std::exception& e) {
        outcome.error = e.what();
      }
    }
  };
  const std::size_t n_threads = std::min<std::size_t>(static_cast<std::size_t>(plan.jobs), std::max<std::size_t>(matrix.size(), 1));
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
  }

  std::vector<RunLog> logs;
  nlohmann::json runs = nlohmann::json::array();
  for (const RunOutcome& o : result.runs) {
    nlohmann::json entry{{"problem", bench::problem_key(o.problem.function_id, o.problem.dimension, o.problem.instance_id)}};
    if (o.ok) {
      entry["status"] = "ok";
      entry["log"] = log_path(o.problem);
      entry["budget"] = o.log.budget;
      entry["evaluations_used"] = o.log.evaluations_used;
      entry["stop"] = o.log.stop;
      logs.push_back(o.log);
    } else {
      entry["status"] = "failed";
      entry["error"] = o.error;
      ++result.failures;
    }
    runs.push_back(std::move(entry));
  }

  const FileSet tables = ReportBuilder{}.build(logs);
  write_files(out, tables);
  write_files(out, emit_plots(tables));
  result.manifest_hash = write_manifest(out, plan_to_json(plan), runs);
  return result;
}

struct VerifyReport {
  std::vector<std::string> discrepancies;
  std::size_t files_checked = 0;
  bool ok() const { return discrepancies.empty(); }
};

inline void compare_file_sets(const fs::path& out, const FileSet& expected, std::string_view dir, VerifyReport& report) {
  for (const auto& [rel, content] : expected) {
    ++report.files_checked;
    if (!fs::exists(out / rel)) report.discrepancies.push_back(rel + ": missing");
    else if (io::read_file(out / rel) != content) report.discrepancies.push_back(rel + ": differs from recomputation");
  }
  for (const std::string& rel : list_outputs(out))
    if (rel.starts_with(std::string(dir) + "/") && !expected.contains(rel))
      report.discrepancies.push_back(rel + ": not produced by recomputation");
}

/// Recomputes every table from the raw logs and every plot from the tables,
/// diffs them byte-for-byte against disk, and checks the manifest digests.
inline VerifyReport verify(const fs::path& out) {
  VerifyReport report;
  std::vector<RunLog> logs;
  try {
    logs = load_logs(out);
  } catch (const std::exception& e) {
    report.discrepancies.push_back(std::string("logs: ") + e.what());
    return report;
  }
  report.files_checked += logs.size();

  const FileSet tables = ReportBuilder{}.build(logs);
  compare_file_sets(out, tables, "tables", report);
  if (fs::exists(out / "plots")) compare_file_sets(out, emit_plots(tables), "plots", report);

  if (!fs::exists(out / kManifestName)) {
    report.discrepancies.push_back(std::string(kManifestName) + ": missing");
    return report;
  }
  nlohmann::json manifest;
  try {
    manifest = read_manifest(out);
  } catch (const std::exception& e) {
    report.discrepancies.push_back(std::string(kManifestName) + ": " + e.what());
    return report;
  }
  if (manifest.value("format_version", 0) != io::kFormatVersion)
    report.discrepancies.push_back("manifest: unsupported format_version");
  if (manifest_hash(manifest) != manifest.value("manifest_hash", std::string{}))
    report.discrepancies.push_back("manifest: manifest_hash does not match its contents");
  std::vector<std::string> listed;
  for (const auto& o : manifest.at("outputs")) {
    const std::string rel = o.at("path").get<std::string>();
    listed.push_back(rel);
    if (!fs::exists(out / rel)) report.discrepancies.push_back(rel + ": listed in manifest but missing");
    else if (io::sha256_hex(io::read_file(out / rel)) != o.at("sha256").get<std::string>())
      report.discrepancies.push_back(rel + ": sha256 differs from manifest");
  }
  if (listed != list_outputs(out)) report.discrepancies.push_back("manifest: output list differs from files on disk");

  const auto multiplier = manifest.at("config").at("budget_multiplier").get<std::int64_t>();
  for (const RunLog& log : logs) {
    const std::int64_t budget = multiplier * static_cast<std::int64_t>(log.problem.dimension);
    if (log.budget != budget || log.evaluations_used > budget)
      report.discrepancies.push_back(log_path(log.problem) + ": budget accounting inconsistent with config");
  }
  return report;
}

}  // namespace fda::runner

#endif  // FDA_EXPERIMENT_HPP
