#ifndef FDA_REPORT_HPP
#define FDA_REPORT_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "io.hpp"
#include "metrics.hpp"
#include "run_log.hpp"
#include "suite.hpp"

namespace fda::runner {

/// Relative path -> file content. Ordered, so iteration is deterministic.
using FileSet = std::map<std::string, std::string>;

struct TsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

inline std::string format_tsv(const TsvTable& t) {
  std::string out(io::kVersionLine);
  out += "\n";
  for (std::size_t c = 0; c < t.columns.size(); ++c) out += (c ? "\t" : "") + t.columns[c];
  out += "\n";
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out += (c ? "\t" : "") + row[c];
    out += "\n";
  }
  return out;
}

/// Reads a versioned TSV: comment lines, one header line, then rows of the
/// header's width.
inline TsvTable parse_tsv(std::string_view text, std::string_view source = "tsv") {
  TsvTable t;
  std::size_t line_no = 0;
  for (const std::string& raw : io::split(text, '\n')) {
    ++line_no;
    const std::string line = io::trim(raw);
    if (line.empty() || line.starts_with("#")) continue;
    auto fields = io::split(line, '\t');
    for (auto& f : fields) f = io::trim(f);
    if (t.columns.empty()) {
      t.columns = std::move(fields);
    } else {
      if (fields.size() != t.columns.size())
        throw std::runtime_error(std::string(source) + ":" + std::to_string(line_no) + ": expected " +
                                 std::to_string(t.columns.size()) + " fields, got " +
                                 std::to_string(fields.size()));
      t.rows.push_back(std::move(fields));
    }
  }
  if (t.columns.empty()) throw std::runtime_error(std::string(source) + ": missing header");
  return t;
}

inline std::string ecdf_file_stem(std::string_view group, std::size_t dimension) {
  return "ecdf_" + std::string(group) + "_d" + std::to_string(dimension);
}

inline std::string scaling_file_stem(int function_id) { return "scaling_f" + std::to_string(function_id); }

/// One ECDF curve as emitted in the tables.
struct EcdfCurve {
  std::string group;
  std::size_t dimension = 0;
  std::vector<double> budgets;
  std::vector<double> fractions;
};

/// Computes every report table from raw run logs. Logs are grouped by
/// (function, dimension); the function groups and an "all" pseudo-group get
/// one ECDF per dimension.
class ReportBuilder {
 public:
  ReportBuilder(metrics::TargetSet targets = metrics::TargetSet::standard(),
                std::vector<double> budget_grid = metrics::standard_budget_grid())
      : targets_(std::move(targets)), grid_(std::move(budget_grid)) {}

  const metrics::TargetSet& targets() const { return targets_; }
  const std::vector<double>& budget_grid() const { return grid_; }

  std::vector<EcdfCurve> ecdf_curves(std::span<const RunLog> logs) const {
    std::map<std::pair<std::string, std::size_t>, std::vector<metrics::RunRecord>> groups;
    for (const RunLog& log : logs) {
      auto rec = record_from_log(log, targets_);
      const auto g = std::string(bench::group_name(bench::group_of(log.problem.function_id)));
      groups[{g, log.problem.dimension}].push_back(rec);
      groups[{"all", log.problem.dimension}].push_back(std::move(rec));
    }
    std::vector<EcdfCurve> curves;
    for (const auto& [key, records] : groups)
      curves.push_back({key.first, key.second, grid_, metrics::ecdf(records, targets_, grid_)});
    return curves;
  }

  std::vector<metrics::AggregateStats> aggregate_table(std::span<const RunLog> logs) const {
    std::map<std::pair<int, std::size_t>, std::vector<metrics::RunRecord>> cells;
    for (const RunLog& log : logs)
      cells[{log.problem.function_id, log.problem.dimension}].push_back(record_from_log(log, targets_));
    std::vector<metrics::AggregateStats> stats;
    for (const auto& [key, records] : cells)
      for (const double precision : targets_.precisions) stats.push_back(metrics::aggregate(records, precision));
    return stats;
  }

  FileSet build(std::span<const RunLog> logs) const {
    FileSet files;
    if (logs.empty()) return files;

    const auto stats = aggregate_table(logs);
    TsvTable art{{"function", "dimension", "delta_I", "n_s", "fes", "art"}, {}};
    std::map<int, TsvTable> scaling;
    for (const auto& s : stats) {
      art.rows.push_back({std::to_string(s.function_id), std::to_string(s.dimension), io::format_double(s.precision),
                          std::to_string(s.successes), std::to_string(s.evaluations),
                          io::format_double(s.average_runtime)});
      auto& table = scaling[s.function_id];
      if (table.columns.empty()) table.columns = {"function", "delta_I", "dimension", "art", "n_s", "n_trials"};
      table.rows.push_back({std::to_string(s.function_id), io::format_double(s.precision), std::to_string(s.dimension),
                            io::format_double(s.average_runtime), std::to_string(s.successes),
                            std::to_string(s.successes + s.failures)});
    }
    files["tables/art.tsv"] = format_tsv(art);
    for (auto& [fid, table] : scaling) {
      // Rows grouped by target, dimensions ascending inside each target.
      std::stable_sort(table.rows.begin(), table.rows.end(), [&](const auto& a, const auto& b) {
        double pa = 0, pb = 0;
        io::parse_double(a[1], pa);
        io::parse_double(b[1], pb);
        return pa > pb;
      });
      files["tables/" + scaling_file_stem(fid) + ".tsv"] = format_tsv(table);
    }

    for (const EcdfCurve& c : ecdf_curves(logs)) {
      TsvTable t{{"group", "dimension", "evals_per_dim", "fraction"}, {}};
      for (std::size_t i = 0; i < c.budgets.size(); ++i)
        t.rows.push_back({c.group, std::to_string(c.dimension), io::format_double(c.budgets[i]),
                          io::format_double(c.fractions[i])});
      files["tables/" + ecdf_file_stem(c.group, c.dimension) + ".tsv"] = format_tsv(t);
    }
    return files;
  }

 private:
  metrics::TargetSet targets_;
  std::vector<double> grid_;
};

}  // namespace fda::runner

#endif  // FDA_REPORT_HPP
