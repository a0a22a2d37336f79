#ifndef FDA_REFERENCE_HPP
#define FDA_REFERENCE_HPP

#include <cmath>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "io.hpp"
#include "report.hpp"

namespace fda::runner {

/// (function, dimension, precision) identity of an aRT cell. Precisions are
/// compared on a 1e-6 grid in log10 so "1e-08" and 10^-8 computed by pow
/// refer to the same cell.
struct CellKey {
  int function_id = 0;
  std::size_t dimension = 0;
  long long log_precision_micro = 0;

  static CellKey make(int f, std::size_t d, double precision) {
    return {f, d, std::llround(std::log10(precision) * 1e6)};
  }
  auto operator<=>(const CellKey&) const = default;
};

struct ReferenceCell {
  double precision = 0.0;
  double art = 0.0;
  std::size_t line = 0;
};

using ReferenceDataset = std::map<CellKey, ReferenceCell>;

class ReferenceImportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses externally published aRT values. Format (tab separated):
///
///   # format-version=1          (optional)
///   function  dimension  delta_I  aRT
///   1         2          1e-08    312.5
///
/// aRT may be "inf". Every problem is collected and reported together;
/// nothing is returned unless the whole file is valid.
inline ReferenceDataset parse_reference(std::string_view text, std::string_view source = "reference") {
  ReferenceDataset data;
  std::vector<std::string> problems;
  bool header_seen = false;
  std::size_t line_no = 0;
  for (const std::string& raw : io::split(text, '\n')) {
    ++line_no;
    const std::string line = io::trim(raw);
    if (line.empty()) continue;
    const std::string where = std::string(source) + ":" + std::to_string(line_no) + ": ";
    if (line.starts_with("#")) {
      if (line.find("format-version") != std::string::npos && line.find("format-version=1") == std::string::npos)
        problems.push_back(where + "unsupported format-version");
      continue;
    }
    auto fields = io::split(line, '\t');
    for (auto& f : fields) f = io::trim(f);
    if (!header_seen) {
      header_seen = true;
      if (fields.size() == 4 && fields[0] == "function") continue;
      problems.push_back(where + "expected header 'function<TAB>dimension<TAB>delta_I<TAB>aRT'");
      continue;
    }
    if (fields.size() != 4) {
      problems.push_back(where + "expected 4 fields, got " + std::to_string(fields.size()));
      continue;
    }
    long long f = 0, d = 0;
    double precision = 0.0, art = 0.0;
    if (!io::parse_int(fields[0], f) || f < 1 || f > 24) {
      problems.push_back(where + "bad function id '" + fields[0] + "'");
      continue;
    }
    if (!io::parse_int(fields[1], d) || d < 1) {
      problems.push_back(where + "bad dimension '" + fields[1] + "'");
      continue;
    }
    if (!io::parse_double(fields[2], precision) || !(precision > 0.0) || std::isinf(precision)) {
      problems.push_back(where + "bad delta_I '" + fields[2] + "'");
      continue;
    }
    if (!io::parse_double(fields[3], art) || art < 0.0) {
      problems.push_back(where + "non-numeric aRT '" + fields[3] + "'");
      continue;
    }
    const CellKey key = CellKey::make(static_cast<int>(f), static_cast<std::size_t>(d), precision);
    if (const auto it = data.find(key); it != data.end()) {
      problems.push_back(where + "duplicate cell (also on line " + std::to_string(it->second.line) + ")");
      continue;
    }
    data.emplace(key, ReferenceCell{precision, art, line_no});
  }
  if (!header_seen) problems.push_back(std::string(source) + ": empty file");
  if (!problems.empty()) {
    std::string msg;
    for (const auto& p : problems) msg += p + "\n";
    throw ReferenceImportError(msg);
  }
  return data;
}

inline ReferenceDataset import_reference(const std::filesystem::path& path) {
  return parse_reference(io::read_file(path), path.string());
}

/// Side-by-side table of native and reference aRT for cells present in both.
inline TsvTable join_reference(const TsvTable& art_table, const ReferenceDataset& ref) {
  const auto col = [&](std::string_view name) {
    for (std::size_t i = 0; i < art_table.columns.size(); ++i)
      if (art_table.columns[i] == name) return i;
    throw std::runtime_error("aRT table lacks column '" + std::string(name) + "'");
  };
  const std::size_t cf = col("function"), cd = col("dimension"), cp = col("delta_I"), ca = col("art");
  TsvTable out{{"function", "dimension", "delta_I", "art", "art_reference", "ratio"}, {}};
  for (const auto& row : art_table.rows) {
    long long f = 0, d = 0;
    double precision = 0.0, art = 0.0;
    if (!io::parse_int(row[cf], f) || !io::parse_int(row[cd], d) || !io::parse_double(row[cp], precision) ||
        !io::parse_double(row[ca], art))
      throw std::runtime_error("aRT table has a malformed row");
    const auto it = ref.find(CellKey::make(static_cast<int>(f), static_cast<std::size_t>(d), precision));
    if (it == ref.end()) continue;
    const double ratio = art / it->second.art;
    out.rows.push_back({row[cf], row[cd], row[cp], row[ca], io::format_double(it->second.art),
                        io::format_double(ratio)});
  }
  return out;
}

}  // namespace fda::runner

#endif  // FDA_REFERENCE_HPP
