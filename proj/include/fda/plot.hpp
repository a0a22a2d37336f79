#ifndef FDA_PLOT_HPP
#define FDA_PLOT_HPP

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "io.hpp"
#include "report.hpp"

namespace fda::runner {

namespace svg {

inline constexpr double kWidth = 640;
inline constexpr double kHeight = 420;
inline constexpr double kLeft = 70;
inline constexpr double kRight = 20;
inline constexpr double kTop = 40;
inline constexpr double kBottom = 50;

inline const char* const kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
                                       "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#000000"};

struct Series {
  std::string label;
  std::vector<std::pair<double, double>> points;  // already in axis units
  bool markers = false;
};

/// Minimal line chart. Axis ranges are in plotted units (log10 for log axes).
class Chart {
 public:
  Chart(std::string title, std::string xlabel, std::string ylabel, double x0, double x1, double y0, double y1)
      : title_(std::move(title)), xlabel_(std::move(xlabel)), ylabel_(std::move(ylabel)),
        x0_(x0), x1_(x1 > x0 ? x1 : x0 + 1), y0_(y0), y1_(y1 > y0 ? y1 : y0 + 1) {}

  void add(Series s) { series_.push_back(std::move(s)); }
  void set_x_ticks(std::vector<std::pair<double, std::string>> t) { xticks_ = std::move(t); }
  void set_y_ticks(std::vector<std::pair<double, std::string>> t) { yticks_ = std::move(t); }

  std::string render() const {
    std::string o;
    o += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" + num(kHeight) +
         "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    o += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    o += "<text x=\"" + num(kWidth / 2) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" + title_ +
         "</text>\n";
    o += "<rect x=\"" + num(kLeft) + "\" y=\"" + num(kTop) + "\" width=\"" + num(plot_w()) + "\" height=\"" +
         num(plot_h()) + "\" fill=\"none\" stroke=\"#444\"/>\n";
    for (const auto& [v, label] : xticks_) {
      const double x = px(v);
      o += "<line x1=\"" + num(x) + "\" y1=\"" + num(kTop) + "\" x2=\"" + num(x) + "\" y2=\"" +
           num(kTop + plot_h()) + "\" stroke=\"#ddd\"/>\n";
      o += "<text x=\"" + num(x) + "\" y=\"" + num(kTop + plot_h() + 15) + "\" text-anchor=\"middle\">" + label +
           "</text>\n";
    }
    for (const auto& [v, label] : yticks_) {
      const double y = py(v);
      o += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(y) + "\" x2=\"" + num(kLeft + plot_w()) + "\" y2=\"" +
           num(y) + "\" stroke=\"#ddd\"/>\n";
      o += "<text x=\"" + num(kLeft - 6) + "\" y=\"" + num(y + 4) + "\" text-anchor=\"end\">" + label + "</text>\n";
    }
    o += "<text x=\"" + num(kLeft + plot_w() / 2) + "\" y=\"" + num(kHeight - 10) + "\" text-anchor=\"middle\">" +
         xlabel_ + "</text>\n";
    o += "<text transform=\"translate(16," + num(kTop + plot_h() / 2) + ") rotate(-90)\" text-anchor=\"middle\">" +
         ylabel_ + "</text>\n";
    std::size_t k = 0;
    for (const Series& s : series_) {
      const char* color = kPalette[k % std::size(kPalette)];
      std::string pts;
      for (const auto& [x, y] : s.points) pts += num(px(x)) + "," + num(py(y)) + " ";
      if (!pts.empty()) pts.pop_back();
      o += "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"1.5\" points=\"" + pts +
           "\"><title>" + s.label + "</title></polyline>\n";
      if (s.markers)
        for (const auto& [x, y] : s.points)
          o += "<circle cx=\"" + num(px(x)) + "\" cy=\"" + num(py(y)) + "\" r=\"2.5\" fill=\"" + color + "\"/>\n";
      o += "<text x=\"" + num(kLeft + plot_w() - 4) + "\" y=\"" + num(kTop + 14 + 13.0 * static_cast<double>(k)) +
           "\" text-anchor=\"end\" fill=\"" + color + "\">" + s.label + "</text>\n";
      ++k;
    }
    o += "</svg>\n";
    return o;
  }

 private:
  static std::string num(double v) { return io::format_fixed(v, 2); }
  static double plot_w() { return kWidth - kLeft - kRight; }
  static double plot_h() { return kHeight - kTop - kBottom; }
  double px(double x) const { return kLeft + (x - x0_) / (x1_ - x0_) * plot_w(); }
  double py(double y) const { return kTop + plot_h() - (y - y0_) / (y1_ - y0_) * plot_h(); }

  std::string title_, xlabel_, ylabel_;
  double x0_, x1_, y0_, y1_;
  std::vector<Series> series_;
  std::vector<std::pair<double, std::string>> xticks_, yticks_;
};

inline std::string power_label(int e) { return "1e" + std::to_string(e); }

}  // namespace svg

namespace detail {

inline double cell(const std::vector<std::string>& row, std::size_t i) {
  double v = 0.0;
  if (!io::parse_double(row.at(i), v)) throw std::runtime_error("plot: non-numeric table cell '" + row.at(i) + "'");
  return v;
}

inline std::size_t column(const TsvTable& t, std::string_view name) {
  for (std::size_t i = 0; i < t.columns.size(); ++i)
    if (t.columns[i] == name) return i;
  throw std::runtime_error("plot: table lacks column '" + std::string(name) + "'");
}

}  // namespace detail

/// ECDF chart: log10(evals/D) against the solved fraction.
inline std::string render_ecdf_svg(const TsvTable& t) {
  const std::size_t cg = detail::column(t, "group"), cd = detail::column(t, "dimension"),
                    cb = detail::column(t, "evals_per_dim"), cf = detail::column(t, "fraction");
  svg::Series s;
  std::string title = "ECDF";
  double x0 = 0, x1 = 3;
  if (!t.rows.empty()) {
    title = "ECDF " + t.rows.front()[cg] + ", D=" + t.rows.front()[cd];
    x0 = std::floor(std::log10(detail::cell(t.rows.front(), cb)));
    x1 = std::ceil(std::log10(detail::cell(t.rows.back(), cb)));
  }
  s.label = "fraction of (instance, target) pairs";
  for (const auto& row : t.rows) s.points.emplace_back(std::log10(detail::cell(row, cb)), detail::cell(row, cf));
  svg::Chart chart(title, "evaluations / dimension", "fraction solved", x0, x1, 0.0, 1.0);
  std::vector<std::pair<double, std::string>> xt, yt;
  for (int e = static_cast<int>(x0); e <= static_cast<int>(x1); ++e) xt.emplace_back(e, svg::power_label(e));
  for (int i = 0; i <= 5; ++i) yt.emplace_back(i / 5.0, io::format_fixed(i / 5.0, 1));
  chart.set_x_ticks(std::move(xt));
  chart.set_y_ticks(std::move(yt));
  chart.add(std::move(s));
  return chart.render();
}

/// aRT-versus-dimension chart on log-log axes, one polyline per decade target
/// (1e2, 1e1, ..., 1e-8). Unreached targets are omitted.
inline std::string render_scaling_svg(const TsvTable& t) {
  const std::size_t cfn = detail::column(t, "function"), cp = detail::column(t, "delta_I"),
                    cd = detail::column(t, "dimension"), ca = detail::column(t, "art");
  std::map<int, svg::Series, std::greater<>> by_target;
  double ymax = 1.0, xmin = 1e300, xmax = -1e300;
  for (const auto& row : t.rows) {
    const double lp = std::log10(detail::cell(row, cp));
    const double rounded = std::round(lp);
    if (std::abs(lp - rounded) > 1e-9) continue;
    const double dim = std::log10(detail::cell(row, cd));
    xmin = std::min(xmin, dim);
    xmax = std::max(xmax, dim);
    const double a = detail::cell(row, ca);
    auto& series = by_target[static_cast<int>(rounded)];
    series.label = "target " + svg::power_label(static_cast<int>(rounded));
    series.markers = true;
    if (!std::isfinite(a)) continue;
    series.points.emplace_back(dim, std::log10(a));
    ymax = std::max(ymax, std::log10(a));
  }
  if (xmin > xmax) xmin = 0, xmax = 1;
  const std::string title = t.rows.empty() ? "aRT scaling" : "aRT scaling f" + t.rows.front()[cfn];
  svg::Chart chart(title, "dimension", "aRT (evaluations)", xmin - 0.05, xmax + 0.05, 0.0, std::ceil(ymax));
  std::vector<std::pair<double, std::string>> xt, yt;
  for (const int d : {1, 2, 3, 5, 10, 20, 40, 100})
    if (std::log10(d) >= xmin - 0.05 && std::log10(d) <= xmax + 0.05) xt.emplace_back(std::log10(d), std::to_string(d));
  for (int e = 0; e <= static_cast<int>(std::ceil(ymax)); ++e) yt.emplace_back(e, svg::power_label(e));
  chart.set_x_ticks(std::move(xt));
  chart.set_y_ticks(std::move(yt));
  for (auto& [_, s] : by_target) chart.add(std::move(s));
  return chart.render();
}

/// Renders every ECDF and scaling table found in `tables` ("tables/*.tsv")
/// into "plots/*.svg". A pure view of the tables.
inline FileSet emit_plots(const FileSet& tables) {
  FileSet out;
  for (const auto& [path, content] : tables) {
    const std::string name = std::filesystem::path(path).stem().string();
    if (name.starts_with("ecdf_")) out["plots/" + name + ".svg"] = render_ecdf_svg(parse_tsv(content, path));
    else if (name.starts_with("scaling_")) out["plots/" + name + ".svg"] = render_scaling_svg(parse_tsv(content, path));
  }
  return out;
}

}  // namespace fda::runner

#endif  // FDA_PLOT_HPP
