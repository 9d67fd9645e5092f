#include <algorithm>
#include <fstream>
#include <map>
#include <ostream>
#include <stdexcept>
#include <tuple>

#include <fmt/format.h>

#include "lchp/error.hpp"
#include "lchp/experiments.hpp"

namespace lchp::experiments {

namespace {

constexpr double width = 720.0;
constexpr double height = 440.0;
constexpr double left = 70.0;
constexpr double right = 200.0;
constexpr double top = 30.0;
constexpr double bottom = 55.0;

constexpr const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                   "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

struct Range {
  double lo;
  double hi;
};

Range padded(double lo, double hi) {
  if (hi - lo < 1e-12) return {lo - 0.5, hi + 0.5};
  const double pad = 0.05 * (hi - lo);
  return {lo - pad, hi + pad};
}

}  // namespace

void emit_chart(std::span<const CostRow> rows, std::ostream& out) {
  if (rows.empty()) throw InvalidParameter("chart needs at least one data row");

  using Key = std::tuple<std::string, std::string, std::size_t>;
  std::map<Key, std::vector<std::pair<double, double>>> series;
  double xmin = rows[0].psi, xmax = rows[0].psi;
  double ymin = rows[0].report.total(rows[0].origin_cost), ymax = ymin;
  for (const auto& row : rows) {
    const double y = row.report.total(row.origin_cost);
    series[{row.policy, row.topology, row.h}].emplace_back(row.psi, y);
    xmin = std::min(xmin, row.psi);
    xmax = std::max(xmax, row.psi);
    ymin = std::min(ymin, y);
    ymax = std::max(ymax, y);
  }
  const Range xr = padded(xmin, xmax);
  const Range yr = padded(ymin, ymax);
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;
  auto sx = [&](double x) { return left + (x - xr.lo) / (xr.hi - xr.lo) * plot_w; };
  auto sy = [&](double y) { return top + (yr.hi - y) / (yr.hi - yr.lo) * plot_h; };

  out << fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" "
      "viewBox=\"0 0 {0} {1}\" font-family=\"sans-serif\" font-size=\"12\">\n",
      width, height);
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << fmt::format(
      "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"#444\"/>\n", left,
      top, plot_w, plot_h);

  for (int i = 0; i <= 5; ++i) {
    const double fx = xr.lo + (xr.hi - xr.lo) * i / 5.0;
    const double fy = yr.lo + (yr.hi - yr.lo) * i / 5.0;
    out << fmt::format("<line x1=\"{0:.2f}\" y1=\"{1}\" x2=\"{0:.2f}\" y2=\"{2}\" stroke=\"#ddd\"/>\n",
                       sx(fx), top, top + plot_h);
    out << fmt::format("<text x=\"{:.2f}\" y=\"{}\" text-anchor=\"middle\">{:.2f}</text>\n", sx(fx),
                       top + plot_h + 18, fx);
    out << fmt::format("<line x1=\"{1}\" y1=\"{0:.2f}\" x2=\"{2}\" y2=\"{0:.2f}\" stroke=\"#ddd\"/>\n",
                       sy(fy), left, left + plot_w);
    out << fmt::format("<text x=\"{}\" y=\"{:.2f}\" text-anchor=\"end\">{:.2f}</text>\n", left - 6,
                       sy(fy) + 4, fy);
  }
  out << fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">Zipf skewness psi</text>\n",
                     left + plot_w / 2, height - 12);
  out << fmt::format(
      "<text x=\"16\" y=\"{0}\" text-anchor=\"middle\" transform=\"rotate(-90 16 {0})\">"
      "expected cost (hops)</text>\n",
      top + plot_h / 2);

  std::size_t index = 0;
  for (auto& [key, points] : series) {
    std::sort(points.begin(), points.end());
    const char* color = palette[index % std::size(palette)];
    if (points.size() > 1) {
      out << fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"2\" points=\"", color);
      for (const auto& [x, y] : points) out << fmt::format("{:.2f},{:.2f} ", sx(x), sy(y));
      out << "\"/>\n";
    }
    for (const auto& [x, y] : points)
      out << fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"3\" fill=\"{}\"/>\n", sx(x), sy(y),
                         color);
    const double ly = top + 14 + 18.0 * static_cast<double>(index);
    const double lx = left + plot_w + 12;
    out << fmt::format("<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\" stroke-width=\"2\"/>\n",
                       lx, ly - 4, lx + 20, ly - 4, color);
    out << fmt::format("<text x=\"{}\" y=\"{}\">{} {} h={}</text>\n", lx + 26, ly,
                       std::get<0>(key), std::get<1>(key), std::get<2>(key));
    ++index;
  }
  out << "</svg>\n";
}

void emit_chart_file(std::span<const CostRow> rows, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", path));
  emit_chart(rows, out);
}

}  // namespace lchp::experiments
