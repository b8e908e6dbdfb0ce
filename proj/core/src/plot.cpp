/*
 * Copyright (c) 2026, The dmig Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "dmig/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <vector>

#include "dmig/errors.hpp"

namespace dmig::plot {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string num(double v)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string px(double v)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string xml_escape(std::string_view s)
{
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

double metric_value(const AttributeMetrics& a, Metric m)
{
  switch (m) {
    case Metric::mig: return a.mig;
    case Metric::dmig: return a.dmig;
    case Metric::scc: return a.scc;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

std::string label(Metric m)
{
  switch (m) {
    case Metric::mig: return "MIG";
    case Metric::dmig: return "DMIG";
    case Metric::scc: return "SCC";
  }
  return "?";
}

Range padded(double lo, double hi)
{
  if (!(lo < hi)) {
    const double pad = lo == 0.0 ? 1.0 : std::fabs(lo) * 0.1;
    return {lo - pad, hi + pad};
  }
  const double pad = (hi - lo) * 0.05;
  return {lo - pad, hi + pad};
}

// Round step (1, 2 or 5 times a power of ten) giving about `target` ticks.
double tick_step(double span, int target)
{
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (m * mag >= raw) return m * mag;
  }
  return 10.0 * mag;
}

}  // namespace

std::string_view to_string(Metric m) noexcept
{
  switch (m) {
    case Metric::mig: return "mig";
    case Metric::dmig: return "dmig";
    case Metric::scc: return "scc";
  }
  return "unknown";
}

std::optional<Metric> parse_metric(std::string_view s) noexcept
{
  for (Metric m : {Metric::mig, Metric::dmig, Metric::scc}) {
    if (to_string(m) == s) return m;
  }
  return std::nullopt;
}

void PlotSpec::validate() const
{
  if (x == y) throw Error(ErrorCode::invalid_argument, "x and y metrics must differ");
  for (const auto& r : {x_range, y_range}) {
    if (r && !(std::isfinite(r->first) && std::isfinite(r->second) && r->first < r->second)) {
      throw Error(ErrorCode::invalid_argument, "axis range must be finite with lo < hi");
    }
  }
  if (width < 200 || height < 150) throw Error(ErrorCode::invalid_argument, "canvas must be at least 200x150");
}

std::string render_scatter_svg(const io::Series& series, const PlotSpec& spec)
{
  spec.validate();
  if (series.size() < 2) {
    throw Error(ErrorCode::invalid_argument, "a plot needs at least 2 epochs, got " + std::to_string(series.size()));
  }
  io::check_series(series);

  // Attribute order follows the first epoch.
  std::vector<std::string> names;
  for (const auto& a : series.front().report.per_attribute) names.push_back(a.name);

  struct Point {
    double x;
    double y;
    std::size_t series_index;
  };
  std::vector<Point> points;
  std::size_t skipped = 0;
  for (const auto& e : series) {
    for (const auto& a : e.report.per_attribute) {
      auto it = std::find(names.begin(), names.end(), a.name);
      if (it == names.end()) {
        names.push_back(a.name);
        it = names.end() - 1;
      }
      const double xv = metric_value(a, spec.x);
      const double yv = metric_value(a, spec.y);
      if (!std::isfinite(xv) || !std::isfinite(yv)) {
        ++skipped;
        continue;
      }
      points.push_back({xv, yv, static_cast<std::size_t>(it - names.begin())});
    }
  }

  const bool reference_line = spec.y == Metric::dmig;
  Range xr{0.0, 1.0};
  Range yr{0.0, 1.0};
  if (!points.empty()) {
    auto [xmin, xmax] = std::minmax_element(points.begin(), points.end(),
                                            [](const Point& a, const Point& b) { return a.x < b.x; });
    auto [ymin, ymax] = std::minmax_element(points.begin(), points.end(),
                                            [](const Point& a, const Point& b) { return a.y < b.y; });
    double ylo = ymin->y;
    double yhi = ymax->y;
    if (reference_line) {
      ylo = std::min(ylo, 1.0);
      yhi = std::max(yhi, 1.0);
    }
    xr = padded(xmin->x, xmax->x);
    yr = padded(ylo, yhi);
  }
  if (spec.x_range) xr = *spec.x_range;
  if (spec.y_range) yr = *spec.y_range;

  const double w = spec.width;
  const double h = spec.height;
  const double left = 70.0;
  const double right = 150.0;
  const double top = 40.0;
  const double bottom = 55.0;
  const double pw = w - left - right;
  const double ph = h - top - bottom;
  auto map_x = [&](double v) { return left + (v - xr.first) / (xr.second - xr.first) * pw; };
  auto map_y = [&](double v) { return top + ph - (v - yr.first) / (yr.second - yr.first) * ph; };

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(spec.width) + "\" height=\"" +
         std::to_string(spec.height) + "\" viewBox=\"0 0 " + std::to_string(spec.width) + " " +
         std::to_string(spec.height) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"" + px(w) + "\" height=\"" + px(h) + "\" fill=\"white\"/>\n";
  out += "<text x=\"" + px(left + pw / 2) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" +
         label(spec.y) + " against " + label(spec.x) + "</text>\n";

  out += "<defs><clipPath id=\"plot-area\"><rect x=\"" + px(left) + "\" y=\"" + px(top) + "\" width=\"" + px(pw) +
         "\" height=\"" + px(ph) + "\"/></clipPath></defs>\n";

  // Ticks and grid.
  out += "<g stroke=\"#dddddd\" stroke-width=\"1\">\n";
  std::string tick_labels;
  const double xs = tick_step(xr.second - xr.first, 5);
  for (double t = std::ceil(xr.first / xs) * xs; t <= xr.second + xs * 1e-9; t += xs) {
    const double v = std::fabs(t) < xs * 1e-9 ? 0.0 : t;
    out += "<line x1=\"" + px(map_x(v)) + "\" y1=\"" + px(top) + "\" x2=\"" + px(map_x(v)) + "\" y2=\"" +
           px(top + ph) + "\"/>\n";
    tick_labels += "<text x=\"" + px(map_x(v)) + "\" y=\"" + px(top + ph + 16) + "\" text-anchor=\"middle\">" +
                   num(v) + "</text>\n";
  }
  const double ys = tick_step(yr.second - yr.first, 5);
  for (double t = std::ceil(yr.first / ys) * ys; t <= yr.second + ys * 1e-9; t += ys) {
    const double v = std::fabs(t) < ys * 1e-9 ? 0.0 : t;
    out += "<line x1=\"" + px(left) + "\" y1=\"" + px(map_y(v)) + "\" x2=\"" + px(left + pw) + "\" y2=\"" +
           px(map_y(v)) + "\"/>\n";
    tick_labels += "<text x=\"" + px(left - 6) + "\" y=\"" + px(map_y(v) + 4) + "\" text-anchor=\"end\">" + num(v) +
                   "</text>\n";
  }
  out += "</g>\n";
  out += tick_labels;

  out += "<rect x=\"" + px(left) + "\" y=\"" + px(top) + "\" width=\"" + px(pw) + "\" height=\"" + px(ph) +
         "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
  out += "<text x=\"" + px(left + pw / 2) + "\" y=\"" + px(h - 14) + "\" text-anchor=\"middle\">" + label(spec.x) +
         "</text>\n";
  out += "<text x=\"18\" y=\"" + px(top + ph / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " +
         px(top + ph / 2) + ")\">" + label(spec.y) + "</text>\n";

  out += "<g clip-path=\"url(#plot-area)\">\n";
  if (reference_line && yr.first <= 1.0 && 1.0 <= yr.second) {
    out += "<line class=\"reference\" x1=\"" + px(left) + "\" y1=\"" + px(map_y(1.0)) + "\" x2=\"" + px(left + pw) +
           "\" y2=\"" + px(map_y(1.0)) + "\" stroke=\"black\" stroke-width=\"1\" stroke-dasharray=\"2,3\"/>\n";
  }
  for (const auto& p : points) {
    out += "<circle cx=\"" + px(map_x(p.x)) + "\" cy=\"" + px(map_y(p.y)) + "\" r=\"3\" fill=\"" +
           kPalette[p.series_index % std::size(kPalette)] + "\" fill-opacity=\"0.8\"/>\n";
  }
  out += "</g>\n";

  // Legend.
  const double lx = left + pw + 15;
  for (std::size_t s = 0; s < names.size(); ++s) {
    const double ly = top + 10 + 20.0 * static_cast<double>(s);
    out += "<circle cx=\"" + px(lx + 5) + "\" cy=\"" + px(ly) + "\" r=\"4\" fill=\"" +
           kPalette[s % std::size(kPalette)] + "\"/>\n";
    out += "<text x=\"" + px(lx + 15) + "\" y=\"" + px(ly + 4) + "\">" + xml_escape(names[s]) + "</text>\n";
  }
  if (skipped > 0) {
    out += "<text x=\"" + px(lx) + "\" y=\"" + px(top + ph) + "\" font-size=\"10\">" + std::to_string(skipped) +
           " non-finite point(s) omitted</text>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace dmig::plot
