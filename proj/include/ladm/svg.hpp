#pragma once

// Self-contained SVG line chart of a comparison report: one polyline per
// method column, axes, tick labels, legend and a title carrying beta.

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>

#include "ladm/bench.hpp"
#include "ladm/errors.hpp"

namespace ladm::svg {

namespace detail {

inline std::string fixed(double v, int digits = 2) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, digits);
  return std::string(buf, res.ptr);
}

inline std::string escape(std::string_view s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

inline std::string_view colour_for(std::string_view method) {
  if (method == "ladm") return "#d62728";
  if (method == "hbm") return "#1f77b4";
  if (method == "dtm") return "#2ca02c";
  if (method == "hpm") return "#9467bd";
  if (method == "oracle") return "#000000";
  return "#7f7f7f";
}

}  // namespace detail

[[nodiscard]] inline std::string render(const bench::comparison_report& rep) {
  using detail::fixed;
  if (rep.grid.size() < 2) throw precondition_error("plot needs at least 2 grid points");

  constexpr double width = 800, height = 480;
  constexpr double left = 70, right = 150, top = 50, bottom = 50;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;

  const double t0 = rep.grid.front();
  const double t1 = rep.grid.back();
  double lo = 0.0, hi = 0.0;
  for (const auto& c : rep.columns) {
    for (double v : c.values) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  if (hi - lo <= 0.0) {
    lo -= 1.0;
    hi += 1.0;
  }
  const double pad = 0.05 * (hi - lo);
  lo -= pad;
  hi += pad;
  const double span_t = t1 > t0 ? t1 - t0 : 1.0;

  auto px = [&](double t) { return left + (t - t0) / span_t * plot_w; };
  auto py = [&](double x) { return top + (hi - x) / (hi - lo) * plot_h; };

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fixed(width, 0) + "\" height=\"" +
         fixed(height, 0) + "\" viewBox=\"0 0 " + fixed(width, 0) + " " + fixed(height, 0) + "\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"" + fixed(width, 0) + "\" height=\"" + fixed(height, 0) +
         "\" fill=\"white\"/>\n";
  out += "<text x=\"" + fixed(left + plot_w / 2) + "\" y=\"30\" text-anchor=\"middle\" " +
         "font-family=\"sans-serif\" font-size=\"16\">Relativistic oscillator, beta = " +
         detail::escape(csv::format_number(rep.beta)) + "</text>\n";

  // Axes.
  out += "<g stroke=\"#444\" stroke-width=\"1\">\n";
  out += "<line x1=\"" + fixed(left) + "\" y1=\"" + fixed(top + plot_h) + "\" x2=\"" +
         fixed(left + plot_w) + "\" y2=\"" + fixed(top + plot_h) + "\"/>\n";
  out += "<line x1=\"" + fixed(left) + "\" y1=\"" + fixed(top) + "\" x2=\"" + fixed(left) +
         "\" y2=\"" + fixed(top + plot_h) + "\"/>\n";
  if (lo < 0.0 && hi > 0.0) {
    out += "<line x1=\"" + fixed(left) + "\" y1=\"" + fixed(py(0.0)) + "\" x2=\"" +
           fixed(left + plot_w) + "\" y2=\"" + fixed(py(0.0)) + "\" stroke-dasharray=\"4 4\"/>\n";
  }
  out += "</g>\n";

  out += "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#222\">\n";
  constexpr int ticks = 5;
  for (int i = 0; i <= ticks; ++i) {
    const double t = t0 + span_t * i / ticks;
    const double x = lo + (hi - lo) * i / ticks;
    out += "<text x=\"" + fixed(px(t)) + "\" y=\"" + fixed(top + plot_h + 18) +
           "\" text-anchor=\"middle\">" + fixed(t, 2) + "</text>\n";
    out += "<text x=\"" + fixed(left - 6) + "\" y=\"" + fixed(py(x) + 4) +
           "\" text-anchor=\"end\">" + fixed(x, 4) + "</text>\n";
  }
  out += "<text x=\"" + fixed(left + plot_w / 2) + "\" y=\"" + fixed(height - 10) +
         "\" text-anchor=\"middle\">t</text>\n";
  out += "<text x=\"18\" y=\"" + fixed(top + plot_h / 2) + "\" text-anchor=\"middle\">x</text>\n";
  out += "</g>\n";

  for (const auto& c : rep.columns) {
    out += "<polyline fill=\"none\" stroke=\"" + std::string(detail::colour_for(c.method)) +
           "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < rep.grid.size(); ++i) {
      if (i) out += ' ';
      out += fixed(px(rep.grid[i])) + "," + fixed(py(c.values[i]));
    }
    out += "\"/>\n";
  }

  out += "<g font-family=\"sans-serif\" font-size=\"12\">\n";
  double ly = top + 10;
  for (const auto& c : rep.columns) {
    const double lx = left + plot_w + 15;
    out += "<line x1=\"" + fixed(lx) + "\" y1=\"" + fixed(ly) + "\" x2=\"" + fixed(lx + 25) +
           "\" y2=\"" + fixed(ly) + "\" stroke=\"" + std::string(detail::colour_for(c.method)) +
           "\" stroke-width=\"2\"/>\n";
    out += "<text x=\"" + fixed(lx + 32) + "\" y=\"" + fixed(ly + 4) + "\">" +
           detail::escape(c.method) + "</text>\n";
    ly += 20;
  }
  out += "</g>\n";
  out += "</svg>\n";
  return out;
}

}  // namespace ladm::svg
