#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <string>

#include "optomech/cli.hpp"

namespace optomech::cli {

namespace {

constexpr double kW = 720, kH = 440, kLeft = 80, kRight = 170, kTop = 40, kBottom = 50;
constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

double parse(const std::string& s) {
  if (s.empty() || s == "NaN") return std::numeric_limits<double>::quiet_NaN();
  return std::strtod(s.c_str(), nullptr);
}

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '&') out += "&amp;";
    else out += c;
  }
  return out;
}

}  // namespace

std::string svg_plot(const Table& t, std::string_view title) {
  const std::size_t cols = std::min(t.data_columns, t.header.size() - 1);
  double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
  for (const auto& r : t.rows) {
    const double x = parse(r[0]);
    if (!std::isfinite(x)) continue;
    xmin = std::min(xmin, x);
    xmax = std::max(xmax, x);
    for (std::size_t c = 1; c <= cols; ++c) {
      const double y = parse(r[c]);
      if (!std::isfinite(y)) continue;
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  }
  if (!(xmax > xmin)) xmax = xmin + 1.0;
  if (!(ymax > ymin)) {
    ymin = std::isfinite(ymin) ? ymin - 0.5 : 0.0;
    ymax = ymin + 1.0;
  }
  const double pad = 0.05 * (ymax - ymin);
  ymin -= pad;
  ymax += pad;
  const double pw = kW - kLeft - kRight, ph = kH - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - xmin) / (xmax - xmin) * pw; };
  auto py = [&](double y) { return kTop + (ymax - y) / (ymax - ymin) * ph; };

  std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(kW) + "\" height=\"" + fmt(kH) +
                  "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s += "<text x=\"" + fmt(kLeft) + "\" y=\"24\" font-size=\"14\">" + escape(title) + "</text>\n";
  s += "<rect x=\"" + fmt(kLeft) + "\" y=\"" + fmt(kTop) + "\" width=\"" + fmt(pw) + "\" height=\"" + fmt(ph) +
       "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double xv = xmin + (xmax - xmin) * k / 4, yv = ymin + (ymax - ymin) * k / 4;
    s += "<text x=\"" + fmt(px(xv)) + "\" y=\"" + fmt(kH - kBottom + 16) + "\" text-anchor=\"middle\">" + fmt(xv) +
         "</text>\n";
    s += "<text x=\"" + fmt(kLeft - 6) + "\" y=\"" + fmt(py(yv) + 4) + "\" text-anchor=\"end\">" + fmt(yv) +
         "</text>\n";
  }
  s += "<text x=\"" + fmt(kLeft + pw / 2) + "\" y=\"" + fmt(kH - 10) + "\" text-anchor=\"middle\">" +
       escape(t.header[0]) + "</text>\n";

  for (std::size_t c = 1; c <= cols; ++c) {
    const char* color = kColors[(c - 1) % std::size(kColors)];
    std::string pts;
    auto flush = [&] {
      if (!pts.empty())
        s += "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"1.5\" points=\"" + pts +
             "\"/>\n";
      pts.clear();
    };
    for (const auto& r : t.rows) {
      const double x = parse(r[0]), y = parse(r[c]);
      if (!std::isfinite(x) || !std::isfinite(y)) {
        flush();
        continue;
      }
      pts += fmt(px(x)) + "," + fmt(py(y)) + " ";
    }
    flush();
    const double ly = kTop + 16.0 * c;
    s += "<line x1=\"" + fmt(kW - kRight + 12) + "\" y1=\"" + fmt(ly - 4) + "\" x2=\"" + fmt(kW - kRight + 36) +
         "\" y2=\"" + fmt(ly - 4) + "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
    s += "<text x=\"" + fmt(kW - kRight + 42) + "\" y=\"" + fmt(ly) + "\">" + escape(t.header[c]) + "</text>\n";
  }
  s += "</svg>\n";
  return s;
}

}  // namespace optomech::cli
