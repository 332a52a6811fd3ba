#include "circuitforge/dataio/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "circuitforge/dataio/csv.hpp"
#include "circuitforge/error.hpp"

namespace circuitforge::dataio {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  std::string s = buf;
  if (s == "-0.00") s = "0.00";
  return s;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string tick_label(double v) {
  char buf[64];
  if (std::fabs(v) >= 1000 || std::fabs(v - std::round(v)) < 1e-9)
    std::snprintf(buf, sizeof buf, "%.0f", v);
  else
    std::snprintf(buf, sizeof buf, "%.2f", v);
  std::string s = buf;
  if (s == "-0") s = "0";
  return s;
}

struct Frame {
  double left = 70, right = 20, top = 40, bottom = 60;
  double w = 0, h = 0;
  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;

  double px(double x) const { return left + (x - x0) / (x1 - x0) * (w - left - right); }
  double py(double y) const { return h - bottom - (y - y0) / (y1 - y0) * (h - top - bottom); }
};

void widen(double& lo, double& hi) {
  if (hi - lo < 1e-12) {
    lo -= 0.5;
    hi += 0.5;
  }
}

void axes(std::string& out, const Frame& f, const ChartSpec& spec, bool numeric_x) {
  out += "<line class=\"axis\" x1=\"" + num(f.left) + "\" y1=\"" + num(f.h - f.bottom) + "\" x2=\"" +
         num(f.w - f.right) + "\" y2=\"" + num(f.h - f.bottom) + "\" stroke=\"#000\"/>\n";
  out += "<line class=\"axis\" x1=\"" + num(f.left) + "\" y1=\"" + num(f.top) + "\" x2=\"" + num(f.left) +
         "\" y2=\"" + num(f.h - f.bottom) + "\" stroke=\"#000\"/>\n";
  constexpr int kTicks = 5;
  for (int i = 0; i <= kTicks; ++i) {
    const double v = f.y0 + (f.y1 - f.y0) * i / kTicks;
    const double y = f.py(v);
    out += "<line class=\"tick\" x1=\"" + num(f.left - 5) + "\" y1=\"" + num(y) + "\" x2=\"" + num(f.left) +
           "\" y2=\"" + num(y) + "\" stroke=\"#000\"/>\n";
    out += "<text class=\"tick-label\" x=\"" + num(f.left - 8) + "\" y=\"" + num(y + 4) +
           "\" text-anchor=\"end\" font-size=\"11\">" + tick_label(v) + "</text>\n";
  }
  if (numeric_x) {
    for (int i = 0; i <= kTicks; ++i) {
      const double v = f.x0 + (f.x1 - f.x0) * i / kTicks;
      const double x = f.px(v);
      out += "<line class=\"tick\" x1=\"" + num(x) + "\" y1=\"" + num(f.h - f.bottom) + "\" x2=\"" + num(x) +
             "\" y2=\"" + num(f.h - f.bottom + 5) + "\" stroke=\"#000\"/>\n";
      out += "<text class=\"tick-label\" x=\"" + num(x) + "\" y=\"" + num(f.h - f.bottom + 18) +
             "\" text-anchor=\"middle\" font-size=\"11\">" + tick_label(v) + "</text>\n";
    }
  }
  out += "<text class=\"title\" x=\"" + num(f.w / 2) + "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" +
         escape(spec.title) + "</text>\n";
  out += "<text class=\"axis-label\" x=\"" + num(f.w / 2) + "\" y=\"" + num(f.h - 12) +
         "\" text-anchor=\"middle\" font-size=\"12\">" + escape(spec.x_label) + "</text>\n";
  out += "<text class=\"axis-label\" x=\"16\" y=\"" + num(f.h / 2) + "\" text-anchor=\"middle\" font-size=\"12\"" +
         " transform=\"rotate(-90 16 " + num(f.h / 2) + ")\">" + escape(spec.y_label) + "</text>\n";
}

}  // namespace

std::vector<int> histogram_counts(const std::vector<double>& values, int bins, double lo, double hi) {
  if (bins <= 0) throw Error(Errc::InvalidArgument, "histogram needs at least one bin");
  std::vector<int> counts(static_cast<std::size_t>(bins), 0);
  const double width = (hi - lo) / bins;
  for (double v : values) {
    int b = width > 0 ? static_cast<int>(std::floor((v - lo) / width)) : 0;
    b = std::clamp(b, 0, bins - 1);
    ++counts[static_cast<std::size_t>(b)];
  }
  return counts;
}

std::string render_chart(const ChartSpec& spec) {
  if (spec.series.empty()) throw Error(Errc::EmptySeries, "chart '" + spec.title + "' has no series");
  for (const auto& s : spec.series) {
    if (s.y.empty()) throw Error(Errc::EmptySeries, "series '" + s.name + "' is empty");
    if (spec.kind != ChartKind::Histogram && s.x.size() != s.y.size())
      throw Error(Errc::InvalidArgument, "series '" + s.name + "' has mismatched x/y lengths");
  }

  Frame f;
  f.w = spec.width;
  f.h = spec.height;
  std::string body;

  if (spec.kind == ChartKind::Histogram) {
    const auto& vals = spec.series[0].y;
    std::vector<double> heights;
    std::vector<std::string> labels;
    if (!spec.categories.empty()) {
      if (spec.categories.size() != vals.size())
        throw Error(Errc::InvalidArgument, "category count does not match pre-binned values");
      heights = vals;
      labels = spec.categories;
    } else {
      const double lo = *std::min_element(vals.begin(), vals.end());
      const double hi = *std::max_element(vals.begin(), vals.end());
      const auto counts = histogram_counts(vals, spec.bins, lo, hi);
      const double width = (hi - lo) / spec.bins;
      for (int b = 0; b < spec.bins; ++b) {
        heights.push_back(counts[static_cast<std::size_t>(b)]);
        labels.push_back(tick_label(lo + width * b));
      }
    }
    f.x0 = 0;
    f.x1 = static_cast<double>(heights.size());
    f.y0 = 0;
    f.y1 = std::max(1.0, *std::max_element(heights.begin(), heights.end()));
    axes(body, f, spec, false);
    for (std::size_t i = 0; i < heights.size(); ++i) {
      const double xl = f.px(static_cast<double>(i)) + 1;
      const double xr = f.px(static_cast<double>(i + 1)) - 1;
      const double yt = f.py(heights[i]);
      body += "<rect class=\"bar\" x=\"" + num(xl) + "\" y=\"" + num(yt) + "\" width=\"" + num(xr - xl) +
              "\" height=\"" + num(f.py(0) - yt) + "\" fill=\"" + kPalette[0] + "\"/>\n";
      body += "<text class=\"tick-label\" x=\"" + num((xl + xr) / 2) + "\" y=\"" + num(f.h - f.bottom + 18) +
              "\" text-anchor=\"middle\" font-size=\"11\">" + escape(labels[i]) + "</text>\n";
    }
  } else {
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& s : spec.series)
      for (std::size_t i = 0; i < s.y.size(); ++i) {
        xmin = std::min(xmin, s.x[i]);
        xmax = std::max(xmax, s.x[i]);
        ymin = std::min(ymin, s.y[i]);
        ymax = std::max(ymax, s.y[i]);
      }
    widen(xmin, xmax);
    widen(ymin, ymax);
    f.x0 = xmin;
    f.x1 = xmax;
    f.y0 = ymin;
    f.y1 = ymax;
    axes(body, f, spec, true);
    for (std::size_t k = 0; k < spec.series.size(); ++k) {
      const auto& s = spec.series[k];
      const char* color = kPalette[k % std::size(kPalette)];
      if (spec.kind == ChartKind::Line && s.y.size() > 1) {
        body += "<polyline class=\"series\" fill=\"none\" stroke=\"" + std::string(color) + "\" points=\"";
        for (std::size_t i = 0; i < s.y.size(); ++i) body += (i ? " " : "") + num(f.px(s.x[i])) + "," + num(f.py(s.y[i]));
        body += "\"/>\n";
      }
      for (std::size_t i = 0; i < s.y.size(); ++i)
        body += "<circle class=\"marker\" cx=\"" + num(f.px(s.x[i])) + "\" cy=\"" + num(f.py(s.y[i])) + "\" r=\"" +
                (spec.kind == ChartKind::Line ? "2.50" : "3.50") + "\" fill=\"" + color + "\"/>\n";
    }
    if (spec.series.size() > 1)
      for (std::size_t k = 0; k < spec.series.size(); ++k) {
        const double y = f.top + 14.0 * static_cast<double>(k);
        body += "<text class=\"legend\" x=\"" + num(f.w - f.right - 4) + "\" y=\"" + num(y) +
                "\" text-anchor=\"end\" font-size=\"11\" fill=\"" + kPalette[k % std::size(kPalette)] + "\">" +
                escape(spec.series[k].name) + "</text>\n";
      }
  }

  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(spec.width) + "\" height=\"" +
         std::to_string(spec.height) + "\" viewBox=\"0 0 " + std::to_string(spec.width) + " " +
         std::to_string(spec.height) + "\">\n";
  out += "<rect class=\"background\" x=\"0\" y=\"0\" width=\"" + std::to_string(spec.width) + "\" height=\"" +
         std::to_string(spec.height) + "\" fill=\"#fff\"/>\n";
  out += body;
  out += "</svg>\n";
  return out;
}

void write_chart(const ChartSpec& spec) {
  if (spec.output_path.empty()) throw Error(Errc::IoFailure, "chart has no output path");
  write_text(spec.output_path, render_chart(spec));
}

}  // namespace circuitforge::dataio
