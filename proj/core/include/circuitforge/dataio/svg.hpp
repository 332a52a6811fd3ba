#pragma once

#include <string>
#include <vector>

namespace circuitforge::dataio {

enum class ChartKind { Line, Histogram, Scatter };

struct ChartSeries {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

struct ChartSpec {
  ChartKind kind = ChartKind::Line;
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<ChartSeries> series;
  /// Histogram of raw values: the values are series[0].y, binned into `bins`
  /// equal-width bins over [min, max]. When `categories` is set the y values
  /// are taken as pre-binned counts, one per category.
  int bins = 10;
  std::vector<std::string> categories;
  std::string output_path;
  int width = 640;
  int height = 400;
};

/// Standalone SVG document. Identical specs give identical bytes.
/// Throws EmptySeries when there is nothing to draw.
std::string render_chart(const ChartSpec& spec);
/// Renders to spec.output_path. Throws IoFailure.
void write_chart(const ChartSpec& spec);

/// Equal-width bin counts over [lo, hi]; the top edge belongs to the last bin.
std::vector<int> histogram_counts(const std::vector<double>& values, int bins, double lo, double hi);

}  // namespace circuitforge::dataio
