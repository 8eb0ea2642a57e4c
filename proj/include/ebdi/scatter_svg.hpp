#pragma once

#include <string>
#include <vector>

namespace ebdi {

struct ScatterPoint {
  std::string label;
  double x = 0.0;
  double y = 0.0;
};

/// A labelled scatter plot with one vertical and one horizontal threshold
/// line splitting the plane into four quadrants.
struct ScatterPlot {
  std::string title;
  std::string x_label;
  std::string y_label;
  double x_threshold = 0.0;
  double y_threshold = 0.0;
  std::vector<ScatterPoint> points;
  // Quadrant captions: [0] x high / y high, [1] x high / y low,
  // [2] x low / y high, [3] x low / y low. Empty strings are skipped.
  std::vector<std::string> quadrant_labels;
};

/// Static SVG document. Every point is a `<circle class="point">` followed by
/// its `<text class="label">`; the thresholds are the only
/// `<line class="threshold">` elements. Output depends only on the input.
std::string render_scatter_svg(const ScatterPlot& plot);

}  // namespace ebdi
