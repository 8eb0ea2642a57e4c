#include "ebdi/scatter_svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ebdi/format.hpp"

namespace ebdi {

namespace {

constexpr double kWidth = 760.0;
constexpr double kHeight = 720.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 40.0;
constexpr double kTop = 60.0;
constexpr double kBottom = 70.0;

std::string xml_escape(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (char ch : text) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += ch;
    }
  }
  return out;
}

std::string num(double v) { return format_fixed(v, 2); }

// 1, 2 or 5 times a power of ten, giving roughly `target` intervals.
double nice_step(double span, int target) {
  const double raw = span / target;
  const double magnitude = std::pow(10.0, std::floor(std::log10(raw)));
  const double fraction = raw / magnitude;
  const double nice = fraction <= 1.0 ? 1.0 : fraction <= 2.0 ? 2.0 : fraction <= 5.0 ? 5.0 : 10.0;
  return nice * magnitude;
}

struct Axis {
  double max = 1.0;
  double step = 0.2;
};

Axis make_axis(double data_max, double threshold) {
  double top = std::max(data_max, threshold);
  if (!(top > 0.0)) top = 1.0;
  Axis axis;
  axis.step = nice_step(top * 1.05, 5);
  axis.max = std::ceil(top * 1.05 / axis.step) * axis.step;
  return axis;
}

}  // namespace

std::string render_scatter_svg(const ScatterPlot& plot) {
  double x_max = 0.0, y_max = 0.0;
  for (const auto& p : plot.points) {
    x_max = std::max(x_max, p.x);
    y_max = std::max(y_max, p.y);
  }
  const Axis xa = make_axis(x_max, plot.x_threshold);
  const Axis ya = make_axis(y_max, plot.y_threshold);

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto sx = [&](double x) { return kLeft + plot_w * x / xa.max; };
  auto sy = [&](double y) { return kTop + plot_h * (1.0 - y / ya.max); };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
      << num(kWidth) << "\" height=\"" << num(kHeight) << "\" viewBox=\"0 0 "
      << num(kWidth) << ' ' << num(kHeight) << "\">\n"
      << "<title>" << xml_escape(plot.title) << "</title>\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << num(kWidth) << "\" height=\""
      << num(kHeight) << "\" fill=\"white\"/>\n"
      << "<text class=\"title\" x=\"" << num(kWidth / 2) << "\" y=\"30\""
      << " text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">"
      << xml_escape(plot.title) << "</text>\n";

  // axes and ticks as a single path
  std::ostringstream d;
  d << "M" << num(kLeft) << ' ' << num(kTop) << " V" << num(kTop + plot_h)
    << " H" << num(kLeft + plot_w);
  const int x_ticks = static_cast<int>(std::lround(xa.max / xa.step));
  const int y_ticks = static_cast<int>(std::lround(ya.max / ya.step));
  for (int i = 0; i <= x_ticks; ++i) {
    d << " M" << num(sx(i * xa.step)) << ' ' << num(kTop + plot_h) << " v5";
  }
  for (int i = 0; i <= y_ticks; ++i) {
    d << " M" << num(kLeft) << ' ' << num(sy(i * ya.step)) << " h-5";
  }
  svg << "<path class=\"axis\" d=\"" << d.str()
      << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";

  svg << "<g class=\"ticks\" font-family=\"sans-serif\" font-size=\"11\">\n";
  for (int i = 0; i <= x_ticks; ++i) {
    svg << "<text x=\"" << num(sx(i * xa.step)) << "\" y=\""
        << num(kTop + plot_h + 18) << "\" text-anchor=\"middle\">"
        << format_shortest(std::round(i * xa.step * 1e6) / 1e6) << "</text>\n";
  }
  for (int i = 0; i <= y_ticks; ++i) {
    svg << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(sy(i * ya.step) + 4)
        << "\" text-anchor=\"end\">"
        << format_shortest(std::round(i * ya.step * 1e6) / 1e6) << "</text>\n";
  }
  svg << "</g>\n";

  svg << "<text class=\"axis-label\" x=\"" << num(kLeft + plot_w / 2) << "\" y=\""
      << num(kHeight - 20) << "\" text-anchor=\"middle\" font-family=\"sans-serif\""
      << " font-size=\"13\">" << xml_escape(plot.x_label) << "</text>\n"
      << "<text class=\"axis-label\" x=\"20\" y=\"" << num(kTop + plot_h / 2)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\""
      << " transform=\"rotate(-90 20 " << num(kTop + plot_h / 2) << ")\">"
      << xml_escape(plot.y_label) << "</text>\n";

  svg << "<line class=\"threshold\" data-axis=\"x\" x1=\"" << num(sx(plot.x_threshold))
      << "\" y1=\"" << num(kTop) << "\" x2=\"" << num(sx(plot.x_threshold))
      << "\" y2=\"" << num(kTop + plot_h)
      << "\" stroke=\"gray\" stroke-dasharray=\"6 4\"/>\n";
  svg << "<line class=\"threshold\" data-axis=\"y\" x1=\"" << num(kLeft)
      << "\" y1=\"" << num(sy(plot.y_threshold)) << "\" x2=\"" << num(kLeft + plot_w)
      << "\" y2=\"" << num(sy(plot.y_threshold))
      << "\" stroke=\"gray\" stroke-dasharray=\"6 4\"/>\n";

  if (plot.quadrant_labels.size() == 4) {
    const double xs[] = {kLeft + plot_w - 6, kLeft + plot_w - 6, kLeft + 6, kLeft + 6};
    const double ys[] = {kTop + 16, kTop + plot_h - 8, kTop + 16, kTop + plot_h - 8};
    const char* anchors[] = {"end", "end", "start", "start"};
    for (int q = 0; q < 4; ++q) {
      if (plot.quadrant_labels[q].empty()) continue;
      svg << "<text class=\"quadrant\" x=\"" << num(xs[q]) << "\" y=\"" << num(ys[q])
          << "\" text-anchor=\"" << anchors[q]
          << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"gray\">"
          << xml_escape(plot.quadrant_labels[q]) << "</text>\n";
    }
  }

  svg << "<g class=\"points\" font-family=\"sans-serif\" font-size=\"10\">\n";
  for (const auto& p : plot.points) {
    const std::string label = xml_escape(p.label);
    svg << "<circle class=\"point\" data-unit=\"" << label << "\" cx=\""
        << num(sx(p.x)) << "\" cy=\"" << num(sy(p.y))
        << "\" r=\"4\" fill=\"steelblue\"/>\n"
        << "<text class=\"label\" x=\"" << num(sx(p.x) + 6) << "\" y=\""
        << num(sy(p.y) - 6) << "\">" << label << "</text>\n";
  }
  svg << "</g>\n</svg>\n";
  return svg.str();
}

}  // namespace ebdi
