#include "lfif/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>

namespace lfif {
namespace {

constexpr double kMarginLeft = 80.0;
constexpr double kMarginRight = 20.0;
constexpr double kMarginTop = 40.0;
constexpr double kMarginBottom = 50.0;

std::string fmt(double v, const char* spec = "%.3f") {
  char buf[48];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

// Round step of roughly span/count: 1, 2 or 5 times a power of ten.
double nice_step(double span, int count) {
  const double raw = span / count;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double r = raw / mag;
  return (r < 1.5 ? 1.0 : r < 3.5 ? 2.0 : r < 7.5 ? 5.0 : 10.0) * mag;
}

}  // namespace

SvgPlot::SvgPlot(std::string title, int width, int height)
    : title_(std::move(title)), width_(width), height_(height) {}

void SvgPlot::set_labels(std::string x_label, std::string y_label) {
  x_label_ = std::move(x_label);
  y_label_ = std::move(y_label);
}

void SvgPlot::add_polyline(std::vector<std::pair<double, double>> points, std::string color,
                           double stroke_width) {
  series_.push_back({std::move(points), std::move(color), stroke_width, true});
}

void SvgPlot::add_scatter(std::vector<std::pair<double, double>> points, std::string color,
                          double radius) {
  series_.push_back({std::move(points), std::move(color), radius, false});
}

void SvgPlot::write(std::ostream& os) const {
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& s : series_) {
    for (const auto& [x, y] : s.points) {
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  }
  if (!(xmin < xmax)) { xmin = 0.0; xmax = 1.0; }
  if (!(ymin < ymax)) { ymin -= 0.5; ymax += 0.5; }
  const double pad = 0.05 * (ymax - ymin);
  ymin -= pad;
  ymax += pad;

  const double pw = width_ - kMarginLeft - kMarginRight;
  const double ph = height_ - kMarginTop - kMarginBottom;
  auto px = [&](double x) { return kMarginLeft + (x - xmin) / (xmax - xmin) * pw; };
  auto py = [&](double y) { return kMarginTop + (ymax - y) / (ymax - ymin) * ph; };

  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width_
     << "\" height=\"" << height_ << "\" viewBox=\"0 0 " << width_ << ' ' << height_ << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << fmt(width_ / 2.0, "%.1f") << "\" y=\"24\" text-anchor=\"middle\" "
     << "font-family=\"sans-serif\" font-size=\"16\">" << escape(title_) << "</text>\n";

  os << "<g stroke=\"#999\" stroke-width=\"0.5\" font-family=\"sans-serif\" font-size=\"11\">\n";
  const double xs = nice_step(xmax - xmin, 8);
  for (double t = std::ceil(xmin / xs) * xs; t <= xmax + 1e-9 * xs; t += xs) {
    os << "<line x1=\"" << fmt(px(t)) << "\" y1=\"" << fmt(kMarginTop) << "\" x2=\"" << fmt(px(t))
       << "\" y2=\"" << fmt(kMarginTop + ph) << "\"/>"
       << "<text stroke=\"none\" x=\"" << fmt(px(t)) << "\" y=\"" << fmt(kMarginTop + ph + 16)
       << "\" text-anchor=\"middle\">" << fmt(t, "%g") << "</text>\n";
  }
  const double ys = nice_step(ymax - ymin, 6);
  for (double t = std::ceil(ymin / ys) * ys; t <= ymax + 1e-9 * ys; t += ys) {
    const double tv = std::abs(t) < 1e-12 * ys ? 0.0 : t;
    os << "<line x1=\"" << fmt(kMarginLeft) << "\" y1=\"" << fmt(py(tv)) << "\" x2=\""
       << fmt(kMarginLeft + pw) << "\" y2=\"" << fmt(py(tv)) << "\"/>"
       << "<text stroke=\"none\" x=\"" << fmt(kMarginLeft - 6) << "\" y=\"" << fmt(py(tv) + 4)
       << "\" text-anchor=\"end\">" << fmt(tv, "%g") << "</text>\n";
  }
  os << "</g>\n"
     << "<rect x=\"" << fmt(kMarginLeft) << "\" y=\"" << fmt(kMarginTop) << "\" width=\"" << fmt(pw)
     << "\" height=\"" << fmt(ph) << "\" fill=\"none\" stroke=\"black\"/>\n"
     << "<text x=\"" << fmt(kMarginLeft + pw / 2) << "\" y=\"" << fmt(height_ - 10.0)
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
     << escape(x_label_) << "</text>\n"
     << "<text x=\"16\" y=\"" << fmt(kMarginTop + ph / 2) << "\" text-anchor=\"middle\" "
     << "font-family=\"sans-serif\" font-size=\"13\" transform=\"rotate(-90 16 "
     << fmt(kMarginTop + ph / 2) << ")\">" << escape(y_label_) << "</text>\n";

  for (const auto& s : series_) {
    if (s.line) {
      os << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"" << fmt(s.size)
         << "\" points=\"";
      for (const auto& [x, y] : s.points) os << fmt(px(x)) << ',' << fmt(py(y)) << ' ';
      os << "\"/>\n";
    } else {
      os << "<g fill=\"" << s.color << "\" stroke=\"none\">\n";
      for (const auto& [x, y] : s.points) {
        os << "<circle cx=\"" << fmt(px(x)) << "\" cy=\"" << fmt(py(y)) << "\" r=\"" << fmt(s.size)
           << "\"/>\n";
      }
      os << "</g>\n";
    }
  }
  os << "</svg>\n";
}

std::string SvgPlot::str() const {
  std::ostringstream os;
  write(os);
  return os.str();
}

}  // namespace lfif
