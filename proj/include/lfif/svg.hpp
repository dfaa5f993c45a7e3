#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace lfif {

// Minimal SVG 1.1 line/scatter plot with axes and tick labels.
class SvgPlot {
 public:
  SvgPlot(std::string title, int width = 800, int height = 500);

  void set_labels(std::string x_label, std::string y_label);
  void add_polyline(std::vector<std::pair<double, double>> points, std::string color,
                    double stroke_width = 1.5);
  void add_scatter(std::vector<std::pair<double, double>> points, std::string color,
                   double radius = 0.8);

  void write(std::ostream& os) const;
  std::string str() const;

 private:
  struct Series {
    std::vector<std::pair<double, double>> points;
    std::string color;
    double size;
    bool line;
  };

  std::string title_;
  std::string x_label_ = "x";
  std::string y_label_ = "y";
  int width_;
  int height_;
  std::vector<Series> series_;
};

}  // namespace lfif
