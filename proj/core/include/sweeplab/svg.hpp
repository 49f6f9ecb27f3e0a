// Static SVG figures: rectangle unions as filled rectangles, staircases as
// step paths, parallelogram sets as polygons. Coordinates are rendered at
// fixed decimal precision; rendering is the only lossy step anywhere and its
// output is never fed back into computation.
#pragma once

#include <string>
#include <vector>

#include "sweeplab/geometry.hpp"
#include "sweeplab/polyline.hpp"
#include "sweeplab/staircase.hpp"

namespace sweeplab {

class SvgCanvas {
 public:
  // World window (x0, y0)-(x1, y1) mapped into a width x height pixel frame,
  // y axis pointing up.
  SvgCanvas(double x0, double y0, double x1, double y1, int width = 640, int height = 480);

  void add_rect_union(const RectUnion& u, const std::string& fill, double opacity = 0.6);
  void add_staircase(const Staircase& h, const std::string& stroke);
  void add_polyline(const Polyline& p, const std::string& stroke);
  void add_pgrams(const std::vector<Pgram>& pgrams, const std::string& fill, double opacity = 0.5);
  void add_label(double x, double y, const std::string& text);

  std::string str() const;
  void write(const std::string& path) const;

 private:
  double px(double x) const;
  double py(double y) const;

  double x0_, y0_, x1_, y1_;
  int width_, height_;
  std::string body_;
};

// Lays frames out side by side in one SVG document.
std::string svg_row(const std::vector<SvgCanvas>& frames);

}  // namespace sweeplab
