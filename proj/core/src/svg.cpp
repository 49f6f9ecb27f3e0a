#include "sweeplab/svg.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sweeplab {

namespace {

double approx(const Rational& x) { return x.get_d(); }

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

}  // namespace

SvgCanvas::SvgCanvas(double x0, double y0, double x1, double y1, int width, int height)
    : x0_(x0), y0_(y0), x1_(x1), y1_(y1), width_(width), height_(height) {
  if (x1 <= x0 || y1 <= y0) throw std::invalid_argument("SvgCanvas: empty window");
}

double SvgCanvas::px(double x) const { return (x - x0_) / (x1_ - x0_) * width_; }
double SvgCanvas::py(double y) const { return height_ - (y - y0_) / (y1_ - y0_) * height_; }

void SvgCanvas::add_rect_union(const RectUnion& u, const std::string& fill, double opacity) {
  for (const auto& r : u.rects()) {
    double x = px(approx(r.x_lo)), y = py(approx(r.y_hi));
    double w = px(approx(r.x_hi)) - x, h = py(approx(r.y_lo)) - y;
    body_ += "<rect x=\"" + fmt(x) + "\" y=\"" + fmt(y) + "\" width=\"" + fmt(w) +
             "\" height=\"" + fmt(h) + "\" fill=\"" + fill + "\" fill-opacity=\"" +
             fmt(opacity) + "\"/>\n";
  }
}

void SvgCanvas::add_staircase(const Staircase& h, const std::string& stroke) {
  std::ostringstream path;
  const auto& b = h.breaks();
  const auto& v = h.values();
  for (std::size_t i = 0; i < v.size(); ++i) {
    path << (i == 0 ? "M" : "L") << fmt(px(approx(b[i]))) << " " << fmt(py(approx(v[i])))
         << " L" << fmt(px(approx(b[i + 1]))) << " " << fmt(py(approx(v[i]))) << " ";
  }
  body_ += "<path d=\"" + path.str() + "\" stroke=\"" + stroke + "\" fill=\"none\"/>\n";
}

void SvgCanvas::add_polyline(const Polyline& p, const std::string& stroke) {
  std::ostringstream pts;
  for (const auto& [x, y] : p.pts) pts << fmt(px(approx(x))) << "," << fmt(py(approx(y))) << " ";
  body_ += "<polyline points=\"" + pts.str() + "\" stroke=\"" + stroke + "\" fill=\"none\"/>\n";
}

void SvgCanvas::add_pgrams(const std::vector<Pgram>& pgrams, const std::string& fill,
                           double opacity) {
  for (const auto& g : pgrams) {
    double bx = approx(g.bx), by = approx(g.by);
    double e1x = approx(g.e1x), e1y = approx(g.e1y);
    double e2x = approx(g.e2x), e2y = approx(g.e2y);
    std::ostringstream pts;
    pts << fmt(px(bx)) << "," << fmt(py(by)) << " ";
    pts << fmt(px(bx + e1x)) << "," << fmt(py(by + e1y)) << " ";
    pts << fmt(px(bx + e1x + e2x)) << "," << fmt(py(by + e1y + e2y)) << " ";
    pts << fmt(px(bx + e2x)) << "," << fmt(py(by + e2y));
    body_ += "<polygon points=\"" + pts.str() + "\" fill=\"" + fill + "\" fill-opacity=\"" +
             fmt(opacity) + "\" stroke=\"none\"/>\n";
  }
}

void SvgCanvas::add_label(double x, double y, const std::string& text) {
  body_ += "<text x=\"" + fmt(px(x)) + "\" y=\"" + fmt(py(y)) + "\" font-size=\"12\">" + text +
           "</text>\n";
}

std::string SvgCanvas::str() const {
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width_ << "\" height=\""
      << height_ << "\" viewBox=\"0 0 " << width_ << " " << height_ << "\">\n"
      << body_ << "</svg>\n";
  return out.str();
}

void SvgCanvas::write(const std::string& path) const {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("SvgCanvas: cannot open " + path);
  f << str();
}

std::string svg_row(const std::vector<SvgCanvas>& frames) {
  if (frames.empty()) return "<svg xmlns=\"http://www.w3.org/2000/svg\"/>\n";
  std::ostringstream out;
  int total_w = 0, max_h = 0;
  std::vector<std::string> inner;
  for (const auto& f : frames) {
    std::string s = f.str();
    inner.push_back(s);
  }
  // Recompute sizes from the frames themselves.
  // Frames share the canvas defaults, so lay them out on a uniform grid.
  int x = 0;
  std::string body;
  for (std::size_t i = 0; i < frames.size(); ++i) {
    std::string s = inner[i];
    auto open_end = s.find(">\n");
    auto close = s.rfind("</svg>");
    std::string content = s.substr(open_end + 2, close - open_end - 2);
    body += "<g transform=\"translate(" + std::to_string(x) + ",0)\">\n" + content + "</g>\n";
    x += 660;
    total_w = x;
    max_h = 500;
  }
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << total_w << "\" height=\""
      << max_h << "\">\n"
      << body << "</svg>\n";
  return out.str();
}

}  // namespace sweeplab
