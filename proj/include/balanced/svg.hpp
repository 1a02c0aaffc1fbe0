#pragma once

#include "balanced/oracle.hpp"
#include "balanced/rotation.hpp"
#include "balanced/sliding.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>

namespace balanced {

/// Static SVG rendering. Exact coordinates are converted to doubles here
/// and printed at fixed precision; nothing reads them back.
class SvgCanvas {
 public:
  explicit SvgCanvas(const Instance& inst) : inst_(inst) {
    bool first = true;
    for (const auto& p : inst.points()) {
      double x = static_cast<double>(p.x), y = static_cast<double>(p.y);
      if (first) {
        min_x_ = max_x_ = x;
        min_y_ = max_y_ = y;
        first = false;
      }
      min_x_ = std::min(min_x_, x);
      max_x_ = std::max(max_x_, x);
      min_y_ = std::min(min_y_, y);
      max_y_ = std::max(max_y_, y);
    }
    double span = std::max({max_x_ - min_x_, max_y_ - min_y_, 1.0});
    scale_ = (kSize - 2 * kMargin) / span;
  }

  std::string point_xy(PointId id) const {
    const auto& p = inst_.point(id);
    return "cx=\"" + num(sx(static_cast<double>(p.x))) + "\" cy=\"" + num(sy(static_cast<double>(p.y))) + "\"";
  }

  /// Long segment along a line; the clip path trims it to the canvas.
  void line(const DirectedLine& l, const std::string& cls) {
    const auto& p = inst_.point(l.anchor());
    double x = static_cast<double>(p.x), y = static_cast<double>(p.y);
    double dx = static_cast<double>(l.direction().dx()), dy = static_cast<double>(l.direction().dy());
    double len = std::hypot(dx, dy);
    double reach = 4 * kSize / scale_;
    dx *= reach / len;
    dy *= reach / len;
    body_ << "  <line class=\"" << cls << "\" x1=\"" << num(sx(x - dx)) << "\" y1=\"" << num(sy(y - dy)) << "\" x2=\""
          << num(sx(x + dx)) << "\" y2=\"" << num(sy(y + dy)) << "\"/>\n";
  }

  void point(PointId id, const std::string& cls) {
    body_ << "  <circle class=\"" << cls << "\" " << point_xy(id) << " r=\"5\"><title>" << id << "</title></circle>\n";
  }

  void ring(PointId id, const std::string& cls) {
    body_ << "  <circle class=\"" << cls << "\" " << point_xy(id) << " r=\"9\"/>\n";
  }

  void points() {
    for (PointId id = 0; id < inst_.size(); ++id) point(id, inst_.color(id) == Color::Red ? "red" : "blue");
  }

  std::string str(const std::string& title) const {
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize << "\" height=\"" << kSize << "\" viewBox=\"0 0 "
       << kSize << " " << kSize << "\">\n"
       << "  <title>" << title << "</title>\n"
       << "  <style>\n"
       << "    .red { fill: #d62728; }\n"
       << "    .blue { fill: #1f77b4; }\n"
       << "    .balanced { stroke: #555555; stroke-width: 1; }\n"
       << "    .rotation { stroke: #2ca02c; stroke-width: 2; }\n"
       << "    .gamma { stroke: #9467bd; stroke-width: 2; stroke-dasharray: 6 4; }\n"
       << "    .pivot, .F, .H, .G { fill: none; stroke-width: 2; }\n"
       << "    .pivot { stroke: #2ca02c; }\n"
       << "    .F { stroke: #ff7f0e; }\n"
       << "    .H { stroke: #17becf; }\n"
       << "    .G { stroke: #8c564b; }\n"
       << "  </style>\n"
       << "  <clipPath id=\"frame\"><rect x=\"0\" y=\"0\" width=\"" << kSize << "\" height=\"" << kSize
       << "\"/></clipPath>\n"
       << "  <rect x=\"0\" y=\"0\" width=\"" << kSize << "\" height=\"" << kSize << "\" fill=\"white\"/>\n"
       << "  <g clip-path=\"url(#frame)\">\n"
       << body_.str() << "  </g>\n</svg>\n";
    return os.str();
  }

 private:
  static constexpr double kSize = 600;
  static constexpr double kMargin = 40;

  static std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    std::string s = buf;
    return s == "-0.000" ? "0.000" : s;
  }

  double sx(double x) const { return kMargin + (x - min_x_) * scale_ + pad_x(); }
  double sy(double y) const { return kSize - kMargin - (y - min_y_) * scale_ - pad_y(); }
  double pad_x() const { return (kSize - 2 * kMargin - (max_x_ - min_x_) * scale_) / 2; }
  double pad_y() const { return (kSize - 2 * kMargin - (max_y_ - min_y_) * scale_) / 2; }

  const Instance& inst_;
  double min_x_ = 0, max_x_ = 0, min_y_ = 0, max_y_ = 0, scale_ = 1;
  std::ostringstream body_;
};

inline std::string plot_points(const Instance& inst) {
  SvgCanvas c(inst);
  c.points();
  return c.str("points");
}

inline std::string plot_balanced(const Instance& inst, const BalancedSet& lines) {
  SvgCanvas c(inst);
  for (const auto& l : lines) c.line(DirectedLine::spanned_by(inst, l.red, l.blue), "balanced");
  c.points();
  return c.str("balanced lines");
}

/// The rotation's line at direction `at`, which must not be an event.
inline std::string plot_rotation(const Instance& inst, const RotationTrace& trace, const Direction& at) {
  SvgCanvas c(inst);
  const auto& iv = trace.interval_at(at);
  c.line(DirectedLine::through(inst, iv.pivot, at), "rotation");
  c.points();
  c.ring(iv.pivot, "pivot");
  return c.str("rotation k=" + std::to_string(trace.spec.k) + " omega=" + std::to_string(iv.omega));
}

/// Gamma_0 and Gamma_pi, the F/H/G rings and the certified lines.
inline std::string plot_certificate(const Instance& inst, const Certificate& cert) {
  SvgCanvas c(inst);
  for (const auto& cl : cert.lines) c.line(DirectedLine::spanned_by(inst, cl.line.red, cl.line.blue), "balanced");
  if (cert.waist) {
    c.line(cert.waist->line0, "gamma");
    c.line(cert.waist->line_pi, "gamma");
  }
  c.points();
  for (PointId id : cert.F) c.ring(id, "F");
  for (PointId id : cert.H) c.ring(id, "H");
  for (PointId id : cert.G) c.ring(id, "G");
  return c.str("certificate total=" + std::to_string(cert.total));
}

}  // namespace balanced
