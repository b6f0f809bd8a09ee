#include <cmath>
#include <cstdio>
#include <numbers>

#include "isoclus/io.hpp"

namespace isoclus {

namespace {

std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string pt(Point2 p) { return num(p.x) + " " + num(p.y); }

std::string path_data(const Region& r) {
  std::string d;
  for (const auto& l : r.loops()) {
    if (l.edges.empty()) continue;
    d += "M" + pt(l.edges.front().from);
    for (const auto& e : l.edges) {
      if (e.is_arc()) {
        double rad = e.radius();
        d += " A" + num(rad) + " " + num(rad) + " 0 " + (std::abs(e.sweep) > std::numbers::pi ? "1" : "0") + " " +
             (e.sweep > 0 ? "1" : "0") + " " + pt(e.to);
      } else {
        d += " L" + pt(e.to);
      }
    }
    d += " Z";
  }
  return d;
}

// Outline drawn as polygons so that <path> elements stay one per chamber.
std::string outline(const Region& r) {
  std::string s;
  for (const auto& l : r.loops()) {
    s += "<polygon class=\"ambient\" points=\"";
    for (const auto& e : l.edges) {
      int steps = e.is_arc() ? std::max(2, static_cast<int>(std::abs(e.sweep) / 0.05)) : 1;
      for (int i = 0; i < steps; ++i) {
        Point2 p = e.point_at(static_cast<double>(i) / steps);
        s += num(p.x) + "," + num(p.y) + " ";
      }
    }
    s += "\"/>\n";
  }
  return s;
}

}  // namespace

std::string render_svg(const Cluster& c) {
  Box b;
  if (c.torus()) {
    b.expand(Point2{0, 0});
    b.expand(c.torus()->v() + c.torus()->w());
  } else if (c.ambient()) {
    b = c.ambient()->bbox();
  } else {
    for (const auto& ch : c.chambers()) b.expand(ch.bbox());
  }
  if (b.empty()) b = Box{{0, 0}, {1, 1}};
  double mx = 0.05 * b.width(), my = 0.05 * b.height();
  if (mx <= 0) mx = my > 0 ? my : 0.05;
  if (my <= 0) my = mx;
  Box v{{b.lo.x - mx, b.lo.y - my}, {b.hi.x + mx, b.hi.y + my}};

  std::string s = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" + num(v.lo.x) + " " + num(v.lo.y) + " " +
       num(v.width()) + " " + num(v.height()) + "\">\n";
  s += "<style>path{stroke:#222;stroke-width:1;vector-effect:non-scaling-stroke}"
       ".ambient,.domain{fill:none;stroke:#000;stroke-width:1.5;vector-effect:non-scaling-stroke}</style>\n";
  // Flip y so that the picture is upright.
  s += "<g transform=\"translate(0 " + num(v.lo.y + v.hi.y) + ") scale(1 -1)\">\n";
  if (c.torus()) {
    Point2 hi = c.torus()->v() + c.torus()->w();
    s += "<clipPath id=\"domain\"><rect x=\"0\" y=\"0\" width=\"" + num(hi.x) + "\" height=\"" + num(hi.y) +
         "\"/></clipPath>\n<g clip-path=\"url(#domain)\">\n";
  }
  for (std::size_t i = 0; i < c.size(); ++i) {
    char fill[48];
    std::snprintf(fill, sizeof fill, "hsl(%.1f,65%%,62%%)", std::fmod(i * 137.50776405, 360.0));
    s += "<path id=\"chamber-" + std::to_string(i + 1) + "\" fill=\"" + fill + "\" d=\"" + path_data(c.chambers()[i]) +
         "\"/>\n";
  }
  if (c.torus()) {
    Point2 hi = c.torus()->v() + c.torus()->w();
    s += "</g>\n<rect class=\"domain\" x=\"0\" y=\"0\" width=\"" + num(hi.x) + "\" height=\"" + num(hi.y) + "\"/>\n";
  } else if (c.ambient()) {
    s += outline(*c.ambient());
  }
  s += "</g>\n</svg>\n";
  return s;
}

}  // namespace isoclus
