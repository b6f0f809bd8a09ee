#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "isoclus/errors.hpp"
#include "isoclus/stability.hpp"

namespace isoclus {

namespace {

/// Area above a unit chord of the arc with half-angle phi in (0, pi).
double segment_area(double phi) {
  double s = std::sin(phi);
  double x = 2 * phi;
  double num;
  if (x < 1e-2) {
    double x2 = x * x;
    num = x * x2 / 6 * (1 - x2 / 20 * (1 - x2 / 42 * (1 - x2 / 72)));
  } else {
    num = x - std::sin(x);
  }
  return num / (8 * s * s);
}

}  // namespace

double arc_half_angle(double a) {
  if (!(a >= 0)) throw DomainError("arc needs a >= 0");
  if (a == 0) return 0.0;
  if (std::isinf(a)) return std::numbers::pi;
  double lo = 0, hi = std::numbers::pi;
  for (int it = 0; it < 200 && hi - lo > 0; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (segment_area(mid) < a)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double arc(double a) {
  double phi = arc_half_angle(a);
  if (phi == 0) return 1.0;
  if (phi < 1e-4) return 1 + phi * phi / 6 * (1 + 7 * phi * phi / 60);
  return phi / std::sin(phi);
}

double arc_t(double a, double t) {
  if (!(t > 0)) throw DomainError("arc_t needs a positive chord");
  return t * arc(a / (t * t));
}

double fit_arc_eta(double amax, int samples) {
  if (!(amax > 0) || samples < 1) throw DomainError("fit_arc_eta needs amax > 0 and samples >= 1");
  double eta = std::numeric_limits<double>::infinity();
  for (int i = 1; i <= samples; ++i) {
    double a = amax * i / samples;
    eta = std::min(eta, (arc(a) - 1) / (a * a));
  }
  return eta;
}

Region bulged_polygon(const std::vector<Point2>& v, const std::vector<double>& areas) {
  if (v.size() < 3 || areas.size() != v.size()) throw DomainError("bulged_polygon needs one area per side");
  Loop l;
  for (std::size_t i = 0; i < v.size(); ++i) {
    Point2 p = v[i], q = v[(i + 1) % v.size()];
    double a = areas[i];
    if (a == 0) {
      l.edges.push_back(Edge::segment(p, q));
      continue;
    }
    double t = distance(p, q);
    double phi = arc_half_angle(std::abs(a) / (t * t));
    double r = t / (2 * std::sin(phi));
    Point2 left = perp(q - p) / t;
    double side = a > 0 ? 1.0 : -1.0;
    Point2 c = (p + q) * 0.5 + left * (side * r * std::cos(phi));
    l.edges.push_back(Edge::arc(p, q, c, side * 2 * phi));
  }
  return Region({l});
}

}  // namespace isoclus
