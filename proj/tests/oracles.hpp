#pragma once

// Independent reference computations for tests. Nothing here calls into the
// library's measure code; polygons are plain vertex lists.

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

#include "isoclus/geom.hpp"

namespace oracle {

using Poly = std::vector<isoclus::Point2>;

inline double shoelace(const Poly& p) {
  double a = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto& u = p[i];
    const auto& v = p[(i + 1) % p.size()];
    a += u.x * v.y - u.y * v.x;
  }
  return 0.5 * a;
}

/// Even-odd crossings of the horizontal line y with a polygon, sorted.
inline std::vector<double> crossings(const Poly& p, double y) {
  std::vector<double> xs;
  for (std::size_t i = 0; i < p.size(); ++i) {
    auto a = p[i], b = p[(i + 1) % p.size()];
    if ((a.y <= y) != (b.y <= y)) xs.push_back(a.x + (y - a.y) * (b.x - a.x) / (b.y - a.y));
  }
  std::sort(xs.begin(), xs.end());
  return xs;
}

/// Length of {x : in(a) op in(b)} along one scanline, op given as a boolean function.
template <class Op>
double line_measure(const std::vector<double>& xa, const std::vector<double>& xb, Op op) {
  std::vector<std::pair<double, int>> ev;
  for (double x : xa) ev.push_back({x, 0});
  for (double x : xb) ev.push_back({x, 1});
  std::sort(ev.begin(), ev.end());
  bool ia = false, ib = false;
  double total = 0, prev = 0;
  for (auto [x, who] : ev) {
    if (op(ia, ib)) total += x - prev;
    prev = x;
    if (who == 0) ia = !ia;
    else ib = !ib;
  }
  return total;
}

/// Scanline (midpoint rule in y, exact in x) measure of a boolean combination.
template <class Op>
double scanline_area(const Poly& a, const Poly& b, Op op, int rows = 10000) {
  double lo = 1e300, hi = -1e300;
  for (auto& p : a) lo = std::min(lo, p.y), hi = std::max(hi, p.y);
  for (auto& p : b) lo = std::min(lo, p.y), hi = std::max(hi, p.y);
  double dy = (hi - lo) / rows, total = 0;
  for (int r = 0; r < rows; ++r) {
    double y = lo + (r + 0.5) * dy;
    total += line_measure(crossings(a, y), crossings(b, y), op) * dy;
  }
  return total;
}

/// Edge-enumeration perimeter: each polygon edge keyed by its rounded endpoint
/// pair; an edge seen once is boundary, seen twice is an interface, counted once.
/// Only valid when shared edges coincide exactly as whole edges.
inline double edge_enumeration_perimeter(const std::vector<Poly>& polys, double grid = 1e-7) {
  std::map<std::pair<std::pair<long long, long long>, std::pair<long long, long long>>, double> edges;
  auto key = [&](isoclus::Point2 p) { return std::make_pair(std::llround(p.x / grid), std::llround(p.y / grid)); };
  for (const auto& p : polys) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      auto a = key(p[i]), b = key(p[(i + 1) % p.size()]);
      if (b < a) std::swap(a, b);
      edges[{a, b}] = std::hypot(p[i].x - p[(i + 1) % p.size()].x, p[i].y - p[(i + 1) % p.size()].y);
    }
  }
  double total = 0;
  for (auto& [k, len] : edges) total += len;
  return total;
}

/// Random star-shaped polygon around c with n vertices.
inline Poly star_polygon(std::mt19937_64& rng, isoclus::Point2 c, int n, double rmin, double rmax) {
  std::uniform_real_distribution<double> ur(rmin, rmax), ua(0.0, 1.0);
  // Jittered even spacing keeps every angular gap below pi, so the polygon is simple.
  std::vector<double> angles(n);
  for (int i = 0; i < n; ++i) angles[i] = (i + 0.8 * ua(rng)) * 2 * std::numbers::pi / n;
  Poly p;
  for (double a : angles) {
    double r = ur(rng);
    p.push_back({c.x + r * std::cos(a), c.y + r * std::sin(a)});
  }
  return p;
}

}  // namespace oracle
