#include <algorithm>
#include <cmath>

#include <boost/geometry.hpp>
#include <boost/geometry/geometries/multi_polygon.hpp>
#include <boost/geometry/geometries/point_xy.hpp>
#include <boost/geometry/geometries/polygon.hpp>

#include "isoclus/errors.hpp"
#include "isoclus/geom.hpp"
#include "geom_internal.hpp"

namespace bg = boost::geometry;

namespace isoclus {

namespace {

using BPoint = bg::model::d2::point_xy<double>;
using BPolygon = bg::model::polygon<BPoint, false, true>;
using BMulti = bg::model::multi_polygon<BPolygon>;

void require_polygonal(const Region& r, const char* what) {
  if (!r.is_polygonal()) throw UnsupportedOperation(std::string(what) + ": arc-bounded regions are not supported");
}

BPolygon loop_polygon(const Loop& l, bool flip) {
  BPolygon p;
  auto v = l.vertices();
  if (flip) std::reverse(v.begin(), v.end());
  for (auto q : v) p.outer().emplace_back(q.x, q.y);
  p.outer().emplace_back(v.front().x, v.front().y);
  bg::correct(p);
  return p;
}

BMulti to_multi(const Region& r) {
  BMulti outers, holes;
  for (const auto& l : r.loops()) {
    if (l.edges.size() < 3) continue;
    double a = l.signed_area();
    if (a > 0) {
      BMulti next;
      bg::union_(outers, loop_polygon(l, false), next);
      outers = std::move(next);
    } else if (a < 0) {
      BMulti next;
      bg::union_(holes, loop_polygon(l, true), next);
      holes = std::move(next);
    }
  }
  if (holes.empty()) return outers;
  BMulti out;
  bg::difference(outers, holes, out);
  return out;
}

BMulti single_loop_multi(const Region& r) {
  if (r.loops().size() == 1) {
    BMulti m;
    m.push_back(loop_polygon(r.loops()[0], r.loops()[0].signed_area() < 0));
    return m;
  }
  return to_multi(r);
}

std::vector<Point2> clean_ring(const std::vector<BPoint>& ring, double tol) {
  std::vector<Point2> v;
  for (const auto& p : ring) {
    Point2 q{p.x(), p.y()};
    if (!v.empty() && distance(v.back(), q) <= tol) continue;
    v.push_back(q);
  }
  while (v.size() > 1 && distance(v.front(), v.back()) <= tol) v.pop_back();
  // Drop collinear spikes and straight-through vertices.
  bool changed = true;
  while (changed && v.size() >= 3) {
    changed = false;
    for (std::size_t i = 0; i < v.size() && v.size() >= 3; ++i) {
      Point2 a = v[(i + v.size() - 1) % v.size()], b = v[i], c = v[(i + 1) % v.size()];
      double len = std::max(distance(a, b), distance(b, c));
      if (std::abs(cross(b - a, c - b)) <= tol * len && dot(b - a, c - b) <= 0) {
        v.erase(v.begin() + static_cast<long>(i));
        changed = true;
      }
    }
  }
  return v;
}

Region from_multi(const BMulti& m, double scale) {
  double tol = 1e-13 * std::max(1.0, scale);
  double area_tol = 1e-14 * std::max(1.0, scale * scale);
  std::vector<Loop> loops;
  auto add_ring = [&](const std::vector<BPoint>& ring) {
    auto v = clean_ring(ring, tol);
    if (v.size() < 3) return;
    Loop l;
    for (std::size_t i = 0; i < v.size(); ++i) l.edges.push_back(Edge::segment(v[i], v[(i + 1) % v.size()]));
    if (std::abs(l.signed_area()) <= area_tol) return;
    loops.push_back(std::move(l));
  };
  for (const auto& poly : m) {
    if (std::abs(bg::area(poly)) <= area_tol) continue;
    add_ring({poly.outer().begin(), poly.outer().end()});
    for (const auto& in : poly.inners()) add_ring({in.begin(), in.end()});
  }
  if (loops.empty()) return Region();
  return Region(std::move(loops));
}

double region_scale(const Region& a, const Region& b) {
  Box box = a.bbox();
  box.expand(b.bbox());
  if (box.empty()) return 1.0;
  return std::max({std::abs(box.lo.x), std::abs(box.lo.y), std::abs(box.hi.x), std::abs(box.hi.y), 1.0});
}


struct Seg {
  Point2 a, b;
  Box box;
};

std::vector<Seg> segments(const Region& r) {
  std::vector<Seg> out;
  for (const auto& l : r.loops()) {
    auto v = l.vertices();
    for (std::size_t i = 0; i < v.size(); ++i) {
      Seg s{v[i], v[(i + 1) % v.size()], {}};
      s.box = Box{{std::min(s.a.x, s.b.x), std::min(s.a.y, s.b.y)}, {std::max(s.a.x, s.b.x), std::max(s.a.y, s.b.y)}};
      out.push_back(s);
    }
  }
  return out;
}

int winding(const std::vector<Seg>& segs, Point2 p) {
  int w = 0;
  for (const auto& s : segs) {
    if (s.a.y <= p.y) {
      if (s.b.y > p.y && cross(s.b - s.a, p - s.a) > 0) ++w;
    } else if (s.b.y <= p.y && cross(s.b - s.a, p - s.a) < 0) {
      --w;
    }
  }
  return w;
}

double seg_distance(Point2 p, const Seg& s) {
  Point2 d = s.b - s.a;
  double dd = d.norm2();
  double t = dd > 0 ? std::clamp(dot(p - s.a, d) / dd, 0.0, 1.0) : 0.0;
  return distance(p, s.a + d * t);
}

/// Green's theorem contribution of the parts of x's boundary lying in y.
/// Boundary pieces shared with y count once (for the first operand) when
/// both sides run the same way and not at all otherwise.
double boundary_inside(const std::vector<Seg>& x, const std::vector<Seg>& y, bool first, double tol) {
  double total = 0;
  std::vector<double> ts;
  for (const auto& e : x) {
    Box eb = e.box;
    eb.lo = eb.lo - Point2{tol, tol};
    eb.hi = eb.hi + Point2{tol, tol};
    Point2 de = e.b - e.a;
    double le = de.norm();
    if (!(le > 0)) continue;
    ts.assign({0.0, 1.0});
    for (const auto& f : y) {
      if (!f.box.overlaps(eb)) continue;
      Point2 df = f.b - f.a;
      double den = cross(de, df);
      if (std::abs(den) > 1e-14 * le * df.norm()) {
        double t = cross(f.a - e.a, df) / den;
        double u = cross(f.a - e.a, de) / den;
        if (t > 0 && t < 1 && u >= -1e-14 && u <= 1 + 1e-14) ts.push_back(t);
      }
      for (Point2 q : {f.a, f.b}) {
        double t = dot(q - e.a, de) / (le * le);
        if (t > 0 && t < 1 && std::abs(cross(de, q - e.a)) / le <= tol) ts.push_back(t);
      }
    }
    std::sort(ts.begin(), ts.end());
    for (std::size_t k = 0; k + 1 < ts.size(); ++k) {
      if (ts[k + 1] - ts[k] <= 1e-15) continue;
      Point2 p = e.a + de * ts[k], q = e.a + de * ts[k + 1];
      Point2 m = (p + q) * 0.5;
      int on = 0;
      bool touching = false;
      for (const auto& f : y) {
        if (!f.box.overlaps(eb) || seg_distance(m, f) > tol) continue;
        Point2 df = f.b - f.a;
        if (std::abs(cross(de, df)) > 1e-9 * le * df.norm()) continue;
        touching = true;
        on += dot(de, df) > 0 ? 1 : -1;
      }
      // A doubled interior seam of y has net zero orientation and lies inside y.
      bool inside = on != 0 ? (first && on > 0) : (touching || winding(y, m) != 0);
      if (inside) total += 0.5 * cross(p, q);
    }
  }
  return total;
}

}  // namespace

std::vector<Point2> clip_polygon_halfplane(const std::vector<Point2>& poly, Point2 n, double c) {
  std::vector<Point2> out;
  std::size_t m = poly.size();
  if (m == 0) return out;
  out.reserve(m + 2);
  for (std::size_t i = 0; i < m; ++i) {
    Point2 a = poly[i], b = poly[(i + 1) % m];
    double fa = dot(a, n) - c, fb = dot(b, n) - c;
    if (fa <= 0) out.push_back(a);
    if ((fa < 0 && fb > 0) || (fa > 0 && fb < 0)) out.push_back(a + (b - a) * (fa / (fa - fb)));
  }
  return out;
}

double polygon_signed_area(const std::vector<Point2>& v) {
  double a = 0;
  for (std::size_t i = 0; i < v.size(); ++i) a += cross(v[i], v[(i + 1) % v.size()]);
  return 0.5 * a;
}

std::vector<Point2> clip_polygon_convex(std::vector<Point2> subject, const std::vector<Point2>& clip) {
  std::size_t n = clip.size();
  for (std::size_t i = 0; i < n && !subject.empty(); ++i) {
    Point2 a = clip[i], b = clip[(i + 1) % n];
    // Clip is counter-clockwise; the interior lies to the left of a->b.
    Point2 normal = -perp(b - a);
    subject = clip_polygon_halfplane(subject, normal, dot(normal, a));
  }
  return subject;
}

Region boolean(const Region& a, const Region& b, BoolOp op) {
  require_polygonal(a, "boolean");
  require_polygonal(b, "boolean");
  BMulti ma = single_loop_multi(a), mb = single_loop_multi(b), out;
  switch (op) {
    case BoolOp::intersect:
      bg::intersection(ma, mb, out);
      break;
    case BoolOp::unite:
      bg::union_(ma, mb, out);
      break;
    case BoolOp::difference:
      bg::difference(ma, mb, out);
      break;
    case BoolOp::symmetric_difference:
      bg::sym_difference(ma, mb, out);
      break;
  }
  Region res = from_multi(out, region_scale(a, b));
  // Boost without rescaling can mishandle nearly collinear overlapping edges;
  // the boundary-integral area catches that.
  double x = intersection_area(a, b), aa = area(a), ab = area(b);
  double expect = 0;
  switch (op) {
    case BoolOp::intersect: expect = x; break;
    case BoolOp::unite: expect = aa + ab - x; break;
    case BoolOp::difference: expect = aa - x; break;
    case BoolOp::symmetric_difference: expect = aa + ab - 2 * x; break;
  }
  if (std::abs(area(res) - expect) > 1e-8 * std::max(1e-300, aa + ab))
    throw ValidationError("boolean: inconsistent result area " + std::to_string(area(res)) + " vs " +
                          std::to_string(expect));
  return res;
}

Region unite_all(std::span<const Region> parts) {
  BMulti acc;
  double scale = 1.0;
  for (const auto& p : parts) {
    require_polygonal(p, "unite_all");
    Box b = p.bbox();
    if (!b.empty()) scale = std::max({scale, std::abs(b.lo.x), std::abs(b.lo.y), std::abs(b.hi.x), std::abs(b.hi.y)});
    BMulti next;
    bg::union_(acc, single_loop_multi(p), next);
    acc = std::move(next);
  }
  return from_multi(acc, scale);
}

double intersection_area(const Region& a, const Region& b) {
  require_polygonal(a, "intersection_area");
  require_polygonal(b, "intersection_area");
  if (a.empty() || b.empty()) return 0.0;
  if (!a.bbox().overlaps(b.bbox())) return 0.0;
  const Region* convex = nullptr;
  const Region* other = nullptr;
  if (is_convex_polygon(b)) {
    convex = &b;
    other = &a;
  } else if (is_convex_polygon(a)) {
    convex = &a;
    other = &b;
  }
  if (convex) {
    auto clip = convex->loops()[0].vertices();
    double total = 0;
    Box cb = convex->bbox();
    for (const auto& l : other->loops()) {
      if (!l.bbox().overlaps(cb)) continue;
      total += polygon_signed_area(clip_polygon_convex(l.vertices(), clip));
    }
    return std::max(0.0, total);
  }
  auto sa = segments(a), sb = segments(b);
  double tol = 1e-12 * region_scale(a, b);
  return std::max(0.0, boundary_inside(sa, sb, true, tol) + boundary_inside(sb, sa, false, tol));
}

double halfplane_area(const Region& r, Point2 normal, double offset) {
  require_polygonal(r, "halfplane_area");
  double total = 0;
  for (const auto& l : r.loops()) total += polygon_signed_area(clip_polygon_halfplane(l.vertices(), normal, offset));
  return total;
}

Region clip_halfplane(const Region& r, Point2 normal, double offset) {
  require_polygonal(r, "clip_halfplane");
  double nn = normal.norm();
  if (!(nn > 0)) throw DomainError("half-plane normal must be nonzero");
  Point2 u = normal / nn;
  double c = offset / nn;
  Box b = r.bbox();
  if (b.empty()) return Region();
  double R = 2.0 * std::max({distance(b.lo, b.hi), std::abs(c), 1.0}) + b.center().norm();
  Point2 base = u * c;
  Point2 t = perp(u);
  Region half = Region::polygon({base + t * R, base - t * R, base - t * R - u * (2 * R), base + t * R - u * (2 * R)});
  return boolean(r, half, BoolOp::intersect);
}

}  // namespace isoclus
