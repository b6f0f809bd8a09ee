#include <algorithm>
#include <cmath>
#include <limits>

#include "isoclus/errors.hpp"
#include "isoclus/geom.hpp"

namespace isoclus {

namespace {

constexpr double kRelTol = 1e-12;

double wrap_angle(double a) {
  a = std::fmod(a, kTwoPi);
  if (a < 0) a += kTwoPi;
  return a;
}

/// True when angle phi lies on the arc starting at `start` with signed `sweep`.
bool angle_on_arc(double phi, double start, double sweep) {
  double rel = sweep >= 0 ? wrap_angle(phi - start) : wrap_angle(start - phi);
  return rel <= std::abs(sweep) + 1e-14;
}

double arc_param(const Edge& e, Point2 p) {
  double start = std::atan2(e.from.y - e.center.y, e.from.x - e.center.x);
  double phi = std::atan2(p.y - e.center.y, p.x - e.center.x);
  double rel = e.sweep >= 0 ? wrap_angle(phi - start) : wrap_angle(start - phi);
  return rel / std::abs(e.sweep);
}

}  // namespace

void Box::expand(Point2 p) {
  lo.x = std::min(lo.x, p.x);
  lo.y = std::min(lo.y, p.y);
  hi.x = std::max(hi.x, p.x);
  hi.y = std::max(hi.y, p.y);
}

void Box::expand(const Box& b) {
  if (b.empty()) return;
  expand(b.lo);
  expand(b.hi);
}

bool Box::overlaps(const Box& b, double pad) const {
  return !(b.lo.x > hi.x + pad || b.hi.x < lo.x - pad || b.lo.y > hi.y + pad || b.hi.y < lo.y - pad);
}

Edge Edge::segment(Point2 a, Point2 b) {
  Edge e;
  e.kind = EdgeKind::segment;
  e.from = a;
  e.to = b;
  return e;
}

Edge Edge::arc(Point2 from, Point2 center, double sweep) {
  if (!(std::abs(sweep) < kTwoPi) || sweep == 0.0) throw ValidationError("arc sweep must satisfy 0 < |sweep| < 2pi");
  Edge e;
  e.kind = EdgeKind::arc;
  e.from = from;
  e.center = center;
  e.sweep = sweep;
  Point2 r = from - center;
  double c = std::cos(sweep), s = std::sin(sweep);
  e.to = center + Point2{c * r.x - s * r.y, s * r.x + c * r.y};
  return e;
}

Edge Edge::arc(Point2 from, Point2 to, Point2 center, double sweep) {
  if (!(std::abs(sweep) < kTwoPi) || sweep == 0.0) throw ValidationError("arc sweep must satisfy 0 < |sweep| < 2pi");
  double r0 = distance(from, center), r1 = distance(to, center);
  if (std::abs(r0 - r1) > 1e-12 * std::max(1.0, r0)) throw ValidationError("arc endpoints are not equidistant from the center");
  Edge e = arc(from, center, sweep);
  if (distance(e.to, to) > 1e-9 * std::max(1.0, r0)) throw ValidationError("arc end point does not match center and sweep");
  e.to = to;
  return e;
}

double Edge::radius() const { return is_arc() ? distance(from, center) : 0.0; }

double Edge::length() const { return is_arc() ? radius() * std::abs(sweep) : distance(from, to); }

Point2 Edge::point_at(double t) const {
  if (!is_arc()) return from + (to - from) * t;
  if (t <= 0) return from;
  if (t >= 1) return to;
  double r = radius();
  double start = std::atan2(from.y - center.y, from.x - center.x);
  return center + unit_vector(start + t * sweep) * r;
}

Point2 Edge::tangent_at(double t) const {
  if (!is_arc()) {
    Point2 d = to - from;
    return d / d.norm();
  }
  double start = std::atan2(from.y - center.y, from.x - center.x);
  Point2 radial = unit_vector(start + t * sweep);
  return sweep > 0 ? perp(radial) : -perp(radial);
}

Edge Edge::reversed() const {
  Edge e = *this;
  std::swap(e.from, e.to);
  e.sweep = -sweep;
  return e;
}

Edge Edge::sub(double t0, double t1) const {
  Edge e = *this;
  e.from = point_at(t0);
  e.to = point_at(t1);
  if (is_arc()) e.sweep = sweep * (t1 - t0);
  return e;
}

double Edge::green_term() const {
  if (!is_arc()) return 0.5 * cross(from, to);
  double r = radius();
  return 0.5 * (center.x * (to.y - from.y) - center.y * (to.x - from.x) + r * r * sweep);
}

Box Edge::bbox() const {
  Box b;
  b.expand(from);
  b.expand(to);
  if (is_arc()) {
    double r = radius();
    double start = std::atan2(from.y - center.y, from.x - center.x);
    for (int k = 0; k < 4; ++k) {
      double phi = k * kPi / 2;
      if (angle_on_arc(phi, start, sweep)) b.expand(center + unit_vector(phi) * r);
    }
  }
  return b;
}

double point_edge_distance(Point2 p, const Edge& e) {
  if (!e.is_arc()) {
    Point2 d = e.to - e.from;
    double len2 = d.norm2();
    double t = len2 > 0 ? std::clamp(dot(p - e.from, d) / len2, 0.0, 1.0) : 0.0;
    return distance(p, e.from + d * t);
  }
  double start = std::atan2(e.from.y - e.center.y, e.from.x - e.center.x);
  Point2 q = p - e.center;
  if (q.norm2() > 0 && angle_on_arc(std::atan2(q.y, q.x), start, e.sweep)) return std::abs(q.norm() - e.radius());
  return std::min(distance(p, e.from), distance(p, e.to));
}

std::vector<double> edge_circle_hits(const Edge& e, Point2 c, double r) {
  std::vector<double> out;
  if (!e.is_arc()) {
    Point2 d = e.to - e.from, f = e.from - c;
    double A = d.norm2(), B = 2 * dot(f, d), C = f.norm2() - r * r;
    double disc = B * B - 4 * A * C;
    if (A == 0 || disc <= 0) return out;
    double sq = std::sqrt(disc);
    // Numerically stable roots.
    double q = -0.5 * (B + std::copysign(sq, B));
    double t1 = q / A, t2 = q != 0 ? C / q : -B / (2 * A);
    for (double t : {t1, t2})
      if (t > 1e-13 && t < 1 - 1e-13) out.push_back(t);
    std::sort(out.begin(), out.end());
    return out;
  }
  // Circle-circle intersection.
  double R = e.radius();
  Point2 d = c - e.center;
  double dist = d.norm();
  if (dist < 1e-15 * std::max(1.0, R)) return out;  // concentric: no proper crossing
  if (dist > R + r || dist < std::abs(R - r)) return out;
  double a = (R * R - r * r + dist * dist) / (2 * dist);
  double h2 = R * R - a * a;
  if (h2 <= 0) return out;
  double h = std::sqrt(h2);
  Point2 base = e.center + d * (a / dist);
  Point2 off = perp(d / dist) * h;
  for (Point2 p : {base + off, base - off}) {
    double t = arc_param(e, p);
    if (t > 1e-13 && t < 1 - 1e-13) out.push_back(t);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> edge_segment_hits(const Edge& e, Point2 a, Point2 b) {
  std::vector<double> out;
  Point2 s = b - a;
  if (!e.is_arc()) {
    Point2 d = e.to - e.from;
    double den = cross(d, s);
    if (std::abs(den) < 1e-300) return out;
    Point2 w = a - e.from;
    double t = cross(w, s) / den;
    double u = cross(w, d) / den;
    if (t > 1e-13 && t < 1 - 1e-13 && u >= -1e-13 && u <= 1 + 1e-13) out.push_back(t);
    return out;
  }
  // Line-circle intersection, then restrict to the segment and the arc.
  Point2 f = a - e.center;
  double R = e.radius();
  double A = s.norm2(), B = 2 * dot(f, s), C = f.norm2() - R * R;
  double disc = B * B - 4 * A * C;
  if (A == 0 || disc <= 0) return out;
  double sq = std::sqrt(disc);
  for (double u : {(-B - sq) / (2 * A), (-B + sq) / (2 * A)}) {
    if (u < -1e-13 || u > 1 + 1e-13) continue;
    double t = arc_param(e, a + s * u);
    if (t > 1e-13 && t < 1 - 1e-13) out.push_back(t);
  }
  std::sort(out.begin(), out.end());
  return out;
}

double Loop::signed_area() const {
  double a = 0;
  for (const auto& e : edges) a += e.green_term();
  return a;
}

double Loop::length() const {
  double l = 0;
  for (const auto& e : edges) l += e.length();
  return l;
}

bool Loop::is_polygonal() const {
  return std::none_of(edges.begin(), edges.end(), [](const Edge& e) { return e.is_arc(); });
}

std::vector<Point2> Loop::vertices() const {
  std::vector<Point2> v;
  v.reserve(edges.size());
  for (const auto& e : edges) v.push_back(e.from);
  return v;
}

Loop Loop::reversed() const {
  Loop l;
  l.edges.reserve(edges.size());
  for (auto it = edges.rbegin(); it != edges.rend(); ++it) l.edges.push_back(it->reversed());
  return l;
}

Box Loop::bbox() const {
  Box b;
  for (const auto& e : edges) b.expand(e.bbox());
  return b;
}

void validate_loop(const Loop& loop) {
  if (loop.edges.empty()) throw ValidationError("loop has no edges");
  double scale = 1.0;
  for (const auto& e : loop.edges) scale = std::max({scale, std::abs(e.from.x), std::abs(e.from.y)});
  for (std::size_t i = 0; i < loop.edges.size(); ++i) {
    const Edge& e = loop.edges[i];
    if (!std::isfinite(e.from.x) || !std::isfinite(e.from.y) || !std::isfinite(e.to.x) || !std::isfinite(e.to.y))
      throw ValidationError("non-finite coordinate");
    const Edge& next = loop.edges[(i + 1) % loop.edges.size()];
    if (distance(e.to, next.from) > 1e-9 * scale) throw ValidationError("loop is not closed at edge " + std::to_string(i));
    if (e.is_arc()) {
      if (!(std::abs(e.sweep) < kTwoPi)) throw ValidationError("arc sweep out of range at edge " + std::to_string(i));
      double r0 = distance(e.from, e.center), r1 = distance(e.to, e.center);
      if (std::abs(r0 - r1) > 1e-9 * std::max(1.0, r0)) throw ValidationError("arc endpoints not equidistant at edge " + std::to_string(i));
    }
  }
  if (!loop.is_polygonal() || loop.edges.size() < 4) return;
  // Proper crossings between non-adjacent segments, pruned by x-extent.
  std::size_t n = loop.edges.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  auto xmin = [&](std::size_t i) { return std::min(loop.edges[i].from.x, loop.edges[i].to.x); };
  auto xmax = [&](std::size_t i) { return std::max(loop.edges[i].from.x, loop.edges[i].to.x); };
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return xmin(a) < xmin(b); });
  for (std::size_t oi = 0; oi < n; ++oi) {
    std::size_t i = order[oi];
    const Edge& a = loop.edges[i];
    for (std::size_t oj = oi + 1; oj < n && xmin(order[oj]) <= xmax(i); ++oj) {
      std::size_t j = order[oj];
      if ((i + 1) % n == j || (j + 1) % n == i) continue;
      const Edge& b = loop.edges[j];
      Point2 d1 = a.to - a.from, d2 = b.to - b.from;
      double o1 = cross(d1, b.from - a.from), o2 = cross(d1, b.to - a.from);
      double o3 = cross(d2, a.from - b.from), o4 = cross(d2, a.to - b.from);
      double tol = 1e-12 * scale * scale;
      if (((o1 > tol && o2 < -tol) || (o1 < -tol && o2 > tol)) && ((o3 > tol && o4 < -tol) || (o3 < -tol && o4 > tol)))
        throw ValidationError("loop self-intersects at edges " + std::to_string(i) + " and " + std::to_string(j));
    }
  }
}

Region::Region(std::vector<Loop> loops) : loops_(std::move(loops)) {
  for (const auto& l : loops_) validate_loop(l);
  if (loops_.size() == 1 && loops_[0].signed_area() < 0) loops_[0] = loops_[0].reversed();
}

Region Region::polygon(std::vector<Point2> v) {
  if (v.size() < 3) throw ValidationError("polygon needs at least 3 vertices");
  Loop l;
  for (std::size_t i = 0; i < v.size(); ++i) l.edges.push_back(Edge::segment(v[i], v[(i + 1) % v.size()]));
  return Region({l});
}

Region Region::rectangle(Point2 lo, Point2 hi) {
  if (!(hi.x > lo.x && hi.y > lo.y)) throw ValidationError("degenerate rectangle");
  return polygon({lo, {hi.x, lo.y}, hi, {lo.x, hi.y}});
}

Region Region::square(Point2 c, double side) {
  double h = side / 2;
  return rectangle({c.x - h, c.y - h}, {c.x + h, c.y + h});
}

Region Region::regular_polygon(int n, Point2 c, double R, double phase) {
  if (n < 3 || !(R > 0)) throw DomainError("regular polygon needs n >= 3 and R > 0");
  std::vector<Point2> v(n);
  for (int i = 0; i < n; ++i) v[i] = c + unit_vector(phase + kTwoPi * i / n) * R;
  return polygon(std::move(v));
}

Region Region::disk(Point2 c, double r) {
  if (!(r > 0)) throw DomainError("disk radius must be positive");
  Loop l;
  l.edges.push_back(Edge::arc(c + Point2{r, 0}, c, kPi));
  l.edges.push_back(Edge::arc(l.edges[0].to, c, kPi));
  l.edges[1].to = l.edges[0].from;
  return Region({l});
}

Region Region::from_parts(std::span<const Region> parts) {
  Region r;
  for (const auto& p : parts)
    for (const auto& l : p.loops()) r.loops_.push_back(l);
  return r;
}

bool Region::is_polygonal() const {
  return std::all_of(loops_.begin(), loops_.end(), [](const Loop& l) { return l.is_polygonal(); });
}

Box Region::bbox() const {
  Box b;
  for (const auto& l : loops_) b.expand(l.bbox());
  return b;
}

std::vector<Point2> Region::vertices() const {
  std::vector<Point2> v;
  for (const auto& l : loops_)
    for (const auto& e : l.edges) v.push_back(e.from);
  return v;
}

std::vector<Edge> Region::edges() const {
  std::vector<Edge> out;
  for (const auto& l : loops_) out.insert(out.end(), l.edges.begin(), l.edges.end());
  return out;
}

double area(const Region& r) {
  double a = 0;
  for (const auto& l : r.loops()) a += l.signed_area();
  return a;
}

double perimeter(const Region& r) {
  double p = 0;
  for (const auto& l : r.loops()) p += l.length();
  return p;
}

Point2 centroid(const Region& r) {
  // Polygonal loops use the shoelace moments; arcs are sampled finely.
  double A = 0, mx = 0, my = 0;
  for (const auto& l : r.loops()) {
    for (const auto& e : l.edges) {
      int pieces = e.is_arc() ? std::max(8, static_cast<int>(std::abs(e.sweep) * 2000)) : 1;
      for (int k = 0; k < pieces; ++k) {
        Point2 p = e.point_at(static_cast<double>(k) / pieces), q = e.point_at(static_cast<double>(k + 1) / pieces);
        double c = cross(p, q);
        A += c;
        mx += (p.x + q.x) * c;
        my += (p.y + q.y) * c;
      }
    }
  }
  if (A == 0) throw DomainError("centroid of a zero-area region");
  return {mx / (3 * A), my / (3 * A)};
}

bool contains(const Region& r, Point2 p) {
  int winding = 0;
  for (const auto& l : r.loops()) {
    for (const auto& e : l.edges) {
      if (!e.is_arc()) {
        const Point2 a = e.from, b = e.to;
        if (a.y <= p.y) {
          if (b.y > p.y && cross(b - a, p - a) > 0) ++winding;
        } else if (b.y <= p.y && cross(b - a, p - a) < 0) {
          --winding;
        }
        continue;
      }
      // Horizontal ray to +x against the circle, restricted to the arc.
      double R = e.radius();
      double dy = p.y - e.center.y;
      if (std::abs(dy) >= R) continue;
      double dx = std::sqrt(R * R - dy * dy);
      double start = std::atan2(e.from.y - e.center.y, e.from.x - e.center.x);
      for (double sx : {-dx, dx}) {
        double x = e.center.x + sx;
        if (x <= p.x) continue;
        double phi = std::atan2(dy, sx);
        if (!angle_on_arc(phi, start, e.sweep)) continue;
        // Half-open rule at the arc end points avoids double counting.
        double t = arc_param(e, {x, p.y});
        if (t >= 1.0 - 1e-15) continue;
        double dydphi = R * std::cos(phi) * (e.sweep > 0 ? 1 : -1);
        if (t <= 1e-15) {
          Point2 tan = e.tangent_at(0);
          if (tan.y == 0) continue;
          dydphi = tan.y;
        }
        winding += dydphi > 0 ? 1 : -1;
      }
    }
  }
  return winding != 0;
}

double boundary_distance(const Region& r, Point2 p) {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& l : r.loops())
    for (const auto& e : l.edges) d = std::min(d, point_edge_distance(p, e));
  return d;
}

Point2 RigidMotion::apply(Point2 p) const {
  double c = std::cos(angle), s = std::sin(angle);
  return Point2{c * p.x - s * p.y, s * p.x + c * p.y} + translation;
}

Edge RigidMotion::apply(const Edge& e) const {
  Edge out = e;
  out.from = apply(e.from);
  out.to = apply(e.to);
  if (e.is_arc()) out.center = apply(e.center);
  return out;
}

Region RigidMotion::apply(const Region& r) const {
  std::vector<Loop> loops;
  for (const auto& l : r.loops()) {
    Loop m;
    for (const auto& e : l.edges) m.edges.push_back(apply(e));
    loops.push_back(std::move(m));
  }
  return Region(std::move(loops));
}

RigidMotion RigidMotion::compose(const RigidMotion& other) const {
  RigidMotion m;
  m.angle = angle + other.angle;
  RigidMotion rot{angle, {}};
  m.translation = rot.apply(other.translation) + translation;
  return m;
}

RigidMotion RigidMotion::inverse() const {
  RigidMotion inv{-angle, {}};
  inv.translation = -inv.apply(translation);
  return inv;
}

Region translated(const Region& r, Point2 v) { return RigidMotion{0.0, v}.apply(r); }

Region scaled(const Region& r, double f, Point2 about) {
  if (!(f > 0)) throw DomainError("scale factor must be positive");
  auto map = [&](Point2 p) { return about + (p - about) * f; };
  std::vector<Loop> loops;
  for (const auto& l : r.loops()) {
    Loop m;
    for (const auto& e : l.edges) {
      Edge s = e;
      s.from = map(e.from);
      s.to = map(e.to);
      if (e.is_arc()) s.center = map(e.center);
      m.edges.push_back(s);
    }
    loops.push_back(std::move(m));
  }
  return Region(std::move(loops));
}

bool is_convex_polygon(const Region& r) {
  if (r.loops().size() != 1 || !r.is_polygonal()) return false;
  auto v = r.loops()[0].vertices();
  std::size_t n = v.size();
  if (n < 3) return false;
  double scale = 0;
  for (auto p : v) scale = std::max(scale, p.norm2());
  for (std::size_t i = 0; i < n; ++i) {
    Point2 a = v[i], b = v[(i + 1) % n], c = v[(i + 2) % n];
    if (cross(b - a, c - b) < -kRelTol * std::max(1.0, scale)) return false;
  }
  return true;
}

std::vector<Point2> convex_hull(std::vector<Point2> pts) {
  std::sort(pts.begin(), pts.end(), [](Point2 a, Point2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Point2> h(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= 0) --k;
    h[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

double diameter(const Region& r) {
  std::vector<Point2> pts;
  for (const auto& l : r.loops()) {
    for (const auto& e : l.edges) {
      pts.push_back(e.from);
      if (!e.is_arc()) continue;
      // Axis-extremal points plus a uniform sample of the arc.
      double r = e.radius();
      double start = std::atan2(e.from.y - e.center.y, e.from.x - e.center.x);
      for (int k = 0; k < 4; ++k)
        if (angle_on_arc(k * kPi / 2, start, e.sweep)) pts.push_back(e.center + unit_vector(k * kPi / 2) * r);
      for (int k = 1; k < 64; ++k) pts.push_back(e.point_at(k / 64.0));
    }
  }
  auto hull = convex_hull(std::move(pts));
  double best = 0;
  for (std::size_t i = 0; i < hull.size(); ++i)
    for (std::size_t j = i + 1; j < hull.size(); ++j) best = std::max(best, distance(hull[i], hull[j]));
  return best;
}

TorusSpec TorusSpec::make(int alpha, int beta) {
  if (alpha <= 0 || alpha % 2 != 0) throw DomainError("torus alpha must be an even positive integer");
  if (beta < 2) throw DomainError("torus beta must be at least 2");
  TorusSpec t;
  t.alpha = alpha;
  t.beta = beta;
  return t;
}

Point2 TorusSpec::canonicalize(Point2 p) const {
  double V = v().x, W = w().y;
  auto reduce = [](double x, double P) {
    double r = x - P * std::floor(x / P);
    // Half-open on the left: (0, P].
    if (r <= 0) r += P;
    if (r > P) r -= P;
    return r;
  };
  return {reduce(p.x, V), reduce(p.y, W)};
}

}  // namespace isoclus
