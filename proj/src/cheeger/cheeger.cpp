#include "isoclus/cheeger.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "../geom/geom_internal.hpp"
#include "isoclus/errors.hpp"
#include "isoclus/hex_tiling.hpp"
#include "isoclus/stability.hpp"

namespace isoclus {

namespace {

struct Line {
  Point2 p, d, n;
};

Point2 meet(const Line& a, const Line& b, double r) {
  Point2 pa = a.p + a.n * r, pb = b.p + b.n * r;
  double t = cross(pb - pa, b.d) / cross(a.d, b.d);
  return pa + a.d * t;
}

bool outside(const Line& l, double r, Point2 x) { return cross(l.d, x - (l.p + l.n * r)) < 0; }

/// Edge lines of a counter-clockwise convex polygon, starting at the smallest direction angle.
std::vector<Line> edge_lines(const std::vector<Point2>& k) {
  std::size_t n = k.size();
  std::vector<Line> lines;
  std::vector<double> angle;
  for (std::size_t i = 0; i < n; ++i) {
    Point2 a = k[i], b = k[(i + 1) % n];
    Point2 d = (b - a) / distance(a, b);
    lines.push_back({a, d, perp(d)});
    angle.push_back(std::atan2(d.y, d.x));
  }
  auto first = std::min_element(angle.begin(), angle.end()) - angle.begin();
  std::rotate(lines.begin(), lines.begin() + first, lines.end());
  return lines;
}

/// Intersection of the edge half-planes shifted inward by r: one deque sweep over
/// the angle-sorted lines, dropping constraints that become redundant.
class InnerParallel {
 public:
  explicit InnerParallel(const std::vector<Point2>& k) : lines_(edge_lines(k)), dq_(k.size()), pts_(k.size() + 1) {}

  /// Vertices of K_{-r}; empty when the set is empty.
  const std::vector<Point2>& polygon(double r) {
    out_.clear();
    std::size_t n = lines_.size();
    std::size_t head = 0, tail = 0, ph = 0, pt = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const Line& l = lines_[i];
      while (pt > ph && outside(l, r, pts_[pt - 1])) {
        --tail;
        --pt;
      }
      while (pt > ph && outside(l, r, pts_[ph])) {
        ++head;
        ++ph;
      }
      if (tail > head) {
        const Line& last = lines_[dq_[tail - 1]];
        if (std::abs(cross(last.d, l.d)) < 1e-15) {
          if (dot(last.d, l.d) < 0) return out_;
          if (outside(l, r, last.p + last.n * r)) dq_[tail - 1] = i;
          continue;
        }
        pts_[pt++] = meet(last, l, r);
      }
      dq_[tail++] = i;
    }
    while (pt > ph && outside(lines_[dq_[head]], r, pts_[pt - 1])) {
      --tail;
      --pt;
    }
    if (tail - head < 3) return out_;
    out_.assign(pts_.begin() + ph, pts_.begin() + pt);
    out_.push_back(meet(lines_[dq_[tail - 1]], lines_[dq_[head]], r));
    if (polygon_signed_area(out_) <= 0) out_.clear();
    return out_;
  }

  double area(double r) {
    const auto& v = polygon(r);
    return v.empty() ? 0.0 : polygon_signed_area(v);
  }

 private:
  std::vector<Line> lines_;
  std::vector<std::size_t> dq_;
  std::vector<Point2> pts_;
  std::vector<Point2> out_;
};

std::vector<Point2> dedupe(const std::vector<Point2>& v, double tol) {
  std::vector<Point2> out;
  for (auto p : v)
    if (out.empty() || distance(out.back(), p) > tol) out.push_back(p);
  while (out.size() > 1 && distance(out.front(), out.back()) <= tol) out.pop_back();
  // Drop straight-through vertices left by redundant constraints.
  std::vector<Point2> clean;
  for (std::size_t i = 0; i < out.size(); ++i) {
    Point2 a = out[(i + out.size() - 1) % out.size()], b = out[i], c = out[(i + 1) % out.size()];
    if (std::abs(cross(b - a, c - b)) > tol * (distance(a, b) + distance(b, c))) clean.push_back(b);
  }
  return clean;
}

/// Number of lattice cells of area delta compactly inside omega, same test as classify.
std::size_t count_interior(double delta, const Region& omega, Point2 origin) {
  Box b = omega.bbox();
  double s = hex_side(delta);
  double w = std::sqrt(3.0) * s;
  double inradius = 0.5 * w;
  int k0 = static_cast<int>(std::floor((b.lo.y - origin.y - s) / (1.5 * s))) - 1;
  int k1 = static_cast<int>(std::ceil((b.hi.y - origin.y + s) / (1.5 * s))) + 1;
  int h0 = static_cast<int>(std::floor((b.lo.x - origin.x - w) / w)) - 1;
  int h1 = static_cast<int>(std::ceil((b.hi.x - origin.x + w) / w)) + 1;
  std::size_t k = 0;
  for (int row = k0; row <= k1; ++row) {
    for (int col = h0; col <= h1; ++col) {
      Point2 c = hex_center(row, col, delta, origin);
      if (c.x < b.lo.x || c.x > b.hi.x || c.y < b.lo.y || c.y > b.hi.y || !contains(omega, c)) continue;
      double d = boundary_distance(omega, c);
      if (d > s + 1e-9 * std::max(1.0, c.norm())) {
        ++k;
      } else if (d >= inradius && hex_compactly_contained(hex_cell(row, col, delta, origin), omega, s)) {
        ++k;
      }
    }
  }
  return k;
}

}  // namespace

CheegerResult cheeger_convex(const Region& k) {
  if (!is_convex_polygon(k)) throw DomainError("cheeger_convex needs a convex polygon");
  auto v = k.loops()[0].vertices();
  if (polygon_signed_area(v) < 0) std::reverse(v.begin(), v.end());
  double ak = area(k);
  if (!(ak > 0)) throw DomainError("cheeger_convex needs positive area");
  Box b = k.bbox();
  double diam = distance(b.lo, b.hi);
  InnerParallel inner(v);
  double lo = 0, hi = diam;
  for (int it = 0; it < 200 && hi - lo > 1e-12 * diam; ++it) {
    double mid = 0.5 * (lo + hi);
    if (inner.area(mid) > 0)
      lo = mid;
    else
      hi = mid;
  }
  double inradius = lo;
  if (!(inradius > 1e-11 * diam)) throw DomainError("cheeger_convex needs a nonzero inradius");
  lo = 0;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    double f = inner.area(mid) - std::numbers::pi * mid * mid;
    if (f > 0)
      lo = mid;
    else
      hi = mid;
  }
  double r = 0.5 * (lo + hi);
  CheegerResult out;
  out.r = r;
  out.h = 1 / r;
  auto w = dedupe(inner.polygon(r), 1e-13 * diam);
  if (w.size() < 3) throw DomainError("cheeger_convex: degenerate inner parallel set");
  Loop l;
  std::size_t m = w.size();
  for (std::size_t i = 0; i < m; ++i) {
    Point2 a = w[i], c = w[(i + 1) % m], d = w[(i + 2) % m];
    Point2 n1 = -perp(c - a) / distance(a, c);
    Point2 n2 = -perp(d - c) / distance(c, d);
    Point2 p = a + n1 * r, q = c + n1 * r;
    if (l.edges.empty())
      l.edges.push_back(Edge::segment(p, q));
    else
      l.edges.push_back(Edge::segment(l.edges.back().to, q));
    double sweep = std::atan2(cross(n1, n2), dot(n1, n2));
    if (sweep > 0) l.edges.push_back(Edge::arc(q, c + n2 * r, c, sweep));
  }
  l.edges.back().to = l.edges.front().from;
  out.set = Region({l});
  return out;
}

double h_ratio(const Region& r) {
  double a = area(r);
  if (!(a > 0)) throw DomainError("h_ratio needs positive area");
  return perimeter(r) / a;
}

double hexagon_cheeger() {
  static const double value = cheeger_convex(regular_unit_ngon(6)).h;
  return value;
}

HNSandwich hn_sandwich(const Region& omega, int n, double eps) {
  if (n < 1) throw DomainError("hn_sandwich needs N >= 1");
  if (!(eps >= 0 && eps < 0.5)) throw DomainError("hn_sandwich needs 0 <= eps < 1/2");
  if (!omega.is_polygonal()) throw UnsupportedOperation("hn_sandwich needs a polygonal region");
  double a0 = area(omega);
  if (!(a0 > 0)) throw DomainError("hn_sandwich needs |Omega| > 0");
  HNSandwich out;
  out.n = n;
  out.lower = 2 * std::sqrt(std::numbers::pi) * std::pow(n, 1.5) / std::sqrt(a0);
  if (n == 1) {
    if (is_convex_polygon(omega)) {
      out.feasible = true;
      out.upper = cheeger_convex(omega).h;
      out.raw_sum = h_ratio(cheeger_convex(omega).set);
      out.delta = a0;
      out.k = 1;
    }
    return out;
  }
  const double hh = hexagon_cheeger();
  const int alphas = 48;
  const int shifts = 3;
  double lo = 1 + eps, hi = 1.5;
  // Larger exponents give larger cells and a smaller upper bound: take the first feasible one.
  for (int ia = 1; ia < alphas && !out.feasible; ++ia) {
    double a = hi - (hi - lo) * ia / alphas;
    double delta = a0 / n - a0 / std::pow(n, a);
    if (!(delta > 0)) continue;
    double side = hex_side(delta);
    double w = std::sqrt(3.0) * side;
    for (int sx = 0; sx < shifts && !out.feasible; ++sx) {
      for (int sy = 0; sy < shifts && !out.feasible; ++sy) {
        Point2 off{w * sx / shifts, 1.5 * side * sy / shifts};
        if (count_interior(delta, omega, off) < static_cast<std::size_t>(n)) continue;
        HexTiling t = generate_plane(delta, omega, off);
        HexClassification c = classify(t, omega);
        if (c.k < static_cast<std::size_t>(n)) continue;
        out.feasible = true;
        out.alpha = a;
        out.delta = delta;
        out.k = c.k;
        out.offset = off;
        out.upper = n * hh / std::sqrt(delta);
        double raw = 0;
        for (int i = 0; i < n; ++i) raw += cheeger_convex(t.cells[c.interior[i]].region).h;
        out.raw_sum = raw;
      }
    }
  }
  return out;
}

std::vector<BoundReport> hn_monotonicity(const std::vector<HNSandwich>& curve, double omega_area) {
  if (!(omega_area > 0)) throw DomainError("hn_monotonicity needs |Omega| > 0");
  std::vector<BoundReport> out;
  const double c = 2 * std::sqrt(std::numbers::pi) / std::sqrt(omega_area);
  for (std::size_t i = 0; i + 1 < curve.size(); ++i) {
    const HNSandwich& a = curve[i];
    const HNSandwich& b = curve[i + 1];
    if (b.n != a.n + 1) throw DomainError("hn_monotonicity needs consecutive N");
    double step = c * std::sqrt(static_cast<double>(b.n));
    BoundReport lower = make_report("hn_monotone_lower", b.lower, a.lower + step, Sense::ge,
                                    {static_cast<double>(a.n), omega_area});
    double closed = c * a.n * (std::sqrt(a.n + 1.0) - std::sqrt(static_cast<double>(a.n)));
    lower.normalized_residual = (lower.slack - closed) / closed;
    lower.satisfied = lower.satisfied && std::abs(*lower.normalized_residual) <= 1e-12;
    out.push_back(lower);
    if (b.upper) {
      out.push_back(make_report("hn_monotone_upper", *b.upper, a.lower + step, Sense::ge,
                                {static_cast<double>(a.n), omega_area, *b.upper}));
    }
  }
  return out;
}

double chamber_volume_floor(double hn_value, int dim) {
  if (!(hn_value > 0)) throw DomainError("chamber_volume_floor needs H_N > 0");
  if (dim < 1) throw DomainError("chamber_volume_floor needs dimension >= 1");
  double n = dim;
  double omega_n = std::pow(std::numbers::pi, n / 2) / std::tgamma(n / 2 + 1);
  return std::pow(n, n) * omega_n / (std::pow(2.0, n) * std::pow(hn_value, n));
}

std::vector<std::vector<double>> curvature_constants(const std::vector<double>& h, const std::vector<double>& areas) {
  if (h.size() != areas.size()) throw DomainError("curvature_constants needs one area per chamber");
  for (double a : areas)
    if (!(a > 0)) throw DomainError("curvature_constants needs positive areas");
  std::size_t n = h.size();
  std::vector<std::vector<double>> c(n + 1, std::vector<double>(n + 1, 0.0));
  for (std::size_t j = 1; j <= n; ++j) {
    c[j][0] = h[j - 1];
    c[0][j] = -h[j - 1];
    for (std::size_t k = j + 1; k <= n; ++k) {
      double ej = areas[j - 1], ek = areas[k - 1];
      c[j][k] = (ek * h[j - 1] - ej * h[k - 1]) / (ej + ek);
      c[k][j] = -c[j][k];
    }
  }
  return c;
}

PLaplacianBounds p_laplacian_bounds(double h, double hn_value, double p, int n) {
  if (!(p > 1)) throw DomainError("p_laplacian_bounds needs p > 1");
  if (!(h > 0) || !(hn_value > 0) || n < 1) throw DomainError("p_laplacian_bounds needs h, H_N > 0 and N >= 1");
  PLaplacianBounds out;
  out.lambda1 = std::pow(h / p, p);
  out.lambda_n = std::pow(hn_value / p, p) / std::pow(static_cast<double>(n), p - 1);
  return out;
}

}  // namespace isoclus
