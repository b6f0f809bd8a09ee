#include <algorithm>
#include <cmath>

#include "isoclus/errors.hpp"
#include "isoclus/partition.hpp"

namespace isoclus {

namespace {

Region wedge(Point2 o, double t0, double t1, double radius) {
  std::vector<Point2> v{o};
  int steps = std::max(1, static_cast<int>(std::ceil((t1 - t0) / (kPi / 4))));
  for (int i = 0; i <= steps; ++i) v.push_back(o + unit_vector(t0 + (t1 - t0) * i / steps) * radius);
  return Region::polygon(std::move(v));
}

/// |A ∩ wedge(t0, t1)|, summed over convex sub-wedges of at most a right angle.
double wedge_area(const Region& a, Point2 o, double t0, double t1, double radius) {
  double total = 0;
  int parts = std::max(1, static_cast<int>(std::ceil((t1 - t0) / (kPi / 2))));
  for (int i = 0; i < parts; ++i) {
    double a0 = t0 + (t1 - t0) * i / parts, a1 = t0 + (t1 - t0) * (i + 1) / parts;
    if (a1 - a0 <= 0) continue;
    total += intersection_area(a, wedge(o, a0, a1, radius));
  }
  return total;
}

double max_distance(const Region& r, Point2 o) {
  double m = 0;
  for (const auto& e : r.edges()) {
    m = std::max(m, distance(e.from, o));
    if (e.is_arc()) m = std::max(m, distance(e.center, o) + e.radius());
  }
  return m;
}

/// First hit of the ray from o at angle phi with the boundary of a convex polygon.
Point2 ray_hit(const std::vector<Point2>& poly, Point2 o, double phi) {
  Point2 u = unit_vector(phi);
  double best = 1e300;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    Point2 a = poly[i], b = poly[(i + 1) % poly.size()];
    Point2 s = b - a;
    double den = cross(u, s);
    if (std::abs(den) < 1e-300) continue;
    double t = cross(a - o, s) / den;
    double w = cross(a - o, u) / den;
    if (t > 0 && w >= -1e-12 && w <= 1 + 1e-12) best = std::min(best, t);
  }
  return o + u * best;
}

double radial_projection_length(const std::vector<Point2>& poly, Point2 o, double phi0, double phi1) {
  if (phi1 < phi0) std::swap(phi0, phi1);
  std::vector<double> cuts{phi0, phi1};
  for (auto v : poly) {
    double a = std::atan2(v.y - o.y, v.x - o.x);
    // Every lift of the corner angle that lands inside the range.
    double base = a + kTwoPi * std::ceil((phi0 - a) / kTwoPi);
    for (double t = base; t < phi1; t += kTwoPi)
      if (t > phi0) cuts.push_back(t);
  }
  std::sort(cuts.begin(), cuts.end());
  double len = 0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    len += distance(ray_hit(poly, o, cuts[i]), ray_hit(poly, o, cuts[i + 1]));
  return len;
}

}  // namespace

SurgeryResult surgery_partition(const Region& q0, const Region& q1, const Region& a, int m) {
  if (m < 1) throw DomainError("surgery_partition needs M >= 1");
  double area_a = a.empty() ? 0.0 : area(a);
  if (!(area_a > 0)) throw DomainError("surgery_partition needs |A| > 0");
  if (!is_convex_polygon(q0) || !is_convex_polygon(q1)) throw DomainError("surgery_partition needs square Q0 and Q1");
  Point2 o = centroid(q1);
  double s1 = std::sqrt(area(q1)), s0 = std::sqrt(area(q0));
  if (distance(centroid(q0), o) > 1e-9 * s1) throw PreconditionError("Q0 and Q1 must be concentric");
  Box b0 = q0.bbox(), b1 = q1.bbox();
  if (!(b0.lo.x > b1.lo.x && b0.lo.y > b1.lo.y && b0.hi.x < b1.hi.x && b0.hi.y < b1.hi.y))
    throw PreconditionError("Q0 must be compactly contained in Q1");

  SurgeryResult res;
  SurgeryPlan& plan = res.plan;
  plan.center = o;
  plan.d = 0.5 * (s1 - s0);
  plan.s = std::max(1, static_cast<int>(std::ceil(plan.d * std::sqrt(static_cast<double>(m)) / std::sqrt(area_a))));
  plan.k = m / plan.s;
  plan.r = m % plan.s;
  int sectors = plan.k + (plan.r > 0 ? 1 : 0);
  double chamber_area = area_a / m;
  double radius = 2.0 * max_distance(a, o) + 1.0;

  plan.rays.push_back(0.0);
  for (int j = 0; j + 1 < sectors; ++j) {
    double lo = plan.rays.back();
    double target = plan.s * chamber_area;
    double a0 = lo, a1 = kTwoPi;
    for (int it = 0; it < 200 && a1 - a0 > 1e-15; ++it) {
      double mid = 0.5 * (a0 + a1);
      (wedge_area(a, o, lo, mid, radius) < target ? a0 : a1) = mid;
    }
    plan.rays.push_back(0.5 * (a0 + a1));
  }
  plan.rays.push_back(kTwoPi);

  std::vector<Region> chambers;
  chambers.reserve(m);
  for (int j = 0; j < sectors; ++j) {
    int count = j < plan.k ? plan.s : plan.r;
    Region sector = sectors == 1 ? a : boolean(a, wedge(o, plan.rays[j], plan.rays[j + 1], radius), BoolOp::intersect);
    std::vector<double> radii;
    Region rest = sector;
    for (int i = 0; i + 1 < count; ++i) {
      double r0 = 0, r1 = max_distance(rest, o) * (1 + 1e-12);
      for (int it = 0; it < 200 && r1 - r0 > 1e-15 * r1; ++it) {
        double mid = 0.5 * (r0 + r1);
        (disk_intersection_area(rest, o, mid) < chamber_area ? r0 : r1) = mid;
      }
      double rho = 0.5 * (r0 + r1);
      radii.push_back(rho);
      chambers.push_back(clip_to_disk(rest, o, rho, true));
      rest = clip_to_disk(rest, o, rho, false);
    }
    chambers.push_back(rest);
    plan.radii.push_back(std::move(radii));
  }

  auto outer = q1.loops()[0].vertices();
  for (const auto& ch : chambers) {
    for (const auto& e : ch.edges()) {
      if (!e.is_arc()) continue;
      double phi0 = std::atan2(e.from.y - o.y, e.from.x - o.x);
      double proj = radial_projection_length(outer, o, phi0, phi0 + e.sweep);
      res.max_arc_excess = std::max(res.max_arc_excess, e.length() - proj);
    }
  }

  res.cluster = Cluster::in_region(std::move(chambers), q1);
  double p_e = cluster_perimeter(res.cluster);
  double p_a = reduced_perimeter(a);
  double frame = area(q1) - area(q0);
  double scale = frame * std::sqrt(m / area_a);
  res.report = make_report("surgery_perimeter", p_e, kConstructionCeiling * scale + p_a, Sense::le,
                           {area(q0), area(q1), area_a, static_cast<double>(m)});
  res.report.fitted_constant = (p_e - p_a) / scale;
  return res;
}

}  // namespace isoclus
