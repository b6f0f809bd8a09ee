#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "isoclus/errors.hpp"
#include "isoclus/hex_tiling.hpp"
#include "isoclus/partition.hpp"

namespace isoclus {

namespace {

std::string fmt(double x) { return std::to_string(x); }

double boundary_gap(const Region& inner, const Region& outer) {
  double d = std::numeric_limits<double>::infinity();
  for (auto v : inner.vertices()) d = std::min(d, boundary_distance(outer, v));
  for (auto v : outer.vertices()) d = std::min(d, boundary_distance(inner, v));
  return d;
}

bool strictly_inside(const Box& b, const Box& q) {
  return b.lo.x > q.lo.x && b.lo.y > q.lo.y && b.hi.x < q.hi.x && b.hi.y < q.hi.y;
}

}  // namespace

CompetitorResult competitor_build(const Region& omega, const Cluster& e, const Region& ql, int n, double mu,
                                  Point2 offset) {
  if (n < 1 || static_cast<int>(e.size()) != n) throw DomainError("competitor_build needs an N-cluster with N >= 1");
  if (!is_convex_polygon(ql) || ql.loops()[0].edges.size() != 4) throw DomainError("Q_l must be a square");
  Box qb = ql.bbox();
  double l = std::sqrt(area(ql));
  if (std::abs(qb.width() - l) > 1e-9 * l || std::abs(qb.height() - l) > 1e-9 * l)
    throw DomainError("Q_l must be an axis-aligned square");
  double a_omega = area(omega);
  double s = std::sqrt(a_omega / n);
  double cell_area = a_omega / n;

  double gap = boundary_gap(ql, omega);
  if (!contains(omega, ql.bbox().center()) || !(gap > 4 * mu * s))
    throw PreconditionError("d(dQ_l, dOmega) > 4 mu sqrt(|Omega|/N) violated: " + fmt(gap) + " <= " + fmt(4 * mu * s));
  if (!(l >= 6 * mu * s))
    throw PreconditionError("l >= 6 mu sqrt(|Omega|/N) violated: " + fmt(l) + " < " + fmt(6 * mu * s));
  double diam_h = 2 * kHexSide;
  if (!(mu >= diam_h)) throw PreconditionError("mu >= diam(H) violated: " + fmt(mu) + " < " + fmt(diam_h));

  double d = 2 * mu * s;
  Region qld = Region::square(qb.center(), l + d);
  Box qdb = qld.bbox();
  for (std::size_t i = 0; i < e.size(); ++i) {
    const Region& ch = e.chambers()[i];
    if (!ch.bbox().overlaps(qdb) || intersection_area(ch, qld) <= 0) continue;
    double dm = diameter(ch);
    if (dm > mu * s * (1 + 1e-9))
      throw PreconditionError("diam(E(" + std::to_string(i + 1) + ")) <= mu sqrt(|Omega|/N) violated: " + fmt(dm) +
                              " > " + fmt(mu * s));
  }

  CompetitorResult res;
  std::vector<std::size_t> dropped;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (strictly_inside(e.chambers()[i].bbox(), qdb))
      dropped.push_back(i);
    else
      res.kept.push_back(i);
  }

  HexTiling tiling = generate_plane(cell_area, ql, offset);
  std::vector<Region> hexes;
  for (const auto& c : tiling.cells)
    if (intersection_area(c.region, ql) > 1e-12 * cell_area) hexes.push_back(c.region);

  // The cover must sit inside the union of the dropped chambers.
  double covered = 0;
  for (const auto& h : hexes) {
    Box hb = h.bbox();
    for (std::size_t i : dropped)
      if (e.chambers()[i].bbox().overlaps(hb)) covered += intersection_area(h, e.chambers()[i]);
  }
  double cover_area = hexes.size() * cell_area;
  if (std::abs(covered - cover_area) > 1e-9 * cover_area)
    throw PreconditionError("hexagon cover of Q_l inside the chambers compactly contained in Q_{l+d} violated: " +
                            fmt(covered) + " of " + fmt(cover_area));
  if (hexes.size() > dropped.size())
    throw PreconditionError("k - h >= 0 violated: more cover hexagons than dropped chambers");

  std::vector<Region> f;
  for (std::size_t i : res.kept) f.push_back(e.chambers()[i]);
  for (const auto& h : hexes) f.push_back(h);
  std::size_t m = dropped.size() - hexes.size();
  if (m > 0) {
    std::vector<Region> inner;
    for (std::size_t i : dropped) inner.push_back(e.chambers()[i]);
    Region u = unite_all(inner);
    Region a = boolean(u, unite_all(hexes), BoolOp::difference);
    SurgeryResult sr = surgery_partition(ql, qld, a, static_cast<int>(m));
    for (const auto& ch : sr.cluster.chambers()) f.push_back(ch);
  }
  res.dropped = dropped.size();
  res.hexagons = hexes.size();
  res.surgery_chambers = m;
  if (e.ambient())
    res.cluster = Cluster::in_region(std::move(f), *e.ambient());
  else
    res.cluster = Cluster::in_plane(std::move(f));

  double p_f = cluster_perimeter(res.cluster);
  double p_out = cluster_perimeter(e, Window{ql, true});
  double base = area(ql) * 0.5 * kHexPerimeter * std::sqrt(n / a_omega);
  double scale = perimeter(ql) * mu;
  res.report = make_report("competitor_perimeter", p_f, base + p_out + kConstructionCeiling * scale, Sense::le,
                           {a_omega, l, static_cast<double>(n), mu});
  res.report.fitted_constant = (p_f - base - p_out) / scale;
  return res;
}

}  // namespace isoclus
