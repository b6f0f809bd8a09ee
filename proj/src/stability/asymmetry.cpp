#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "isoclus/errors.hpp"
#include "isoclus/hex_tiling.hpp"
#include "isoclus/stability.hpp"

namespace isoclus {

namespace {

const int kGrid = 64;

struct Scene {
  TorusSpec t;
  std::vector<Region> e;
  std::vector<double> e_area;
  std::vector<Point2> e_center;
  std::vector<double> e_radius;
  std::vector<Region> h;
  std::vector<Point2> h_center;
  double reach = 0;
};

double wrap_delta(double d, double period) { return d - period * std::round(d / period); }

/// Cluster distance to v + H for the best relabeling; fills perm.
double distance_at(const Scene& sc, Point2 v, std::vector<std::size_t>* perm) {
  std::size_t n = sc.e.size();
  std::vector<std::vector<double>> cost(n, std::vector<double>(n));
  double period_x = sc.t.v().x, period_y = sc.t.w().y;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Point2 hc = sc.h_center[j] + v;
      double dx = wrap_delta(sc.e_center[i].x - hc.x, period_x);
      double dy = wrap_delta(sc.e_center[i].y - hc.y, period_y);
      double overlap = 0;
      if (std::hypot(dx, dy) < sc.e_radius[i] + sc.reach)
        overlap = torus_intersection_area(sc.e[i], translated(sc.h[j], v), sc.t);
      cost[i][j] = sc.e_area[i] + 1.0 - 2 * overlap;
    }
  }
  auto p = min_cost_assignment(cost);
  double total = 0;
  for (std::size_t i = 0; i < n; ++i) total += cost[i][p[i]];
  if (perm) *perm = std::move(p);
  return std::max(0.0, 0.5 * total);
}

}  // namespace

AsymmetryResult alpha_asymmetry(const Cluster& e) {
  if (!e.on_torus()) throw DomainError("alpha_asymmetry needs a torus tiling");
  const TorusSpec& t = *e.torus();
  if (e.size() != static_cast<std::size_t>(t.alpha * t.beta))
    throw DomainError("alpha_asymmetry needs alpha * beta chambers");
  if (std::abs(e.exterior_area()) > 1e-9 * t.area()) throw DomainError("alpha_asymmetry needs a tiling (empty exterior)");
  Scene sc{t, e.chambers(), {}, {}, {}, {}, {}, 0};
  for (const auto& r : sc.e) {
    sc.e_area.push_back(area(r));
    Point2 c = centroid(r);
    sc.e_center.push_back(c);
    double rad = 0;
    for (auto p : r.vertices()) rad = std::max(rad, distance(p, c));
    sc.e_radius.push_back(rad);
  }
  HexTiling h = generate_torus(t);
  for (const auto& c : h.cells) {
    sc.h.push_back(c.region);
    sc.h_center.push_back(c.center);
  }
  sc.reach = h.side() * (1 + 1e-9);

  double ux = std::sqrt(3.0) * t.ell, uy = t.ell;
  auto at = [&](double tt, double ss) { return Point2{tt * ux, ss * uy}; };
  AsymmetryResult best;
  best.alpha = std::numeric_limits<double>::infinity();
  // t in [0, 1), s in [0, 3/2): one fundamental domain of the honeycomb lattice.
  for (int i = 0; i < kGrid; ++i) {
    for (int j = 0; j < kGrid; ++j) {
      double tt = static_cast<double>(i) / kGrid, ss = 1.5 * j / kGrid;
      double d = distance_at(sc, at(tt, ss), nullptr);
      if (d < best.alpha) {
        best.alpha = d;
        best.t = tt;
        best.s = ss;
      }
    }
  }
  double step_t = 1.0 / kGrid, step_s = 1.5 / kGrid;
  while (step_t > 1e-9 && best.alpha > 0) {
    bool moved = false;
    for (int dx = -1; dx <= 1; ++dx)
      for (int dy = -1; dy <= 1; ++dy) {
        if (!dx && !dy) continue;
        double tt = best.t + dx * step_t, ss = best.s + dy * step_s;
        double d = distance_at(sc, at(tt, ss), nullptr);
        if (d < best.alpha) {
          best.alpha = d;
          best.t = tt;
          best.s = ss;
          moved = true;
        }
      }
    if (!moved) {
      step_t *= 0.5;
      step_s *= 0.5;
    }
  }
  distance_at(sc, at(best.t, best.s), &best.permutation);
  return best;
}

Cluster three_edge_perturbation(const TorusSpec& t, double eps) {
  HexTiling h = generate_torus(t);
  using Key = std::pair<long long, long long>;
  auto key = [](Point2 p) { return Key{std::llround(p.x * 1e9), std::llround(p.y * 1e9)}; };
  std::map<Key, int> count;
  for (const auto& c : h.cells)
    for (auto p : c.region.loops()[0].vertices()) ++count[key(p)];
  Point2 mid{t.v().x / 2, t.w().y / 2};
  Point2 p{};
  double best = std::numeric_limits<double>::infinity();
  for (const auto& c : h.cells)
    for (auto q : c.region.loops()[0].vertices())
      if (count[key(q)] == 3 && distance(q, mid) < best) {
        best = distance(q, mid);
        p = q;
      }
  if (!std::isfinite(best)) throw DomainError("honeycomb has no interior triple junction");
  Key kp = key(p);
  // Kink point for each edge leaving p, keyed by the far end.
  std::map<Key, Point2> kink;
  for (const auto& c : h.cells) {
    auto v = c.region.loops()[0].vertices();
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (key(v[i]) != kp) continue;
      for (Point2 q : {v[(i + 1) % v.size()], v[(i + v.size() - 1) % v.size()]}) {
        Point2 d = q - p;
        kink[key(q)] = (p + q) * 0.5 + perp(d) / d.norm() * eps;
      }
    }
  }
  std::vector<Region> out;
  for (const auto& c : h.cells) {
    auto v = c.region.loops()[0].vertices();
    std::vector<Point2> w;
    for (std::size_t i = 0; i < v.size(); ++i) {
      Point2 a = v[i], b = v[(i + 1) % v.size()];
      w.push_back(a);
      if (key(a) == kp && kink.count(key(b)))
        w.push_back(kink[key(b)]);
      else if (key(b) == kp && kink.count(key(a)))
        w.push_back(kink[key(a)]);
    }
    out.push_back(Region::polygon(w));
  }
  return Cluster::on_torus(std::move(out), t);
}

KappaEstimate kappa_estimate(const std::vector<Cluster>& family) {
  if (family.empty()) throw DomainError("kappa_estimate needs a non-empty family");
  KappaEstimate out;
  out.kappa = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < family.size(); ++k) {
    const Cluster& e = family[k];
    double a = alpha_asymmetry(e).alpha;
    if (!(a > 1e-12)) throw PreconditionError("kappa_estimate: member " + std::to_string(k + 1) + " has alpha = 0");
    double ph = 0.5 * kHexPerimeter * e.size();
    double r = (cluster_perimeter(e) - ph) / (ph * a * a);
    out.alphas.push_back(a);
    out.ratios.push_back(r);
    out.kappa = std::min(out.kappa, r);
  }
  return out;
}

}  // namespace isoclus
