#include <algorithm>
#include <cmath>

#include "isoclus/errors.hpp"
#include "isoclus/geom.hpp"

namespace isoclus {

namespace {

double wrap(double a) {
  a = std::fmod(a, kTwoPi);
  return a < 0 ? a + kTwoPi : a;
}

bool concentric(const Edge& e, Point2 c) {
  return e.is_arc() && distance(e.center, c) <= 1e-12 * std::max(1.0, e.radius());
}

/// Signed area of triangle (0, a, b) intersected with the disk of radius r at 0.
double triangle_disk_area(Point2 a, Point2 b, double r) {
  Edge s = Edge::segment(a, b);
  auto ts = edge_circle_hits(s, {0, 0}, r);
  ts.insert(ts.begin(), 0.0);
  ts.push_back(1.0);
  double total = 0;
  for (std::size_t k = 0; k + 1 < ts.size(); ++k) {
    Point2 p = s.point_at(ts[k]), q = s.point_at(ts[k + 1]);
    Point2 mid = (p + q) * 0.5;
    if (mid.norm2() <= r * r)
      total += 0.5 * cross(p, q);
    else
      total += 0.5 * r * r * std::atan2(cross(p, q), dot(p, q));
  }
  return total;
}

struct Chain2 {
  std::vector<Edge> edges;
  double in_angle = 0;
  double out_angle = 0;
  bool used = false;
};

}  // namespace

double disk_intersection_area(const Region& r, Point2 c, double rho) {
  if (!(rho > 0)) return 0.0;
  double total = 0;
  for (const auto& e : r.edges()) {
    if (!e.is_arc()) {
      total += triangle_disk_area(e.from - c, e.to - c, rho);
    } else if (concentric(e, c)) {
      double m = std::min(e.radius(), rho);
      total += 0.5 * m * m * e.sweep;
    } else {
      throw UnsupportedOperation("disk_intersection_area: arc not concentric with the disk");
    }
  }
  return total;
}

Region clip_to_disk(const Region& r, Point2 c, double rho, bool keep_inside) {
  if (!(rho > 0)) throw DomainError("clip_to_disk radius must be positive");
  double scale = std::max(1.0, rho);
  std::vector<Loop> whole;
  std::vector<Chain2> chains;
  bool any_crossing = false;
  for (const auto& loop : r.loops()) {
    std::vector<Edge> pieces;
    std::vector<bool> keep;
    for (const auto& e : loop.edges) {
      std::vector<double> ts;
      if (!concentric(e, c)) ts = edge_circle_hits(e, c, rho);
      ts.insert(ts.begin(), 0.0);
      ts.push_back(1.0);
      for (std::size_t k = 0; k + 1 < ts.size(); ++k) {
        if (ts[k + 1] - ts[k] <= 1e-15) continue;
        Edge s = e.sub(ts[k], ts[k + 1]);
        double dm = distance(e.point_at(0.5 * (ts[k] + ts[k + 1])), c);
        // Pieces lying on the circle itself are replaced by circle arcs.
        if (std::abs(dm - rho) <= 1e-12 * scale && (concentric(e, c) || s.length() <= 1e-12 * scale)) {
          pieces.push_back(s);
          keep.push_back(false);
          continue;
        }
        pieces.push_back(s);
        keep.push_back(keep_inside ? dm < rho : dm > rho);
      }
    }
    std::size_t n = pieces.size();
    std::size_t kept = static_cast<std::size_t>(std::count(keep.begin(), keep.end(), true));
    if (kept == n) {
      Loop l;
      l.edges = pieces;
      whole.push_back(l);
      continue;
    }
    if (kept == 0) continue;
    any_crossing = true;
    std::size_t start = 0;
    while (!(keep[start] && !keep[(start + n - 1) % n])) ++start;
    std::size_t i = 0;
    while (i < n) {
      std::size_t idx = (start + i) % n;
      if (!keep[idx]) {
        ++i;
        continue;
      }
      Chain2 ch;
      while (i < n && keep[(start + i) % n]) {
        ch.edges.push_back(pieces[(start + i) % n]);
        ++i;
      }
      Point2 a = ch.edges.front().from - c, b = ch.edges.back().to - c;
      ch.in_angle = std::atan2(a.y, a.x);
      ch.out_angle = std::atan2(b.y, b.x);
      chains.push_back(std::move(ch));
    }
  }
  std::vector<Loop> loops = whole;
  for (std::size_t s = 0; s < chains.size(); ++s) {
    if (chains[s].used) continue;
    Loop l;
    std::size_t cur = s;
    while (!chains[cur].used) {
      chains[cur].used = true;
      l.edges.insert(l.edges.end(), chains[cur].edges.begin(), chains[cur].edges.end());
      double phi = chains[cur].out_angle;
      std::size_t best = chains.size();
      double best_gap = 1e300;
      for (std::size_t k = 0; k < chains.size(); ++k) {
        if (chains[k].used && k != s) continue;
        double gap = keep_inside ? wrap(chains[k].in_angle - phi + 1e-13) - 1e-13
                                 : wrap(phi - chains[k].in_angle + 1e-13) - 1e-13;
        if (gap < best_gap) {
          best_gap = gap;
          best = k;
        }
      }
      if (best == chains.size()) throw ValidationError("clip_to_disk: unmatched chain");
      Point2 from = chains[cur].edges.back().to;
      Point2 to = chains[best].edges.front().from;
      if (best_gap > 1e-13) {
        double sweep = keep_inside ? best_gap : -best_gap;
        Edge arc = Edge::arc(from, c, sweep);
        arc.to = to;
        l.edges.push_back(arc);
      } else {
        l.edges.back().to = to;
      }
      cur = best;
    }
    loops.push_back(std::move(l));
  }
  if (!any_crossing && !r.empty()) {
    bool circle_inside = contains(r, c + Point2{rho, 0});
    if (circle_inside) {
      Region d = Region::disk(c, rho);
      Loop circle = d.loops()[0];
      loops.push_back(keep_inside ? circle : circle.reversed());
    }
  }
  if (loops.empty()) return Region();
  return Region(std::move(loops));
}

}  // namespace isoclus
