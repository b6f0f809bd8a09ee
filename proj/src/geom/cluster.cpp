#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "isoclus/errors.hpp"
#include "isoclus/geom.hpp"
#include "geom_internal.hpp"

namespace isoclus {

namespace {

struct Piece {
  Edge edge;
  int owner = 0;
};

struct Interval {
  double lo = 0;
  double hi = 0;
  int sign = 0;
  int owner = 0;
};

/// Sums length * (c + [net != 0]) / 2 over the elementary intervals of one
/// carrier (line or circle), where c counts owners with nonzero net orientation.
double sweep_carrier(std::vector<Interval>& ivs, double unit, double merge_tol) {
  std::vector<double> cuts;
  cuts.reserve(2 * ivs.size());
  for (const auto& iv : ivs) {
    cuts.push_back(iv.lo);
    cuts.push_back(iv.hi);
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<double> merged;
  for (double c : cuts)
    if (merged.empty() || c - merged.back() > merge_tol) merged.push_back(c);
  // Snap interval ends to the merged cut list so touching ends agree.
  auto snap = [&](double x) {
    auto it = std::lower_bound(merged.begin(), merged.end(), x - merge_tol);
    return it == merged.end() ? merged.back() : *it;
  };
  for (auto& iv : ivs) {
    iv.lo = snap(iv.lo);
    iv.hi = snap(iv.hi);
  }
  double total = 0;
  std::vector<std::pair<int, int>> net;
  for (std::size_t k = 0; k + 1 < merged.size(); ++k) {
    double a = merged[k], b = merged[k + 1];
    double mid = 0.5 * (a + b);
    net.clear();
    for (const auto& iv : ivs) {
      if (iv.lo > mid || iv.hi < mid) continue;
      auto it = std::find_if(net.begin(), net.end(), [&](const auto& p) { return p.first == iv.owner; });
      if (it == net.end())
        net.emplace_back(iv.owner, iv.sign);
      else
        it->second += iv.sign;
    }
    int c = 0, sum = 0;
    for (const auto& [owner, s] : net) {
      if (s != 0) ++c;
      sum += s;
    }
    total += (b - a) * unit * (c + (sum != 0 ? 1 : 0)) / 2.0;
  }
  return total;
}

template <class Key, class Less>
std::vector<std::vector<std::size_t>> cluster_keys(const std::vector<Key>& keys, Less less, double tol,
                                                   double (*primary)(const Key&), double (*secondary)(const Key&),
                                                   double tol2) {
  std::vector<std::size_t> order(keys.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return less(keys[a], keys[b]); });
  std::vector<std::vector<std::size_t>> groups;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i + 1;
    while (j < order.size() && primary(keys[order[j]]) - primary(keys[order[j - 1]]) <= tol) ++j;
    // Split the primary run by the secondary key.
    std::vector<std::size_t> run(order.begin() + static_cast<long>(i), order.begin() + static_cast<long>(j));
    std::sort(run.begin(), run.end(), [&](auto a, auto b) { return secondary(keys[a]) < secondary(keys[b]); });
    std::size_t s = 0;
    while (s < run.size()) {
      std::size_t t = s + 1;
      while (t < run.size() && secondary(keys[run[t]]) - secondary(keys[run[t - 1]]) <= tol2) ++t;
      groups.emplace_back(run.begin() + static_cast<long>(s), run.begin() + static_cast<long>(t));
      s = t;
    }
    i = j;
  }
  return groups;
}

struct LineKey {
  double angle;
  double offset;
  Point2 dir;
};
double line_angle(const LineKey& k) { return k.angle; }
double line_offset(const LineKey& k) { return k.offset; }

struct CircleKey {
  double cx;
  double cy;
  double r;
};
double circle_x(const CircleKey& k) { return k.cx; }
double circle_y(const CircleKey& k) { return k.cy; }

double pieces_scale(const std::vector<Piece>& pieces) {
  double s = 1.0;
  for (const auto& p : pieces)
    s = std::max({s, std::abs(p.edge.from.x), std::abs(p.edge.from.y), std::abs(p.edge.to.x), std::abs(p.edge.to.y)});
  return s;
}

double dedup_length(const std::vector<Piece>& pieces) {
  double scale = pieces_scale(pieces);
  double tol = 1e-9 * scale;
  std::vector<const Piece*> segs, arcs;
  for (const auto& p : pieces) {
    if (p.edge.length() <= 1e-15 * scale) continue;
    (p.edge.is_arc() ? arcs : segs).push_back(&p);
  }
  double total = 0;

  std::vector<LineKey> lkeys;
  lkeys.reserve(segs.size());
  for (const Piece* p : segs) {
    Point2 d = p->edge.to - p->edge.from;
    d = d / d.norm();
    double ang = std::atan2(d.y, d.x);
    if (ang < 0) {
      ang += kPi;
      d = -d;
    }
    if (ang > kPi - 1e-10) {
      ang -= kPi;
      d = -d;
    }
    lkeys.push_back({ang, cross(d, p->edge.from), d});
  }
  auto lgroups = cluster_keys(
      lkeys, [](const LineKey& a, const LineKey& b) { return a.angle < b.angle; }, 1e-10, line_angle, line_offset, tol);
  for (const auto& g : lgroups) {
    Point2 d = lkeys[g[0]].dir;
    std::vector<Interval> ivs;
    for (std::size_t idx : g) {
      const Edge& e = segs[idx]->edge;
      double t0 = dot(d, e.from), t1 = dot(d, e.to);
      ivs.push_back({std::min(t0, t1), std::max(t0, t1), t1 > t0 ? 1 : -1, segs[idx]->owner});
    }
    total += sweep_carrier(ivs, 1.0, 1e-10 * scale);
  }

  std::vector<CircleKey> ckeys;
  for (const Piece* p : arcs) ckeys.push_back({p->edge.center.x, p->edge.center.y, p->edge.radius()});
  // Group by center x, then by (center y, radius) within tolerance.
  auto cgroups = cluster_keys(
      ckeys, [](const CircleKey& a, const CircleKey& b) { return a.cx < b.cx; }, tol, circle_x,
      circle_y, tol);
  for (const auto& g0 : cgroups) {
    // Split by radius.
    std::vector<std::size_t> g = g0;
    std::sort(g.begin(), g.end(), [&](auto a, auto b) { return ckeys[a].r < ckeys[b].r; });
    std::size_t s = 0;
    while (s < g.size()) {
      std::size_t t = s + 1;
      while (t < g.size() && ckeys[g[t]].r - ckeys[g[t - 1]].r <= tol) ++t;
      double r = ckeys[g[s]].r;
      std::vector<Interval> ivs;
      for (std::size_t q = s; q < t; ++q) {
        const Edge& e = arcs[g[q]]->edge;
        double start = std::atan2(e.from.y - e.center.y, e.from.x - e.center.x);
        double lo = e.sweep > 0 ? start : start + e.sweep;
        double len = std::abs(e.sweep);
        lo = std::fmod(lo, kTwoPi);
        if (lo < 0) lo += kTwoPi;
        int sign = e.sweep > 0 ? 1 : -1;
        int owner = arcs[g[q]]->owner;
        if (lo + len <= kTwoPi) {
          ivs.push_back({lo, lo + len, sign, owner});
        } else {
          ivs.push_back({lo, kTwoPi, sign, owner});
          ivs.push_back({0.0, lo + len - kTwoPi, sign, owner});
        }
      }
      total += sweep_carrier(ivs, r, 1e-10);
      s = t;
    }
  }
  return total;
}

std::vector<double> window_splits(const Edge& e, const Region& w, double tol) {
  std::vector<double> ts;
  for (const auto& we : w.edges()) {
    if (we.is_arc()) {
      auto h = edge_circle_hits(e, we.center, we.radius());
      ts.insert(ts.end(), h.begin(), h.end());
    } else {
      auto h = edge_segment_hits(e, we.from, we.to);
      ts.insert(ts.end(), h.begin(), h.end());
    }
    // Window vertices lying on the edge split collinear overlaps.
    if (!e.is_arc() && point_edge_distance(we.from, e) <= tol) {
      Point2 d = e.to - e.from;
      double t = dot(we.from - e.from, d) / d.norm2();
      if (t > 1e-12 && t < 1 - 1e-12) ts.push_back(t);
    }
  }
  std::sort(ts.begin(), ts.end());
  return ts;
}

std::vector<Piece> clip_pieces(const std::vector<Piece>& pieces, const Window& win) {
  double scale = pieces_scale(pieces);
  double tol = 1e-10 * scale;
  Box wb = win.region.bbox();
  std::vector<Piece> out;
  for (const auto& p : pieces) {
    const Edge& e = p.edge;
    if (!win.complement && !e.bbox().overlaps(wb, tol)) continue;
    if (win.complement && !e.bbox().overlaps(wb, tol)) {
      out.push_back(p);
      continue;
    }
    auto ts = window_splits(e, win.region, tol);
    ts.insert(ts.begin(), 0.0);
    ts.push_back(1.0);
    for (std::size_t k = 0; k + 1 < ts.size(); ++k) {
      if (ts[k + 1] - ts[k] <= 1e-14) continue;
      Edge s = e.sub(ts[k], ts[k + 1]);
      Point2 mid = e.point_at(0.5 * (ts[k] + ts[k + 1]));
      if (boundary_distance(win.region, mid) <= tol) continue;
      if (contains(win.region, mid) != win.complement) out.push_back({s, p.owner});
    }
  }
  return out;
}

std::vector<Piece> chamber_pieces(const Cluster& c) {
  std::vector<Piece> pieces;
  for (std::size_t i = 0; i < c.size(); ++i)
    for (const auto& e : c.chambers()[i].edges()) pieces.push_back({e, static_cast<int>(i) + 1});
  return pieces;
}

Region canonical_copy(const Region& r, const TorusSpec& t) {
  Point2 c = centroid(r);
  Point2 cc = t.canonicalize(c);
  return translated(r, cc - c);
}

std::vector<Piece> torus_pieces(const Cluster& c) {
  const TorusSpec& t = *c.torus();
  double V = t.v().x, W = t.w().y;
  double tol = 1e-10 * std::max({V, W, 1.0});
  std::vector<Piece> out;
  Region rect = Region::rectangle({0, 0}, {V, W});
  for (std::size_t i = 0; i < c.size(); ++i) {
    Region base = canonical_copy(c.chambers()[i], t);
    Box b = base.bbox();
    int ilo = static_cast<int>(std::floor(-b.hi.x / V)) - 1, ihi = static_cast<int>(std::ceil((V - b.lo.x) / V)) + 1;
    int jlo = static_cast<int>(std::floor(-b.hi.y / W)) - 1, jhi = static_cast<int>(std::ceil((W - b.lo.y) / W)) + 1;
    for (int a = ilo; a <= ihi; ++a) {
      for (int bb = jlo; bb <= jhi; ++bb) {
        Point2 shift{a * V, bb * W};
        Box sb{b.lo + shift, b.hi + shift};
        if (sb.hi.x < -tol || sb.lo.x > V + tol || sb.hi.y < -tol || sb.lo.y > W + tol) continue;
        for (const auto& e0 : base.edges()) {
          Edge e = RigidMotion{0.0, shift}.apply(e0);
          auto ts = window_splits(e, rect, tol);
          ts.insert(ts.begin(), 0.0);
          ts.push_back(1.0);
          for (std::size_t k = 0; k + 1 < ts.size(); ++k) {
            if (ts[k + 1] - ts[k] <= 1e-14) continue;
            Point2 mid = e.point_at(0.5 * (ts[k] + ts[k + 1]));
            if (mid.x < -tol || mid.x > V + tol || mid.y < -tol || mid.y > W + tol) continue;
            // Sides x = 0 and y = 0 are identified with x = V and y = W.
            if (mid.x <= tol || mid.y <= tol) continue;
            out.push_back({e.sub(ts[k], ts[k + 1]), static_cast<int>(i) + 1});
          }
        }
      }
    }
  }
  return out;
}

}  // namespace

double reduced_perimeter(const Region& r) {
  std::vector<Piece> pieces;
  for (const auto& e : r.edges()) pieces.push_back({e, 1});
  return dedup_length(pieces);
}

Cluster Cluster::in_plane(std::vector<Region> chambers) {
  if (chambers.empty()) throw DomainError("a cluster needs at least one chamber");
  Cluster c;
  c.chambers_ = std::move(chambers);
  return c;
}

Cluster Cluster::in_region(std::vector<Region> chambers, Region ambient) {
  Cluster c = in_plane(std::move(chambers));
  c.ambient_ = std::move(ambient);
  return c;
}

Cluster Cluster::on_torus(std::vector<Region> chambers, TorusSpec torus) {
  Cluster c = in_plane(std::move(chambers));
  TorusSpec::make(torus.alpha, torus.beta);
  c.torus_ = torus;
  return c;
}

double Cluster::exterior_area() const {
  double sum = 0;
  for (const auto& ch : chambers_) sum += area(ch);
  if (torus_) return torus_->area() - sum;
  if (ambient_) return area(*ambient_) - sum;
  return std::numeric_limits<double>::infinity();
}

Region Cluster::exterior() const {
  if (!ambient_) throw UnsupportedOperation("exterior region needs a planar ambient");
  Region u = unite_all(chambers_);
  if (u.empty()) return *ambient_;
  return boolean(*ambient_, u, BoolOp::difference);
}

double cluster_perimeter(const Cluster& c, const std::optional<Window>& window) {
  if (c.on_torus()) {
    if (window) throw UnsupportedOperation("windowed perimeter on the torus");
    return dedup_length(torus_pieces(c));
  }
  auto pieces = chamber_pieces(c);
  if (!window) return dedup_length(pieces);
  if (c.ambient() && c.ambient()->is_polygonal() && window->region.is_polygonal() && !window->complement) {
    double wa = area(window->region);
    double inside = intersection_area(window->region, *c.ambient());
    if (wa - inside > 1e-9 * std::max(1.0, wa)) throw DomainError("window is not contained in the ambient region");
  }
  return dedup_length(clip_pieces(pieces, *window));
}

double torus_intersection_area(const Region& a, const Region& b, const TorusSpec& t) {
  Region ca = canonical_copy(a, t), cb = canonical_copy(b, t);
  double V = t.v().x, W = t.w().y;
  Box ba = ca.bbox(), bb = cb.bbox();
  double total = 0;
  for (int i = -2; i <= 2; ++i) {
    for (int j = -2; j <= 2; ++j) {
      Point2 s{i * V, j * W};
      Box sb{bb.lo + s, bb.hi + s};
      if (!ba.overlaps(sb)) continue;
      total += intersection_area(ca, translated(cb, s));
    }
  }
  return total;
}

double cluster_distance(const Cluster& a, const Cluster& b) {
  if (a.size() != b.size()) throw DomainError("cluster_distance needs clusters with the same number of chambers");
  if (a.on_torus() != b.on_torus()) throw DomainError("cluster_distance needs the same ambient type");
  std::optional<TorusSpec> t = a.torus();
  if (t && (t->alpha != b.torus()->alpha || t->beta != b.torus()->beta))
    throw DomainError("cluster_distance needs the same torus");
  auto inter = [&](const Region& x, const Region& y) {
    return t ? torus_intersection_area(x, y, *t) : intersection_area(x, y);
  };
  std::size_t n = a.size();
  std::vector<double> aa(n), ab(n);
  std::vector<Box> ba(n), bbx(n);
  for (std::size_t i = 0; i < n; ++i) {
    aa[i] = area(a.chambers()[i]);
    ab[i] = area(b.chambers()[i]);
    ba[i] = a.chambers()[i].bbox();
    bbx[i] = b.chambers()[i].bbox();
  }
  double sum_sd = 0, cross_all = 0, ua = 0, ub = 0;
  for (std::size_t i = 0; i < n; ++i) {
    ua += aa[i];
    ub += ab[i];
    sum_sd += aa[i] + ab[i];
    for (std::size_t j = 0; j < n; ++j) {
      if (!t && !ba[i].overlaps(bbx[j])) continue;
      double x = inter(a.chambers()[i], b.chambers()[j]);
      cross_all += x;
      if (i == j) sum_sd -= 2 * x;
    }
  }
  double ext = ua + ub - 2 * cross_all;
  return 0.5 * (sum_sd + std::max(0.0, ext));
}

TorusMeasures torus_measures(const Cluster& c) {
  if (!c.on_torus()) throw DomainError("torus_measures needs a torus cluster");
  TorusMeasures m;
  for (const auto& ch : c.chambers()) m.area += area(ch);
  m.perimeter = cluster_perimeter(c);
  return m;
}

Region polygonize(const Region& r, double max_angle) {
  if (r.is_polygonal()) return r;
  std::vector<Loop> loops;
  for (const auto& l : r.loops()) {
    std::vector<Point2> pts;
    for (const auto& e : l.edges) {
      if (!e.is_arc()) {
        pts.push_back(e.from);
        continue;
      }
      int n = std::max(2, static_cast<int>(std::ceil(std::abs(e.sweep) / max_angle)));
      for (int k = 0; k < n; ++k) pts.push_back(e.point_at(static_cast<double>(k) / n));
    }
    Loop m;
    for (std::size_t i = 0; i < pts.size(); ++i) m.edges.push_back(Edge::segment(pts[i], pts[(i + 1) % pts.size()]));
    loops.push_back(std::move(m));
  }
  return Region(std::move(loops));
}

ClusterCheck check_cluster(const Cluster& c, double rel_tol) {
  ClusterCheck out;
  std::vector<Region> poly;
  poly.reserve(c.size());
  for (const auto& ch : c.chambers()) poly.push_back(polygonize(ch, 1e-3));
  std::vector<double> areas;
  std::vector<Box> boxes;
  for (const auto& p : poly) {
    areas.push_back(area(p));
    boxes.push_back(p.bbox());
  }
  for (std::size_t i = 0; i < poly.size(); ++i) {
    for (std::size_t j = i + 1; j < poly.size(); ++j) {
      double ov;
      if (c.on_torus()) {
        ov = torus_intersection_area(poly[i], poly[j], *c.torus());
      } else {
        if (!boxes[i].overlaps(boxes[j])) continue;
        ov = intersection_area(poly[i], poly[j]);
      }
      double rel = ov / std::max(1e-300, std::min(areas[i], areas[j]));
      out.max_overlap = std::max(out.max_overlap, rel);
      if (rel > rel_tol && out.ok) {
        out.ok = false;
        out.message = "chambers " + std::to_string(i + 1) + " and " + std::to_string(j + 1) + " overlap";
      }
    }
  }
  if (c.ambient()) {
    Region amb = polygonize(*c.ambient(), 1e-3);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      double excess = (areas[i] - intersection_area(poly[i], amb)) / std::max(1e-300, areas[i]);
      out.max_containment_excess = std::max(out.max_containment_excess, excess);
      if (excess > rel_tol && out.ok) {
        out.ok = false;
        out.message = "chamber " + std::to_string(i + 1) + " leaves the ambient region";
      }
    }
  }
  return out;
}

}  // namespace isoclus
