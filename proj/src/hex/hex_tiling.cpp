#include "isoclus/hex_tiling.hpp"

#include <algorithm>
#include <cmath>

#include "isoclus/errors.hpp"

namespace isoclus {

namespace {

// Vertex offsets in half-width / half-side units, counter-clockwise.
constexpr int kVx[6] = {1, 1, 0, -1, -1, 0};
constexpr int kVy[6] = {-1, 1, 2, 1, -1, -2};

struct Lattice {
  double half_w;
  double half_s;
};

Lattice lattice(double delta) {
  double s = hex_side(delta);
  return {0.5 * std::sqrt(3.0) * s, 0.5 * s};
}

bool edges_within(const Region& omega, const Region& cell, double clearance) {
  for (const auto& oe : omega.edges()) {
    for (const auto& ce : cell.edges()) {
      if (!edge_segment_hits(oe, ce.from, ce.to).empty()) return true;
      if (point_edge_distance(ce.from, oe) <= clearance) return true;
      if (!oe.is_arc()) {
        if (point_edge_distance(oe.from, ce) <= clearance || point_edge_distance(oe.to, ce) <= clearance) return true;
      } else {
        for (int k = 0; k <= 32; ++k)
          if (point_edge_distance(oe.point_at(k / 32.0), ce) <= clearance) return true;
      }
    }
  }
  return false;
}

}  // namespace

double hex_side(double delta) {
  if (!(delta > 0)) throw DomainError("hexagon cell area must be positive");
  return std::sqrt(delta) * kHexSide;
}

double HexTiling::side() const { return hex_side(delta); }

Point2 hex_center(int row, int col, double delta, Point2 origin) {
  Lattice L = lattice(delta);
  int X = 2 * col + (row & 1);
  int Y = 3 * row;
  return {origin.x + X * L.half_w, origin.y + Y * L.half_s};
}

Region hex_cell(int row, int col, double delta, Point2 origin) {
  Lattice L = lattice(delta);
  int X = 2 * col + (row & 1);
  int Y = 3 * row;
  std::vector<Point2> v(6);
  for (int i = 0; i < 6; ++i) v[i] = {origin.x + (X + kVx[i]) * L.half_w, origin.y + (Y + kVy[i]) * L.half_s};
  return Region::polygon(std::move(v));
}

Cluster HexTiling::as_cluster() const {
  std::vector<Region> ch;
  ch.reserve(cells.size());
  for (const auto& c : cells) ch.push_back(c.region);
  if (torus) return Cluster::on_torus(std::move(ch), *torus);
  return Cluster::in_plane(std::move(ch));
}

HexTiling generate_plane(double delta, const Region& bbox, Point2 origin) {
  if (!(delta > 0)) throw DomainError("hexagon cell area must be positive");
  if (bbox.empty()) throw DomainError("generate_plane needs a non-empty bounding region");
  Box b = bbox.bbox();
  Lattice L = lattice(delta);
  double s = 2 * L.half_s;
  double w = 2 * L.half_w;
  HexTiling t;
  t.delta = delta;
  t.origin = origin;
  int k0 = static_cast<int>(std::floor((b.lo.y - origin.y - s) / (1.5 * s))) - 1;
  int k1 = static_cast<int>(std::ceil((b.hi.y - origin.y + s) / (1.5 * s))) + 1;
  int h0 = static_cast<int>(std::floor((b.lo.x - origin.x - w) / w)) - 1;
  int h1 = static_cast<int>(std::ceil((b.hi.x - origin.x + w) / w)) + 1;
  for (int k = k0; k <= k1; ++k) {
    for (int h = h0; h <= h1; ++h) {
      Point2 c = hex_center(k, h, delta, origin);
      Box cb{{c.x - L.half_w, c.y - s}, {c.x + L.half_w, c.y + s}};
      if (!cb.overlaps(b)) continue;
      t.cells.push_back({k, h, c, hex_cell(k, h, delta, origin)});
    }
  }
  return t;
}

HexTiling generate_torus(const TorusSpec& spec) {
  TorusSpec t = TorusSpec::make(spec.alpha, spec.beta);
  Lattice L = lattice(1.0);
  HexTiling out;
  out.delta = 1.0;
  out.origin = {L.half_w, 2 * L.half_s};
  out.torus = t;
  for (int k = 0; k < t.alpha; ++k)
    for (int h = 0; h < t.beta; ++h) out.cells.push_back({k, h, hex_center(k, h, 1.0, out.origin), hex_cell(k, h, 1.0, out.origin)});
  return out;
}

Cluster torus_honeycomb(const TorusSpec& t) { return generate_torus(t).as_cluster(); }

bool hex_compactly_contained(const Region& cell, const Region& omega, double circumradius) {
  Point2 c = centroid(cell);
  double scale = std::max(1.0, c.norm());
  double clearance = 1e-9 * scale;
  if (contains(omega, c) && boundary_distance(omega, c) > circumradius + clearance) return true;
  for (auto v : cell.vertices())
    if (!contains(omega, v)) return false;
  for (auto v : omega.vertices())
    if (contains(cell, v)) return false;
  return !edges_within(omega, cell, clearance);
}

HexClassification classify(const HexTiling& tiling, const Region& omega) {
  if (tiling.torus) throw DomainError("classify needs a planar tiling");
  if (omega.empty()) throw DomainError("classify needs a non-empty region");
  Box cover;
  for (const auto& c : tiling.cells) cover.expand(c.region.bbox());
  Box ob = omega.bbox();
  if (cover.empty() || ob.lo.x < cover.lo.x || ob.lo.y < cover.lo.y || ob.hi.x > cover.hi.x || ob.hi.y > cover.hi.y)
    throw DomainError("tiling does not cover the region");
  double R = tiling.side();
  HexClassification out;
  for (std::size_t i = 0; i < tiling.cells.size(); ++i) {
    const auto& cell = tiling.cells[i];
    Box cb = cell.region.bbox();
    if (!cb.overlaps(ob, 1e-9)) continue;
    if (hex_compactly_contained(cell.region, omega, R)) {
      out.interior.push_back(i);
      continue;
    }
    double clearance = 1e-9 * std::max(1.0, cell.center.norm());
    bool meets = false;
    for (auto v : cell.region.vertices())
      if (contains(omega, v)) meets = true;
    if (!meets) meets = contains(omega, cell.center);
    if (!meets)
      for (auto v : omega.vertices())
        if (contains(cell.region, v)) meets = true;
    if (!meets) meets = edges_within(omega, cell.region, clearance);
    if (meets) out.boundary.push_back(i);
  }
  out.k = out.interior.size();
  out.h = out.boundary.size();
  return out;
}

}  // namespace isoclus
