#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "isoclus/geom.hpp"

namespace isoclus {

/// Pointy-top regular hexagon of area delta at lattice position (row, col).
/// Rows advance by 3/2 side vertically; odd rows shift right by half a width.
/// Vertices come from an integer half-unit lattice, so neighbouring cells
/// share bit-identical vertices.
struct HexCell {
  int row = 0;
  int col = 0;
  Point2 center;
  Region region;
};

struct HexTiling {
  double delta = 1.0;
  Point2 origin;
  std::vector<HexCell> cells;
  std::optional<TorusSpec> torus;

  double side() const;
  /// Chambers in cell order (torus labels follow the same order).
  Cluster as_cluster() const;
};

double hex_side(double delta);
Point2 hex_center(int row, int col, double delta, Point2 origin = {});
Region hex_cell(int row, int col, double delta, Point2 origin = {});

/// All cells of area delta whose bounding boxes meet the bounding box of `bbox`.
HexTiling generate_plane(double delta, const Region& bbox, Point2 origin = {});
/// Unit-area honeycomb of the torus; label h = row * beta + col + 1, bottom row first.
HexTiling generate_torus(const TorusSpec& t);
Cluster torus_honeycomb(const TorusSpec& t);

struct HexClassification {
  std::vector<std::size_t> interior;
  std::vector<std::size_t> boundary;
  std::size_t k = 0;
  std::size_t h = 0;
};

/// Interior: compactly contained cells (clearance 1e-9). Boundary: other cells
/// meeting the closure of omega.
HexClassification classify(const HexTiling& tiling, const Region& omega);
bool hex_compactly_contained(const Region& cell, const Region& omega, double circumradius);

}  // namespace isoclus
