#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "isoclus/geom.hpp"
#include "isoclus/report.hpp"

namespace isoclus {

/// Ceiling used for the constant-bearing side of the construction bounds; the
/// fitted constants are reported separately and never assumed.
inline constexpr double kConstructionCeiling = 10.0;

struct SurgeryPlan {
  Point2 center;
  double d = 0.0;
  int s = 0;
  int k = 0;
  int r = 0;
  /// Ray angles in [0, 2pi]; sector j spans rays[j]..rays[j+1].
  std::vector<double> rays;
  /// Arc radii per sector, inner to outer.
  std::vector<std::vector<double>> radii;
};

struct SurgeryResult {
  Cluster cluster;
  SurgeryPlan plan;
  BoundReport report;
  /// max over arcs of (arc length - radial projection onto the outer square).
  double max_arc_excess = 0.0;
};

/// Splits A (inside the frame q1 \ q0) into M equal-area chambers by radial
/// sectors from the common center followed by circular arcs about it.
SurgeryResult surgery_partition(const Region& q0, const Region& q1, const Region& a, int m);

/// Cuts r by the line {x . u = c}, u = (cos direction, sin direction); the
/// first part {x . u <= c} has area `target`. Polygonal regions only.
std::pair<Region, Region> equal_area_cut(const Region& r, double target, double direction);

struct ReassemblyLedger {
  std::size_t interior_count = 0;
  std::size_t boundary_count = 0;
  /// Boundary cell indices in merge order (ascending piece area, ties by index).
  std::vector<std::size_t> piece_order;
  std::vector<double> piece_areas;
  /// Line offsets of the cuts, in the normalized (unit-area) frame.
  std::vector<double> cut_positions;
  /// For every boundary chamber, the cell indices contributing to it.
  std::vector<std::vector<std::size_t>> compositions;
};

struct ReassemblyResult {
  Cluster cluster;
  ReassemblyLedger ledger;
  BoundReport lower;
  BoundReport upper;
};

/// Equal-area partition of omega from the hexagonal tiling of cell area |omega|/N:
/// interior cells stay whole, boundary pieces are merged in ascending order.
ReassemblyResult boundary_reassembly_partition(const Region& omega, int n, Point2 offset = {});

struct CompetitorResult {
  Cluster cluster;
  BoundReport report;
  std::size_t dropped = 0;
  std::size_t hexagons = 0;
  std::size_t surgery_chambers = 0;
  /// Indices of chambers of E copied unchanged into F.
  std::vector<std::size_t> kept;
};

CompetitorResult competitor_build(const Region& omega, const Cluster& e, const Region& ql, int n, double mu,
                                  Point2 offset = {});

struct SkeletonPlacement {
  int v = 0;
  int o = 0;
  int r = 0;
  std::vector<Region> squares;
};

/// Places m squares of the given areas (each <= delta) in a column-major grid
/// of delta-cells inside the rectangle `strip`, v cells across its short side.
SkeletonPlacement skeleton_grid_place(const Region& strip, int m, double delta, const std::vector<double>& areas);

}  // namespace isoclus
