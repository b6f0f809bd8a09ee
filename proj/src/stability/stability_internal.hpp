#pragma once

#include <vector>

#include "isoclus/geom.hpp"

namespace isoclus {

struct SideSplit {
  std::vector<Point2> corners;
  std::vector<double> sides;
  std::vector<double> gaps;
};

/// Splits the boundary of e at the vertices of the convex polygon pi and
/// measures the area between each piece and its chord.
SideSplit split_at_corners(const Region& e, const Region& pi);

}  // namespace isoclus
