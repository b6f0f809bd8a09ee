#include <cmath>
#include <string>

#include "isoclus/errors.hpp"
#include "isoclus/partition.hpp"

namespace isoclus {

SkeletonPlacement skeleton_grid_place(const Region& strip, int m, double delta, const std::vector<double>& areas) {
  if (m < 1) throw DomainError("skeleton_grid_place needs m >= 1");
  if (!(delta > 0)) throw DomainError("skeleton_grid_place needs delta > 0");
  if (static_cast<int>(areas.size()) != m) throw DomainError("skeleton_grid_place needs one area per square");
  Box b = strip.bbox();
  bool wide = b.width() >= b.height();
  double short_side = wide ? b.height() : b.width();
  double long_side = wide ? b.width() : b.height();
  double cell = std::sqrt(delta);
  SkeletonPlacement out;
  // v cells of side sqrt(delta) fit across the short side, and no more.
  out.v = static_cast<int>(std::floor(short_side / cell * (1 + 1e-12)));
  if (out.v < 1) throw PreconditionError("v sqrt(delta) <= d/2 needs v >= 1: the strip is thinner than one cell");
  out.o = m / out.v;
  out.r = m % out.v;
  int columns = out.o + (out.r > 0 ? 1 : 0);
  if (columns * cell > long_side * (1 + 1e-12))
    throw PreconditionError("(o+1) sqrt(delta) <= strip length violated: " + std::to_string(columns) +
                            " columns of side " + std::to_string(cell) + " exceed " + std::to_string(long_side));
  for (int j = 0; j < m; ++j) {
    if (!(areas[j] > 0 && areas[j] <= delta * (1 + 1e-12)))
      throw DomainError("skeleton square areas must lie in (0, delta]");
    int col = j / out.v, row = j % out.v;
    double along = (col + 0.5) * cell, across = (row + 0.5) * cell;
    Point2 c = wide ? Point2{b.lo.x + along, b.lo.y + across} : Point2{b.lo.x + across, b.lo.y + along};
    out.squares.push_back(Region::square(c, std::min(std::sqrt(areas[j]), cell)));
  }
  return out;
}

}  // namespace isoclus
