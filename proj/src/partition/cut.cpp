#include <algorithm>
#include <cmath>

#include "isoclus/errors.hpp"
#include "isoclus/partition.hpp"

namespace isoclus {

std::pair<Region, Region> equal_area_cut(const Region& r, double target, double direction) {
  double total = area(r);
  if (!(target > 0 && target < total)) throw DomainError("equal_area_cut target must lie strictly between 0 and |r|");
  if (!r.is_polygonal()) throw UnsupportedOperation("equal_area_cut: arc-bounded regions are not supported");
  Point2 u = unit_vector(direction);
  double lo = 1e300, hi = -1e300;
  for (auto v : r.vertices()) {
    lo = std::min(lo, dot(v, u));
    hi = std::max(hi, dot(v, u));
  }
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    double a = halfplane_area(r, u, mid);
    if (std::abs(a - target) <= 1e-15 * total) {
      lo = hi = mid;
      break;
    }
    (a < target ? lo : hi) = mid;
  }
  double c = 0.5 * (lo + hi);
  return {clip_halfplane(r, u, c), clip_halfplane(r, -u, -c)};
}

}  // namespace isoclus
