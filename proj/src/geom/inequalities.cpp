#include "isoclus/inequalities.hpp"

#include <cmath>

namespace isoclus {

std::vector<BoundReport> classic_inequality_checks(const Region& r) {
  double a = area(r), p = perimeter(r);
  double sqpi = std::sqrt(kPi);
  std::vector<BoundReport> out;
  out.push_back(make_report("isoperimetric", p, 2 * std::sqrt(kPi * a), Sense::ge, {a, p}));
  out.push_back(make_report("cheeger_inequality", p / a, 2 * sqpi / std::sqrt(a), Sense::ge, {a, p}));
  if (r.loops().size() == 1) {
    double d = diameter(r);
    out.push_back(make_report("perimeter_diameter", p, 2 * d, Sense::ge, {p, d}));
  }
  return out;
}

BoundReport isodiametric_check(const Region& r) {
  double a = area(r), d = diameter(r);
  return make_report("isodiametric", a, kPi * 0.25 * d * d, Sense::le, {a, d});
}

}  // namespace isoclus
