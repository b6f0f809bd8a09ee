#include "isoclus/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <cstdio>

namespace isoclus {

double report_tolerance(double lhs, double rhs) { return 1e-9 * std::max({std::abs(lhs), std::abs(rhs), 1.0}); }

std::string digest_of(std::initializer_list<double> values) {
  std::uint64_t h = 1469598103934665603ULL;
  for (double v : values) {
    unsigned char bytes[sizeof(double)];
    std::memcpy(bytes, &v, sizeof(double));
    for (unsigned char b : bytes) {
      h ^= b;
      h *= 1099511628211ULL;
    }
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

BoundReport make_report(std::string name, double lhs, double rhs, Sense sense, std::initializer_list<double> inputs) {
  BoundReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.sense = sense;
  r.slack = sense == Sense::le ? rhs - lhs : lhs - rhs;
  double tol = report_tolerance(lhs, rhs);
  r.satisfied = sense == Sense::gt ? r.slack > tol : r.slack >= -tol;
  r.digest = digest_of(inputs);
  return r;
}

}  // namespace isoclus
