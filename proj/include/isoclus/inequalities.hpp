#pragma once

#include <vector>

#include "isoclus/geom.hpp"
#include "isoclus/report.hpp"

namespace isoclus {

/// Isoperimetric P >= 2 sqrt(pi |E|), Cheeger ratio P/|E| >= 2 sqrt(pi)/sqrt|E|,
/// and P >= 2 diam for single-loop regions (omitted otherwise).
std::vector<BoundReport> classic_inequality_checks(const Region& r);

/// |E| <= pi (diam/2)^2.
BoundReport isodiametric_check(const Region& r);

}  // namespace isoclus
