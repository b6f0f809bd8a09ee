#pragma once

#include "isoclus/geom.hpp"
#include "isoclus/report.hpp"

namespace isoclus {

/// P(H)/2 * sqrt(N/|Omega|): honeycomb perimeter per unit area at cell area |Omega|/N.
double hex_density(int n, double omega_area);

/// Slack within 1e-9 of zero.
bool is_equality(const BoundReport& r);

/// P(E) >= P(H)/2 (min{|E(0)|,1} + sum |E(i)|) on the torus.
BoundReport hales_torus(const Cluster& c);
/// P(E) > P(H)/2 sum |E(i)| for a bounded planar cluster.
BoundReport hales_plane(const Cluster& c);
/// P(E;O) >= |O| P(H)/2 sqrt(N/|Omega|) - P(O), Omega the ambient of E.
BoundReport local_lower_bound(const Cluster& e, const Region& o);

struct EquiResult {
  /// P(E;Q_l) - |Q_l| P(H)/2 sqrt(N/|Omega|)
  double residual = 0.0;
  /// |r| <= C P(Q_l)
  BoundReport dia;
  /// |r| <= C P(Q_l)^{3/2} (N/|Omega|)^{1/4}
  BoundReport indeco;
};
EquiResult equidistribution_residual(const Cluster& e, const Region& ql, int n, const Region& omega);

}  // namespace isoclus
