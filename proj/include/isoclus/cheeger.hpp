#pragma once

#include <optional>
#include <vector>

#include "isoclus/geom.hpp"
#include "isoclus/report.hpp"

namespace isoclus {

struct CheegerResult {
  double h = 0.0;
  /// Radius of the corner arcs, 1/h.
  double r = 0.0;
  /// Inner parallel set at distance r, expanded by the disk of radius r.
  Region set;
};

/// Cheeger constant of a convex polygon from |K_{-r}| = pi r^2.
CheegerResult cheeger_convex(const Region& k);
/// P(r) / |r|.
double h_ratio(const Region& r);
/// h of the unit-area regular hexagon, computed once.
double hexagon_cheeger();

struct HNSandwich {
  int n = 0;
  double lower = 0.0;
  bool feasible = false;
  /// N h(H) / sqrt(delta) for the chosen delta; unset when infeasible.
  std::optional<double> upper;
  /// Sum of the Cheeger constants of the N interior cells actually used.
  std::optional<double> raw_sum;
  double alpha = 0.0;
  double delta = 0.0;
  std::size_t k = 0;
  Point2 offset;
};

/// Lower bound 2 sqrt(pi) N^{3/2} / sqrt|Omega| and the hexagon-packing upper bound
/// with delta = |Omega|/N - |Omega|/N^a, a in (1 + eps, 3/2).
HNSandwich hn_sandwich(const Region& omega, int n, double eps);

/// Step checks on consecutive N: the lower-curve identity and
/// upper(N+1) >= lower(N) + 2 sqrt(pi) sqrt(N+1) / sqrt|Omega|.
std::vector<BoundReport> hn_monotonicity(const std::vector<HNSandwich>& curve, double omega_area);

/// n^n omega_n / (2^n H^n); pi / H^2 in the plane.
double chamber_volume_floor(double hn_value, int dim = 2);

/// (N+1) x (N+1) matrix; index 0 is the exterior, C[j][0] = h_j, C[k][j] = -C[j][k].
std::vector<std::vector<double>> curvature_constants(const std::vector<double>& h, const std::vector<double>& areas);

struct PLaplacianBounds {
  /// (h/p)^p
  double lambda1 = 0.0;
  /// (H_N/p)^p / N^{p-1}
  double lambda_n = 0.0;
};
PLaplacianBounds p_laplacian_bounds(double h, double hn_value, double p, int n);

}  // namespace isoclus
