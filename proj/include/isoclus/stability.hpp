#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "isoclus/geom.hpp"
#include "isoclus/report.hpp"

namespace isoclus {

/// Length of the circular arc enclosing area a above a unit chord.
double arc(double a);
/// Same for a chord of length t: t * arc(a / t^2).
double arc_t(double a, double t);
/// Half-angle of that arc; the arc radius is 1 / (2 sin phi).
double arc_half_angle(double a);
/// Largest eta on the sample grid with arc(a) >= 1 + eta a^2 for a in (0, amax].
double fit_arc_eta(double amax, int samples = 2000);

/// Polygon with side i replaced by the circular arc enclosing `areas[i]`
/// beyond the chord (negative areas bulge inward).
Region bulged_polygon(const std::vector<Point2>& vertices, const std::vector<double>& areas);

struct ChordalResult {
  std::vector<double> sides;
  /// Area between side i of Pi and the matching boundary piece of E.
  std::vector<double> gaps;
  /// P(E) >= sum_i arc_{l_i}(a_i)
  BoundReport dido;
  /// P(E) >= P(Pi) arc(|E d Pi| / P(Pi))
  BoundReport chordal;
};
ChordalResult chordal_check(const Region& e, const Region& pi);

/// Unit-area regular n-gon centered at the origin with a vertex on the positive x axis.
Region regular_unit_ngon(int n);
double regular_unit_ngon_side(int n);

struct NgonFit {
  int n = 0;
  RigidMotion motion;
  bool reflected = false;
  double hd = 0.0;
  /// P(Pi)^2 - (n l_n)^2
  double deficit = 0.0;
  std::optional<double> ratio;
};
/// Best rigid placement of the unit regular n-gon onto a convex unit-area Pi.
NgonFit fit_regular_ngon(const Region& pi, int n);

/// Convex unit-area n-gons near the regular one with 0 < deficit <= deficit_max:
/// vertices get Gaussian noise at a per-sample log-uniform scale, then are rescaled.
std::vector<Region> random_ngon_corpus(int n, int count, double deficit_max, std::uint64_t seed);

/// Checks c_n * deficit >= sum (r_i - mean r)^2 + sum (l_i - mean l)^2.
BoundReport ngon_variance_bound(const Region& pi, double c_n = 10.0);

struct HexagonInequality {
  BoundReport report;
  double sym_diff = 0.0;
  double hd = 0.0;
  Region h_star;
};
/// P(E) >= P(H) + P(H)/2 (|Pi| - |E|) + c1 (|E d Pi|^2 + hd(dPi, dH_*)^2), checked at
/// c1 = 0 with the largest admissible c1 reported as the fitted constant.
HexagonInequality hexagon_unit_inequality(const Region& e, const Region& pi);

struct AsymmetryResult {
  double alpha = 0.0;
  double t = 0.0;
  double s = 0.0;
  /// permutation[i] = honeycomb label matched to chamber i.
  std::vector<std::size_t> permutation;
};
AsymmetryResult alpha_asymmetry(const Cluster& e);

/// Honeycomb on t with the three edges at one triple junction kinked by eps
/// in the same rotational sense; chamber areas stay exactly 1.
Cluster three_edge_perturbation(const TorusSpec& t, double eps);

struct KappaEstimate {
  double kappa = 0.0;
  std::vector<double> ratios;
  std::vector<double> alphas;
};
KappaEstimate kappa_estimate(const std::vector<Cluster>& family);

/// Minimum-cost perfect matching on a square matrix; returns column per row.
std::vector<std::size_t> min_cost_assignment(const std::vector<std::vector<double>>& cost);

}  // namespace isoclus
