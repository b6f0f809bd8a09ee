#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "doctest.h"
#include "isoclus/bounds.hpp"
#include "isoclus/errors.hpp"
#include "isoclus/geom.hpp"
#include "isoclus/hex_tiling.hpp"
#include "isoclus/stability.hpp"
#include "oracles.hpp"

using namespace isoclus;
using doctest::Approx;

namespace {

const double kL = std::pow(12.0, 0.25) / 3;

std::vector<Point2> hexagon_vertices(double area_value, double phase = 0) {
  Region h = Region::regular_polygon(6, {0, 0}, regular_unit_ngon_side(6), phase);
  return scaled(h, std::sqrt(area_value)).loops()[0].vertices();
}

Region unit_area(const std::vector<Point2>& v) {
  Region r = Region::polygon(v);
  return scaled(r, 1 / std::sqrt(area(r)), centroid(r));
}

}  // namespace

TEST_CASE("arc function values") {
  CHECK(arc(0) == 1.0);
  CHECK(arc(kPi / 8) == Approx(kPi / 2).epsilon(1e-10));
  CHECK(std::abs(arc(kPi / 8) - kPi / 2) <= 1e-10);
  CHECK_THROWS_AS(arc(-1e-3), DomainError);
  // Round trip through the closed form of a segment with half-angle phi.
  for (double phi : {1e-3, 0.2, 0.9, 1.5, 2.2, 3.0}) {
    double r = 1 / (2 * std::sin(phi));
    double a = r * r / 2 * (2 * phi - std::sin(2 * phi));
    CHECK(arc(a) == Approx(2 * phi * r).epsilon(1e-11));
  }
  for (double t : {0.5, 2.0})
    for (double a : {1e-3, 0.1, 0.4}) CHECK(arc_t(a, t) == Approx(t * arc(a / (t * t))).epsilon(1e-14));
}

TEST_CASE("arc monotone, convex then concave") {
  double prev = arc(0);
  for (int i = 1; i <= 1000; ++i) {
    double a = 10.0 * i / 1000;
    double v = arc(a);
    CHECK(v > prev);
    prev = v;
  }
  const int m = 200;
  double h = (kPi / 8) / (m + 1);
  for (int i = 1; i <= m; ++i) {
    double a = i * h;
    CHECK(arc(a - h) - 2 * arc(a) + arc(a + h) >= -1e-10);
  }
  double hc = 1e-3;
  for (double a = kPi / 8 + 0.01; a < 3; a += 0.05) CHECK(arc(a - hc) - 2 * arc(a) + arc(a + hc) <= 1e-10);
  double d2 = (arc(2e-3) - 2 * arc(1e-3) + arc(0)) / 1e-6;
  CHECK(d2 > 0);
  double eta = fit_arc_eta(0.05);
  CHECK(eta > 0);
  for (int i = 1; i <= 500; ++i) {
    double a = 0.05 * i / 500;
    CHECK(arc(a) >= 1 + eta * a * a - 1e-15);
  }
}

TEST_CASE("bulged polygon geometry") {
  auto v = hexagon_vertices(1.0);
  for (double a : {1e-3, 1e-2, -1e-2}) {
    std::vector<double> areas(6, 0.0);
    areas[2] = a;
    Region e = bulged_polygon(v, areas);
    CHECK(area(e) == Approx(1.0 + a).epsilon(1e-12));
    double l = distance(v[2], v[3]);
    CHECK(perimeter(e) == Approx(5 * l + arc_t(std::abs(a), l)).epsilon(1e-12));
  }
}

TEST_CASE("chordal check") {
  auto v = hexagon_vertices(1.0);
  Region pi = Region::polygon(v);
  ChordalResult same = chordal_check(pi, pi);
  CHECK(std::abs(same.chordal.slack) <= 1e-12);
  CHECK(std::abs(same.dido.slack) <= 1e-12);
  for (double a : {1e-3, 1e-2}) {
    std::vector<double> areas(6, 0.0);
    areas[1] = a;
    ChordalResult one = chordal_check(bulged_polygon(v, areas), pi);
    CHECK(one.gaps[1] == Approx(a).epsilon(1e-10));
    CHECK(std::abs(one.dido.slack) <= 1e-8 * one.dido.lhs);
    CHECK(one.chordal.satisfied);
    areas[4] = a;
    ChordalResult two = chordal_check(bulged_polygon(v, areas), pi);
    CHECK(two.chordal.slack > 1e-12);
    CHECK(two.chordal.satisfied);
  }
  std::vector<double> big(6, 0.0);
  big[0] = 0.2;
  CHECK_THROWS_AS(chordal_check(bulged_polygon(v, big), pi), PreconditionError);
  Region wide = Region::regular_polygon(6, {0, 0}, 1.5);
  CHECK_THROWS_AS(chordal_check(wide, wide), PreconditionError);
}

TEST_CASE("regular n-gon fit") {
  Region h = regular_unit_ngon(6);
  CHECK(area(h) == Approx(1.0).epsilon(1e-14));
  CHECK(perimeter(h) == Approx(2 * std::pow(12.0, 0.25)).epsilon(1e-14));
  NgonFit f = fit_regular_ngon(h, 6);
  CHECK(f.hd <= 1e-12);
  CHECK(std::abs(f.deficit) <= 1e-12);
  RigidMotion rot{0.3, {0.7, -0.2}};
  NgonFit g = fit_regular_ngon(rot.apply(h), 6);
  CHECK(g.hd <= 1e-8);
  double period = kPi / 3;
  double diff = std::fmod(std::abs(g.motion.angle - 0.3) + period / 2, period) - period / 2;
  CHECK(std::abs(diff) <= 1e-8);
  CHECK(std::abs(g.deficit) <= 1e-12);
  for (int n : {3, 5, 8}) {
    NgonFit k = fit_regular_ngon(RigidMotion{1.1, {2, 3}}.apply(regular_unit_ngon(n)), n);
    CHECK(k.hd <= 1e-8);
  }
  CHECK_THROWS_AS(fit_regular_ngon(Region::polygon({{0, 0}, {2, 0}, {0.2, 0.2}, {0, 2}}), 4), DomainError);
  CHECK_THROWS_AS(fit_regular_ngon(scaled(h, 2), 6), DomainError);
}

TEST_CASE("n-gon fit under perturbation and rigid motion") {
  auto v = regular_unit_ngon(6).loops()[0].vertices();
  v[0] = v[0] * 1.01;
  Region p = unit_area(v);
  NgonFit f = fit_regular_ngon(p, 6);
  REQUIRE(f.ratio);
  CHECK(f.deficit > 0);
  CHECK(std::isfinite(*f.ratio));
  CHECK(*f.ratio > 0);
  MESSAGE("one displaced vertex: hd ", f.hd, " deficit ", f.deficit, " ratio ", *f.ratio);
  RigidMotion m{2.0, {-1.5, 0.25}};
  NgonFit g = fit_regular_ngon(m.apply(p), 6);
  CHECK(g.hd == Approx(f.hd).epsilon(1e-8));
  CHECK(g.deficit == Approx(f.deficit).epsilon(1e-8));
}

TEST_CASE("n-gon variance bound") {
  BoundReport reg = ngon_variance_bound(regular_unit_ngon(6));
  CHECK(std::abs(reg.lhs) <= 1e-24);
  CHECK(std::abs(reg.rhs) <= 1e-12);
  CHECK(reg.satisfied);
  auto v = regular_unit_ngon(6).loops()[0].vertices();
  for (auto& p : v) p = {p.x * 1.05, p.y * 0.95};
  BoundReport sq = ngon_variance_bound(unit_area(v));
  CHECK(sq.lhs > 0);
  REQUIRE(sq.fitted_constant);
  CHECK(*sq.fitted_constant > 0);
  std::mt19937_64 rng(42);
  std::normal_distribution<double> noise(0, 1e-3);
  double worst = 0;
  for (int i = 0; i < 100; ++i) {
    auto w = regular_unit_ngon(6).loops()[0].vertices();
    for (auto& p : w) p = p + Point2{noise(rng), noise(rng)};
    BoundReport r = ngon_variance_bound(unit_area(w));
    REQUIRE(r.fitted_constant);
    worst = std::max(worst, *r.fitted_constant);
  }
  CHECK(std::isfinite(worst));
  MESSAGE("empirical C(6) for the variance form: ", worst);
}

TEST_CASE("hexagon unit inequality") {
  Region h = regular_unit_ngon(6);
  HexagonInequality eq = hexagon_unit_inequality(h, h);
  CHECK(std::abs(eq.report.slack) <= 1e-12);
  CHECK(eq.sym_diff == 0.0);
  CHECK(eq.hd <= 1e-9);

  double a = 0.01;
  auto v = hexagon_vertices(1 - a);
  std::vector<double> areas(6, 0.0);
  areas[3] = a;
  Region e = bulged_polygon(v, areas);
  HexagonInequality one = hexagon_unit_inequality(e, Region::polygon(v));
  CHECK(one.report.satisfied);
  REQUIRE(one.report.fitted_constant);
  CHECK(*one.report.fitted_constant > 0);

  auto big = hexagon_vertices(1.01);
  Region e2 = bulged_polygon(big, std::vector<double>(6, -0.01 / 6));
  REQUIRE(area(e2) == Approx(1.0).epsilon(1e-12));
  HexagonInequality inner = hexagon_unit_inequality(e2, Region::polygon(big));
  CHECK(inner.report.rhs == Approx(kHexPerimeter * (1 + 0.005)).epsilon(1e-12));
  CHECK(inner.report.slack >= 0);

  CHECK_THROWS_AS(hexagon_unit_inequality(scaled(h, 1.1), scaled(h, 1.1)), DomainError);
}

TEST_CASE("minimum cost assignment against enumeration") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0, 1);
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t n = 1 + trial % 6;
    std::vector<std::vector<double>> c(n, std::vector<double>(n));
    for (auto& row : c)
      for (auto& x : row) x = u(rng);
    auto p = min_cost_assignment(c);
    double got = 0;
    for (std::size_t i = 0; i < n; ++i) got += c[i][p[i]];
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    double best = 1e300;
    do {
      double s = 0;
      for (std::size_t i = 0; i < n; ++i) s += c[i][perm[i]];
      best = std::min(best, s);
    } while (std::next_permutation(perm.begin(), perm.end()));
    CHECK(got == Approx(best).epsilon(1e-12));
  }
}

TEST_CASE("asymmetry of the honeycomb and its translates") {
  TorusSpec t = TorusSpec::make(2, 2);
  Cluster h = torus_honeycomb(t);
  AsymmetryResult a = alpha_asymmetry(h);
  CHECK(a.alpha <= 1e-9);
  std::vector<Region> moved;
  Point2 v{0.3 * std::sqrt(3.0) * kL, 0.7 * kL};
  for (const auto& c : h.chambers()) moved.push_back(translated(c, v));
  AsymmetryResult b = alpha_asymmetry(Cluster::on_torus(moved, t));
  CHECK(b.alpha <= 1e-6);
  CHECK_THROWS_AS(alpha_asymmetry(Cluster::in_plane(h.chambers())), DomainError);
}

TEST_CASE("three-edge perturbation") {
  TorusSpec t = TorusSpec::make(2, 2);
  for (double eps : {1e-3, 1e-2, 5e-2}) {
    Cluster e = three_edge_perturbation(t, eps);
    for (const auto& c : e.chambers()) CHECK(area(c) == Approx(1.0).epsilon(1e-12));
    // Three kinked edges, each of length 2 sqrt((l/2)^2 + eps^2).
    double dp = 3 * (2 * std::sqrt(kL * kL / 4 + eps * eps) - kL);
    CHECK(cluster_perimeter(e) - 4 * 3 * kL == Approx(dp).epsilon(1e-8));
    BoundReport hales = hales_torus(e);
    CHECK(hales.slack > 0);
    AsymmetryResult a = alpha_asymmetry(e);
    // Each of three cells trades a triangle of area l eps / 2 on two sides.
    CHECK(a.alpha == Approx(1.5 * kL * eps).epsilon(1e-6));
    Cluster h = torus_honeycomb(t);
    double pix = 0;
    for (std::size_t i = 0; i < e.size(); ++i)
      pix += oracle::scanline_area(e.chambers()[i].loops()[0].vertices(), h.chambers()[i].loops()[0].vertices(),
                                   [](bool x, bool y) { return x != y; }, 20000);
    CHECK(a.alpha <= 0.5 * pix * (1 + 1e-3) + 1e-6);
    CHECK(a.alpha == Approx(0.5 * pix).epsilon(2e-2));
  }
}

TEST_CASE("asymmetry invariant under lattice translation") {
  TorusSpec t = TorusSpec::make(2, 2);
  Cluster e = three_edge_perturbation(t, 1e-2);
  double base = alpha_asymmetry(e).alpha;
  for (Point2 v : {Point2{std::sqrt(3.0) * kL, 0}, Point2{std::sqrt(3.0) * kL / 2, 1.5 * kL},
                   Point2{-std::sqrt(3.0) * kL / 2, 1.5 * kL}}) {
    std::vector<Region> moved;
    for (const auto& c : e.chambers()) moved.push_back(translated(c, v));
    CHECK(alpha_asymmetry(Cluster::on_torus(moved, t)).alpha == Approx(base).epsilon(1e-6));
  }
}

TEST_CASE("kappa estimate") {
  TorusSpec t = TorusSpec::make(2, 2);
  std::vector<Cluster> fam;
  for (double eps : {1e-3, 1e-2, 5e-2}) fam.push_back(three_edge_perturbation(t, eps));
  KappaEstimate k = kappa_estimate(fam);
  CHECK(k.kappa > 0);
  double hi = *std::max_element(k.ratios.begin(), k.ratios.end());
  CHECK(hi / k.kappa <= 5);
  KappaEstimate single = kappa_estimate({three_edge_perturbation(t, 0.1)});
  CHECK(single.kappa > 0);
  fam.push_back(torus_honeycomb(t));
  CHECK_THROWS_AS(kappa_estimate(fam), PreconditionError);
  CHECK_THROWS_AS(kappa_estimate({}), DomainError);
}
