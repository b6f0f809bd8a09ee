#include <cmath>
#include <numbers>

#include "doctest.h"
#include "isoclus/bounds.hpp"
#include "isoclus/errors.hpp"
#include "isoclus/geom.hpp"
#include "isoclus/hex_tiling.hpp"
#include "isoclus/partition.hpp"

using namespace isoclus;
using doctest::Approx;

namespace {

const double kPH = 2 * std::pow(12.0, 0.25);
const double kL = std::pow(12.0, 0.25) / 3;

// Unit cells with centers within `radius` lattice steps of cell (0, 0).
std::vector<Region> hex_patch(double radius) {
  std::vector<Region> out;
  double step = std::sqrt(3.0) * kL;
  for (int r = -12; r <= 12; ++r)
    for (int c = -12; c <= 12; ++c)
      if (hex_center(r, c, 1.0).norm() <= radius * step + 1e-9) out.push_back(hex_cell(r, c, 1.0));
  return out;
}

}  // namespace

TEST_CASE("hales torus equality on honeycombs") {
  for (auto [a, b] : {std::pair{2, 2}, std::pair{4, 4}, std::pair{2, 6}}) {
    BoundReport r = hales_torus(torus_honeycomb(TorusSpec::make(a, b)));
    CHECK(std::abs(r.slack) <= 1e-9);
    CHECK(is_equality(r));
    CHECK(r.satisfied);
    CHECK(r.rhs == Approx(a * b * kPH / 2).epsilon(1e-12));
  }
}

TEST_CASE("hales torus with a split chamber") {
  TorusSpec t = TorusSpec::make(4, 4);
  Cluster h = torus_honeycomb(t);
  std::vector<Region> ch = h.chambers();
  auto [left, right] = equal_area_cut(ch[5], 0.5, 0.0);
  ch[5] = left;
  ch.push_back(right);
  BoundReport r = hales_torus(Cluster::on_torus(ch, t));
  // A vertical chord through the center of a pointy-top cell joins two vertices.
  CHECK(r.slack == Approx(2 * kL).epsilon(1e-9));
  CHECK(r.satisfied);
  CHECK(!is_equality(r));
}

TEST_CASE("hales torus single square") {
  TorusSpec t = TorusSpec::make(4, 4);
  for (double s : {0.1, 0.5, 1.0}) {
    BoundReport r = hales_torus(Cluster::on_torus({Region::square({1, 1}, s)}, t));
    double lhs = 4 * s, rhs = kPH / 2 * (1 + s * s);
    CHECK(r.lhs == Approx(lhs).epsilon(1e-12));
    CHECK(r.rhs == Approx(rhs).epsilon(1e-12));
    CHECK(r.satisfied == (lhs >= rhs));
  }
  CHECK_THROWS_AS(hales_torus(Cluster::on_torus({Region::square({1, 1}, 1.2)}, t)), PreconditionError);
  CHECK_THROWS_AS(hales_torus(Cluster::in_plane({Region::square({1, 1}, 0.5)})), DomainError);
}

TEST_CASE("hales plane") {
  BoundReport one = hales_plane(Cluster::in_plane({hex_cell(0, 0, 1.0)}));
  CHECK(one.slack == Approx(kPH / 2).epsilon(1e-12));
  CHECK(one.satisfied);
  BoundReport disk = hales_plane(Cluster::in_plane({Region::disk({0, 0}, 1 / std::sqrt(std::numbers::pi))}));
  CHECK(disk.lhs == Approx(2 * std::sqrt(std::numbers::pi)).epsilon(1e-12));
  CHECK(disk.lhs == Approx(3.5449).epsilon(1e-4));
  CHECK(disk.rhs == Approx(kPH / 2).epsilon(1e-12));
  CHECK(disk.satisfied);
  auto flower = hex_patch(1);
  REQUIRE(flower.size() == 7);
  BoundReport f = hales_plane(Cluster::in_plane(flower));
  // 18 outer edges plus 12 interfaces, against 7 * 3 edges.
  CHECK(f.lhs == Approx(30 * kL).epsilon(1e-12));
  CHECK(f.slack == Approx(18 * kL / 2).epsilon(1e-12));
  CHECK_THROWS_AS(hales_plane(Cluster::in_plane({Region::square({0, 0}, 2)})), PreconditionError);
}

TEST_CASE("hales plane flags agree under rescaling") {
  auto flower = hex_patch(1);
  BoundReport base = hales_plane(Cluster::in_plane(flower));
  for (double lam : {0.5, 0.9}) {
    std::vector<Region> s;
    for (const auto& r : flower) s.push_back(scaled(r, lam));
    BoundReport r = hales_plane(Cluster::in_plane(s));
    CHECK(r.satisfied == base.satisfied);
    CHECK(r.lhs == Approx(lam * base.lhs).epsilon(1e-12));
  }
}

TEST_CASE("local lower bound") {
  Region omega = Region::rectangle({0, 0}, {1, 1});
  ReassemblyResult e = boundary_reassembly_partition(omega, 256);
  BoundReport tiny = local_lower_bound(e.cluster, Region::square({0.5, 0.5}, 0.01));
  CHECK(tiny.rhs < 0);
  CHECK(tiny.satisfied);
  BoundReport mid = local_lower_bound(e.cluster, Region::square({0.5, 0.5}, 0.5));
  CHECK(mid.rhs == Approx(0.25 * kPH / 2 * 16 - 2).epsilon(1e-12));
  CHECK(mid.slack >= 0);
  // One interior cell as the window: no interface inside it.
  const Region& cell = e.cluster.chambers()[0];
  BoundReport one = local_lower_bound(e.cluster, cell);
  CHECK(one.satisfied);
  CHECK(std::abs(one.lhs) < 1e-12);
  CHECK(one.slack == Approx(kPH / 2 / 16).epsilon(1e-9));
  CHECK_THROWS_AS(local_lower_bound(e.cluster, Region::square({1, 1}, 0.5)), DomainError);
}

TEST_CASE("local lower bound is monotone over hexagon layers") {
  auto cells = hex_patch(8);
  Region omega = unite_all(cells);
  Cluster grid = Cluster::in_region(cells, omega);
  bool was = false;
  for (int layer = 0; layer <= 6; ++layer) {
    Region o = unite_all(hex_patch(layer));
    BoundReport r = local_lower_bound(grid, o);
    if (was) CHECK(r.satisfied);
    was = r.satisfied;
  }
  CHECK(was);
}

TEST_CASE("equidistribution residual on an exact honeycomb") {
  auto cells = hex_patch(8);
  Region omega = unite_all(cells);
  int n = static_cast<int>(cells.size());
  Cluster grid = Cluster::in_region(cells, omega);
  for (int layer : {1, 2, 4}) {
    Region q = unite_all(hex_patch(layer));
    EquiResult r = equidistribution_residual(grid, q, n, omega);
    // Interfaces inside the patch are all edges but the boundary ones, counted once.
    CHECK(*r.dia.normalized_residual == Approx(-0.5).epsilon(1e-9));
    CHECK(r.dia.satisfied);
    CHECK(std::isfinite(*r.indeco.normalized_residual));
  }
}

TEST_CASE("equidistribution residual on reassembly and single chamber") {
  Region omega = Region::rectangle({0, 0}, {1, 1});
  ReassemblyResult e = boundary_reassembly_partition(omega, 256);
  Region q = Region::square({0.5, 0.5}, 1 - 1e-6);
  EquiResult r = equidistribution_residual(e.cluster, q, 256, omega);
  CHECK(std::isfinite(*r.dia.normalized_residual));
  CHECK(std::isfinite(*r.indeco.normalized_residual));
  MESSAGE("reassembly residuals ", *r.dia.normalized_residual, " ", *r.indeco.normalized_residual);

  Cluster single = Cluster::in_region({omega}, omega);
  Region ql = Region::square({0.5, 0.5}, 0.5);
  EquiResult s = equidistribution_residual(single, ql, 1, omega);
  CHECK(s.residual == Approx(-0.25 * kPH / 2).epsilon(1e-12));
  CHECK_THROWS_AS(equidistribution_residual(single, Region::square({2, 2}, 0.5), 1, omega), DomainError);
}
