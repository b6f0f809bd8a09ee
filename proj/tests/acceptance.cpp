#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "isoclus/bounds.hpp"
#include "isoclus/cheeger.hpp"
#include "isoclus/geom.hpp"
#include "isoclus/hex_tiling.hpp"
#include "isoclus/inequalities.hpp"
#include "isoclus/partition.hpp"
#include "isoclus/stability.hpp"
#include "oracles.hpp"

using namespace isoclus;

namespace {


const double kSqrtPi = std::sqrt(std::numbers::pi);
const double kPH = 2 * std::pow(12.0, 0.25);
const double kL = std::pow(12.0, 0.25) / 3;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[failed: " << what << "] ";
    }
  }
};

int failures = 0;

void criterion(int id, const char* title, double budget, const std::function<void(Outcome&)>& body) {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail << "[exception: " << e.what() << "] ";
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > budget) {
    o.pass = false;
    o.detail << "[over budget " << budget << " s] ";
  }
  if (!o.pass) ++failures;
  std::printf("%s %2d %-34s %8.2f s  %s\n", o.pass ? "PASS" : "FAIL", id, title, secs, o.detail.str().c_str());
  std::fflush(stdout);
}

bool rel_close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b)); }

Region frame(double s0, double s1) {
  return boolean(Region::square({0, 0}, s1), Region::square({0, 0}, s0), BoolOp::difference);
}

// Length of the circular arc over a chord of length l bounding area a, by bisection on the half-angle.
double arc_oracle(double a, double l) {
  if (a == 0) return l;
  double target = a / (l * l);
  double lo = 0, hi = std::numbers::pi;
  for (int i = 0; i < 200; ++i) {
    double phi = 0.5 * (lo + hi);
    double seg = (2 * phi - std::sin(2 * phi)) / (8 * std::sin(phi) * std::sin(phi));
    (seg < target ? lo : hi) = phi;
  }
  double phi = 0.5 * (lo + hi);
  return l * phi / std::sin(phi);
}

double golden_min(const std::function<double(double)>& f, double a, double b) {
  const double g = (std::sqrt(5.0) - 1) / 2;
  double x1 = b - g * (b - a), x2 = a + g * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < 300 && b - a > 1e-15; ++i) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - g * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + g * (b - a);
      f2 = f(x2);
    }
  }
  return std::min(f1, f2);
}

Region random_convex(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1, 1), sc(0.3, 2.5);
  double sx = sc(rng), sy = sc(rng);
  std::vector<Point2> pts;
  for (int i = 0; i < 12; ++i) pts.push_back({sx * u(rng), sy * u(rng)});
  return Region::polygon(convex_hull(pts));
}

Region random_star(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uc(-2, 2);
  std::uniform_int_distribution<int> un(3, 14);
  return Region::polygon(oracle::star_polygon(rng, {uc(rng), uc(rng)}, un(rng), 0.3, 1.5));
}

}  // namespace

int main() {
  criterion(1, "hexagon constants", 1, [](Outcome& o) {
    Region h = hex_cell(0, 0, 1.0);
    double a = area(h), p = perimeter(h);
    o.detail << "|H|=" << a << " P(H)=" << p << " ";
    o.require(std::abs(a - 1) <= 1e-9, "|H| = 1");
    o.require(std::abs(p - kPH) <= 1e-9, "P(H) = 2 12^(1/4)");
    o.require(std::abs(perimeter(regular_unit_ngon(6)) - kPH) <= 1e-9, "regular unit hexagon perimeter");
  });

  criterion(2, "surgery partition", 10, [](Outcome& o) {
    Region a = frame(1, 3);
    double lo = 1e300, hi = 0;
    for (int m : {10, 100, 1000}) {
      SurgeryResult s = surgery_partition(Region::square({0, 0}, 1), Region::square({0, 0}, 3), a, m);
      bool areas = s.cluster.size() == static_cast<std::size_t>(m);
      for (const auto& ch : s.cluster.chambers()) areas = areas && rel_close(area(ch), 8.0 / m, 1e-9);
      o.require(areas, "chamber areas |A|/M at M=" + std::to_string(m));
      double c = s.report.fitted_constant.value_or(-1);
      o.require(c > 0 && c <= 10, "0 < C <= 10 at M=" + std::to_string(m));
      lo = std::min(lo, c);
      hi = std::max(hi, c);
      o.detail << "C(" << m << ")=" << c << " ";
    }
    o.require(hi / lo <= 4, "max/min C <= 4");
    o.detail << "max/min=" << hi / lo << " ";
  });

  criterion(3, "boundary reassembly", 60, [](Outcome& o) {
    Region omega = Region::rectangle({0, 0}, {1, 1});
    double lo = 1e300, hi = 0;
    for (int n : {16, 64, 256, 1024}) {
      ReassemblyResult r = boundary_reassembly_partition(omega, n);
      std::string tag = " at N=" + std::to_string(n);
      o.require(std::abs(r.cluster.exterior_area()) <= 1e-9, "exterior <= 1e-9" + tag);
      bool areas = r.cluster.size() == static_cast<std::size_t>(n);
      for (const auto& ch : r.cluster.chambers()) areas = areas && rel_close(area(ch), 1.0 / n, 1e-9);
      o.require(areas, "areas 1/N" + tag);
      double total = cluster_perimeter(r.cluster);
      o.require(total >= kPH / 2 * std::sqrt(n), "P >= P(H)/2 sqrt N" + tag);
      double c0 = r.upper.fitted_constant.value_or(-1);
      lo = std::min(lo, c0);
      hi = std::max(hi, c0);
      o.detail << "C0(" << n << ")=" << c0 << " ";
    }
    o.require(lo > 0 && hi / lo <= 4, "max/min C0 <= 4");
    o.detail << "max/min=" << hi / lo << " ";
  });

  criterion(4, "hales torus equality", 10, [](Outcome& o) {
    for (auto [a, b] : {std::pair{2, 2}, std::pair{4, 4}, std::pair{2, 6}}) {
      TorusSpec t = TorusSpec::make(a, b);
      double p = cluster_perimeter(torus_honeycomb(t));
      double slack = std::abs(p - a * b * kPH / 2);
      o.require(slack <= 1e-9, "honeycomb slack on T(" + std::to_string(a) + "," + std::to_string(b) + ")");
      o.require(std::abs(hales_torus(torus_honeycomb(t)).slack) <= 1e-9, "hales_torus report slack");
    }
    double smallest = 1e300;
    for (auto [a, b] : {std::pair{2, 2}, std::pair{4, 4}, std::pair{2, 6}})
      for (double eps : {1e-3, 1e-2, 5e-2}) {
        BoundReport r = hales_torus(three_edge_perturbation(TorusSpec::make(a, b), eps));
        o.require(r.slack > 0 && !is_equality(r), "perturbation slack > 0");
        smallest = std::min(smallest, r.slack);
      }
    o.detail << "min perturbation slack=" << smallest << " ";
  });

  criterion(5, "arc function", 1, [](Outcome& o) {
    o.require(arc(0) == 1.0, "arc(0) = 1 exactly");
    o.require(std::abs(arc(std::numbers::pi / 8) - std::numbers::pi / 2) <= 1e-10, "arc(pi/8) = pi/2");
    double worst = 1e300;
    const int n = 200;
    double h = (std::numbers::pi / 8) / (n - 1);
    for (int i = 1; i + 1 < n; ++i) worst = std::min(worst, arc((i - 1) * h) - 2 * arc(i * h) + arc((i + 1) * h));
    o.require(worst >= -1e-10, "convex on [0, pi/8]");
    double eta = fit_arc_eta(0.05);
    o.require(eta > 0, "eta > 0");
    o.detail << "min second difference=" << worst << " eta=" << eta << " ";
  });

  criterion(6, "chordal equality case", 5, [](Outcome& o) {
    auto v = regular_unit_ngon(6).loops()[0].vertices();
    double side = regular_unit_ngon_side(6);
    Region pi = regular_unit_ngon(6);
    for (double a : {1e-3, 1e-2}) {
      Region e = bulged_polygon(v, {a, 0, 0, 0, 0, 0});
      double expected = perimeter(pi) - side + arc_oracle(a, side);
      o.require(rel_close(perimeter(e), expected, 1e-8), "P(E) = Dido sum (independent arc)");
      ChordalResult c = chordal_check(e, pi);
      o.require(std::abs(c.dido.slack) <= 1e-8 * perimeter(e), "dido report equality");
      o.require(rel_close(c.dido.rhs, expected, 1e-8), "dido rhs");
      ChordalResult two = chordal_check(bulged_polygon(v, {a, 0, 0, a / 2, 0, 0}), pi);
      o.require(two.chordal.slack > 0 && two.chordal.satisfied, "two-bulge strict slack");
      o.detail << "a=" << a << " two-bulge slack=" << two.chordal.slack << " ";
    }
  });

  criterion(7, "quantitative hexagon stability", 120, [](Outcome& o) {
    double worst[2] = {0, 0};
    std::uint64_t seeds[2] = {42, 4242};
    for (int s = 0; s < 2; ++s) {
      auto corpus = random_ngon_corpus(6, 500, 1e-2, seeds[s]);
      o.require(corpus.size() == 500, "500 samples");
      bool finite = true;
      for (const auto& pi : corpus) {
        NgonFit f = fit_regular_ngon(pi, 6);
        double lhs = perimeter(pi) * perimeter(pi) - 36 * kL * kL;
        finite = finite && f.ratio && std::isfinite(*f.ratio) && lhs > 0 && lhs <= 1e-2 * (1 + 1e-9);
        if (f.ratio) worst[s] = std::max(worst[s], f.hd * f.hd / lhs);
      }
      o.require(finite, "finite ratios and deficit <= 1e-2");
    }
    double factor = std::max(worst[0], worst[1]) / std::min(worst[0], worst[1]);
    o.require(factor <= 2, "empirical C(6) stable within factor 2");
    o.detail << "C(6) seeds: " << worst[0] << ", " << worst[1] << " factor=" << factor << " ";
  });

  criterion(8, "honeycomb asymmetry", 120, [](Outcome& o) {
    TorusSpec t = TorusSpec::make(2, 2);
    Cluster h = torus_honeycomb(t);
    o.require(alpha_asymmetry(h).alpha <= 1e-9, "alpha(H) = 0");
    Cluster e = three_edge_perturbation(t, 1e-2);
    double base = alpha_asymmetry(e).alpha;
    double drift = 0;
    for (Point2 v : {Point2{std::sqrt(3.0) * kL, 0}, Point2{std::sqrt(3.0) * kL / 2, 1.5 * kL},
                     Point2{0.3 * std::sqrt(3.0) * kL, 0.7 * kL}}) {
      std::vector<Region> moved, hmoved;
      for (const auto& c : e.chambers()) moved.push_back(translated(c, v));
      for (const auto& c : h.chambers()) hmoved.push_back(translated(c, v));
      drift = std::max(drift, std::abs(alpha_asymmetry(Cluster::on_torus(moved, t)).alpha - base));
      o.require(alpha_asymmetry(Cluster::on_torus(hmoved, t)).alpha <= 1e-6, "translated honeycomb alpha = 0");
    }
    o.require(drift <= 1e-6, "alpha invariant under translation");
    std::vector<Cluster> fam;
    for (double eps : {1e-3, 1e-2, 5e-2}) fam.push_back(three_edge_perturbation(t, eps));
    KappaEstimate k = kappa_estimate(fam);
    double hi = *std::max_element(k.ratios.begin(), k.ratios.end());
    o.require(k.kappa > 0, "kappa > 0");
    o.require(hi / k.kappa <= 5, "kappa varies by <= 5x");
    o.detail << "translation drift=" << drift << " kappa=" << k.kappa << " spread=" << hi / k.kappa << " ";
  });

  criterion(9, "cheeger constants", 30, [](Outcome& o) {
    double oracle = golden_min(
        [](double rho) { return (4 - 8 * rho + 2 * std::numbers::pi * rho) / (1 - (4 - std::numbers::pi) * rho * rho); }, 0, 0.5);
    double h = cheeger_convex(Region::square({0.5, 0.5}, 1)).h;
    o.require(rel_close(h, oracle, 1e-8), "square vs rounded-corner oracle");
    o.require(rel_close(h, 2 + kSqrtPi, 1e-8), "square h = 2 + sqrt(pi)");
    double disk = cheeger_convex(Region::regular_polygon(10000, {0, 0}, 1)).h;
    o.require(std::abs(disk - 2) <= 1e-3, "10^4-gon h = 2");
    std::mt19937_64 rng(99);
    std::vector<Region> ks{Region::square({0.5, 0.5}, 1), regular_unit_ngon(6), random_convex(rng), random_convex(rng)};
    for (const auto& k : ks) {
      double base = cheeger_convex(k).h;
      for (double lam : {0.5, 3.0})
        o.require(rel_close(cheeger_convex(scaled(k, lam)).h, base / lam, 1e-8), "h(lambda K) = h(K)/lambda");
    }
    o.detail << "h(square)=" << h << " oracle=" << oracle << " h(10^4-gon)=" << disk << " ";
  });

  criterion(10, "H_N sandwich", 60, [](Outcome& o) {
    Region sq = Region::rectangle({0, 0}, {1, 1});
    std::vector<HNSandwich> curve;
    int infeasible = 0, increases = 0;
    double prev = 0;
    for (int n = 16; n <= 1024; ++n) {
      HNSandwich s = hn_sandwich(sq, n, 0.01);
      o.require(std::abs(s.lower - 2 * kSqrtPi * std::pow(n, 1.5)) <= 1e-12 * s.lower, "lower formula");
      if (s.upper) {
        o.require(s.lower <= *s.upper, "lower <= upper at N=" + std::to_string(n));
        double ratio = *s.upper / std::pow(n, 1.5);
        if (prev > 0 && ratio > prev) ++increases;
        prev = ratio;
      } else {
        ++infeasible;
        prev = 0;
      }
      curve.push_back(s);
    }
    std::vector<double> tail;
    for (int n : {16, 64, 256, 1024}) {
      const auto& s = curve[n - 16];
      o.require(s.upper.has_value(), "feasible at N=" + std::to_string(n));
      tail.push_back(s.upper ? *s.upper / std::pow(n, 1.5) : 1e300);
    }
    for (std::size_t i = 1; i < tail.size(); ++i) o.require(tail[i] <= tail[i - 1], "upper/N^1.5 non-increasing");
    double hh = hexagon_cheeger();
    o.require(tail.back() >= 2 * kSqrtPi && tail.back() <= hh + 0.2, "lands in [2 sqrt(pi), h(H) + 0.2]");
    int identity = 0;
    for (const auto& r : hn_monotonicity(curve, 1.0)) {
      if (r.name != "hn_monotone_lower") continue;
      o.require(r.normalized_residual && std::abs(*r.normalized_residual) <= 1e-12, "lower-curve step identity");
      ++identity;
    }
    o.require(identity == 1008, "identity checked on every step");
    o.detail << "upper/N^1.5 at 16,64,256,1024: " << tail[0] << " " << tail[1] << " " << tail[2] << " " << tail[3]
             << " h(H)=" << hh << " infeasible N: " << infeasible << " consecutive-N increases: " << increases << " ";
  });

  criterion(11, "curvature constants", 1, [](Outcome& o) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.1, 5);
    std::vector<double> h, a;
    for (int i = 0; i < 9; ++i) {
      h.push_back(u(rng));
      a.push_back(u(rng));
    }
    auto c = curvature_constants(h, a);
    bool anti = true, ext = true;
    for (std::size_t j = 0; j < c.size(); ++j)
      for (std::size_t k = 0; k < c.size(); ++k) anti = anti && c[j][k] == -c[k][j];
    for (std::size_t j = 1; j < c.size(); ++j) ext = ext && c[j][0] == h[j - 1];
    o.require(anti, "antisymmetry exact");
    o.require(ext, "C_{j,0} = h_j exact");
    o.require(curvature_constants({2.5, 2.5}, {1.5, 1.5})[1][2] == 0, "congruent chambers give 0");
    o.require(std::abs(curvature_constants({4, 3}, {1, 2})[1][2] - 5.0 / 3) <= 1e-15, "5/3 example");
  });

  criterion(12, "p -> 1 limits", 1, [](Outcome& o) {
    double h = 2 + kSqrtPi, hn = 321.5;
    PLaplacianBounds b = p_laplacian_bounds(h, hn, 1 + 1e-8, 37);
    o.require(std::abs(b.lambda1 - h) <= 1e-6 * h, "(h/p)^p -> h");
    o.require(std::abs(b.lambda_n - hn) <= 1e-6 * hn, "(H/p)^p / N^(p-1) -> H");
    o.detail << "rel errors " << std::abs(b.lambda1 - h) / h << " " << std::abs(b.lambda_n - hn) / hn << " ";
  });

  criterion(13, "kernel property suite", 60, [](Outcome& o) {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> ang(-std::numbers::pi, std::numbers::pi), tr(-5, 5), lam(0.2, 4), small(0.001, 0.05);
    std::vector<Region> regions;
    for (int i = 0; i < 150; ++i) regions.push_back(random_star(rng));
    for (int i = 0; i < 50; ++i) {
      auto v = random_convex(rng).loops()[0].vertices();
      std::vector<double> bulges(v.size());
      for (auto& b : bulges) b = small(rng);
      regions.push_back(bulged_polygon(v, bulges));
    }
    int violations = 0, checks = 0;
    auto check = [&](bool ok) {
      ++checks;
      if (!ok) ++violations;
    };
    for (std::size_t i = 0; i < regions.size(); ++i) {
      const Region& r = regions[i];
      RigidMotion m{ang(rng), {tr(rng), tr(rng)}};
      Region moved = m.apply(r);
      check(rel_close(area(moved), area(r), 1e-9));
      check(rel_close(perimeter(moved), perimeter(r), 1e-9));
      check(rel_close(diameter(moved), diameter(r), 1e-9));
      double l = lam(rng);
      check(rel_close(area(scaled(r, l)), l * l * area(r), 1e-9));
      check(rel_close(perimeter(scaled(r, l)), l * perimeter(r), 1e-9));
      for (const auto& rep : classic_inequality_checks(r)) check(rep.satisfied);
      check(isodiametric_check(r).satisfied);
      if (i < 150) {
        const Region& s = regions[(i + 1) % 150];
        double u = area(boolean(r, s, BoolOp::unite)), x = intersection_area(r, s);
        check(std::abs(u - (area(r) + area(s) - x)) <= 1e-9 * (area(r) + area(s)));
        check(rel_close(hausdorff_distance(m.apply(r), m.apply(s)), hausdorff_distance(r, s), 1e-6));
        const Region& q = regions[(i + 2) % 150];
        Cluster a = Cluster::in_plane({r}), b = Cluster::in_plane({s}), c = Cluster::in_plane({q});
        check(cluster_distance(a, c) <= cluster_distance(a, b) + cluster_distance(b, c) + 1e-9);
      }
    }
    o.require(violations == 0, std::to_string(violations) + " violations");
    o.detail << regions.size() << " regions, " << checks << " checks, " << violations << " violations ";
  });

  std::printf("%d of 13 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
