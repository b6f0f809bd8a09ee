#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "isoclus/errors.hpp"
#include "isoclus/stability.hpp"
#include "stability_internal.hpp"

namespace isoclus {

namespace {

void require_unit_convex(const Region& pi, int n, const char* what) {
  if (!is_convex_polygon(pi)) throw DomainError(std::string(what) + " needs a convex polygon");
  if (n < 3 || static_cast<int>(pi.loops()[0].edges.size()) != n)
    throw DomainError(std::string(what) + " needs an n-gon with n >= 3");
  if (std::abs(area(pi) - 1) > 1e-9) throw DomainError(std::string(what) + " needs |Pi| = 1");
}

}  // namespace

double regular_unit_ngon_side(int n) {
  if (n < 3) throw DomainError("regular n-gon needs n >= 3");
  return std::sqrt(4 * std::tan(std::numbers::pi / n) / n);
}

Region regular_unit_ngon(int n) {
  double side = regular_unit_ngon_side(n);
  return Region::regular_polygon(n, {0, 0}, side / (2 * std::sin(std::numbers::pi / n)));
}

NgonFit fit_regular_ngon(const Region& pi, int n) {
  require_unit_convex(pi, n, "fit_regular_ngon");
  Region base = regular_unit_ngon(n);
  Point2 c = centroid(pi);
  Chain target = boundary_chain(pi);
  NgonFit best;
  best.n = n;
  best.hd = std::numeric_limits<double>::infinity();
  double period = 2 * std::numbers::pi / n;
  const int samples = 720;
  for (int refl = 0; refl < (n % 2 == 1 ? 2 : 1); ++refl) {
    Region shape = base;
    if (refl) {
      std::vector<Point2> v = base.loops()[0].vertices();
      for (auto& p : v) p.y = -p.y;
      std::reverse(v.begin(), v.end());
      shape = Region::polygon(v);
    }
    auto hd_at = [&](double th) {
      RigidMotion m{th, c};
      return hausdorff_distance(target, boundary_chain(m.apply(shape)));
    };
    double step = period / samples;
    double th_best = 0, f_best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < samples; ++i) {
      double f = hd_at(i * step);
      if (f < f_best) {
        f_best = f;
        th_best = i * step;
      }
    }
    double lo = th_best - step, hi = th_best + step;
    const double g = (std::sqrt(5.0) - 1) / 2;
    double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
    double f1 = hd_at(x1), f2 = hd_at(x2);
    while (hi - lo > 1e-10) {
      if (f1 <= f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - g * (hi - lo);
        f1 = hd_at(x1);
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + g * (hi - lo);
        f2 = hd_at(x2);
      }
    }
    for (auto [th, f] : {std::pair{x1, f1}, std::pair{x2, f2}, std::pair{th_best, f_best}}) {
      if (f < best.hd) {
        best.hd = f;
        best.motion = RigidMotion{std::fmod(th + period, period), c};
        best.reflected = refl == 1;
      }
    }
  }
  double p = perimeter(pi);
  double reg = n * regular_unit_ngon_side(n);
  best.deficit = p * p - reg * reg;
  if (best.deficit > 0) best.ratio = best.hd * best.hd / best.deficit;
  return best;
}

BoundReport ngon_variance_bound(const Region& pi, double c_n) {
  int n = static_cast<int>(pi.loops().empty() ? 0 : pi.loops()[0].edges.size());
  require_unit_convex(pi, n, "ngon_variance_bound");
  auto v = pi.loops()[0].vertices();
  Point2 c = centroid(pi);
  std::vector<double> r, l;
  for (std::size_t i = 0; i < v.size(); ++i) {
    r.push_back(distance(v[i], c));
    l.push_back(distance(v[i], v[(i + 1) % v.size()]));
  }
  auto spread = [](const std::vector<double>& x) {
    double m = 0;
    for (double y : x) m += y;
    m /= x.size();
    double s = 0;
    for (double y : x) s += (y - m) * (y - m);
    return s;
  };
  double var = spread(r) + spread(l);
  double p = perimeter(pi);
  double reg = n * regular_unit_ngon_side(n);
  double deficit = p * p - reg * reg;
  BoundReport rep = make_report("ngon_variance", var, c_n * deficit, Sense::le, {static_cast<double>(n), p, var});
  if (deficit > 0) rep.fitted_constant = var / deficit;
  return rep;
}

HexagonInequality hexagon_unit_inequality(const Region& e, const Region& pi) {
  double ae = area(e);
  if (std::abs(ae - 1) > 1e-9) throw DomainError("hexagon_unit_inequality needs |E| = 1");
  SideSplit sp = split_at_corners(e, pi);
  if (sp.sides.size() != 6) throw DomainError("hexagon_unit_inequality needs a hexagon Pi");
  for (std::size_t i = 0; i < 6; ++i) {
    double l = sp.sides[i], a = sp.gaps[i];
    if (a / (l * l) > std::numbers::pi / 8)
      throw PreconditionError("a_" + std::to_string(i + 1) + " / l_" + std::to_string(i + 1) +
                              "^2 <= pi/8 violated");
    if (std::abs(l - kHexPerimeter / 6) > 0.1)
      throw PreconditionError("|l_" + std::to_string(i + 1) + " - P(H)/6| <= 0.1 violated: l = " + std::to_string(l));
  }
  double api = area(pi);
  double s = std::sqrt(api);
  Region unit = scaled(pi, 1 / s);
  NgonFit fit = fit_regular_ngon(unit, 6);
  HexagonInequality out;
  out.h_star = scaled(fit.motion.apply(regular_unit_ngon(6)), s);
  out.hd = hausdorff_distance(pi, out.h_star);
  for (double a : sp.gaps) out.sym_diff += a;
  double pe = perimeter(e);
  double rhs = kHexPerimeter + 0.5 * kHexPerimeter * (api - ae);
  out.report = make_report("hexagon_unit", pe, rhs, Sense::ge, {pe, api, ae, out.sym_diff, out.hd});
  double q = out.sym_diff * out.sym_diff + out.hd * out.hd;
  if (q > 0) out.report.fitted_constant = (pe - rhs) / q;
  return out;
}

}  // namespace isoclus
