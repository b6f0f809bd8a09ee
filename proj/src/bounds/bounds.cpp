#include "isoclus/bounds.hpp"

#include <cmath>
#include <string>

#include "isoclus/errors.hpp"
#include "isoclus/partition.hpp"

namespace isoclus {

namespace {

void require_unit_bounded(const Cluster& c, const char* what) {
  for (std::size_t i = 0; i < c.size(); ++i) {
    double a = area(c.chambers()[i]);
    if (a > 1.0 + 1e-9)
      throw PreconditionError(std::string(what) + ": |E(" + std::to_string(i + 1) + ")| <= 1 violated (" +
                              std::to_string(a) + ")");
  }
}

double chamber_sum(const Cluster& c) {
  double s = 0;
  for (const auto& ch : c.chambers()) s += area(ch);
  return s;
}

void require_inside(const Region& o, const Region& omega, const char* what) {
  double ao = area(o);
  if (!(ao > 0)) throw DomainError(std::string(what) + " needs a region of positive area");
  if (!o.bbox().overlaps(omega.bbox()) || intersection_area(o, omega) < ao * (1 - 1e-9))
    throw DomainError(std::string(what) + ": window is not contained in the ambient region");
}

}  // namespace

double hex_density(int n, double omega_area) {
  if (n < 1 || !(omega_area > 0)) throw DomainError("hex_density needs N >= 1 and |Omega| > 0");
  return 0.5 * kHexPerimeter * std::sqrt(n / omega_area);
}

bool is_equality(const BoundReport& r) { return std::abs(r.slack) <= 1e-9; }

BoundReport hales_torus(const Cluster& c) {
  if (!c.on_torus()) throw DomainError("hales_torus needs a torus cluster");
  require_unit_bounded(c, "hales_torus");
  double sum = chamber_sum(c);
  double ext = std::max(0.0, c.torus()->area() - sum);
  if (ext <= 1e-9 * c.torus()->area()) ext = 0;
  double p = cluster_perimeter(c);
  double rhs = 0.5 * kHexPerimeter * (std::min(ext, 1.0) + sum);
  return make_report("hales_torus", p, rhs, Sense::ge,
                     {static_cast<double>(c.torus()->alpha), static_cast<double>(c.torus()->beta), sum, p});
}

BoundReport hales_plane(const Cluster& c) {
  if (c.on_torus()) throw DomainError("hales_plane needs a planar cluster");
  require_unit_bounded(c, "hales_plane");
  double sum = chamber_sum(c);
  double p = cluster_perimeter(Cluster::in_plane(c.chambers()));
  return make_report("hales_plane", p, 0.5 * kHexPerimeter * sum, Sense::gt, {sum, p});
}

BoundReport local_lower_bound(const Cluster& e, const Region& o) {
  if (!e.ambient()) throw DomainError("local_lower_bound needs a cluster with an ambient region");
  const Region& omega = *e.ambient();
  require_inside(o, omega, "local_lower_bound");
  int n = static_cast<int>(e.size());
  if (n < 1) throw DomainError("local_lower_bound needs a non-empty cluster");
  double cell = area(omega) / n;
  for (std::size_t i = 0; i < e.size(); ++i)
    if (std::abs(area(e.chambers()[i]) - cell) > 1e-6 * cell)
      throw PreconditionError("local_lower_bound: |E(" + std::to_string(i + 1) + ")| = |Omega|/N violated");
  double lhs = cluster_perimeter(e, Window{o, false});
  double rhs = area(o) * hex_density(n, area(omega)) - perimeter(o);
  return make_report("local_lower_bound", lhs, rhs, Sense::ge, {area(o), perimeter(o), static_cast<double>(n), lhs});
}

EquiResult equidistribution_residual(const Cluster& e, const Region& ql, int n, const Region& omega) {
  require_inside(ql, omega, "equidistribution_residual");
  double pe = cluster_perimeter(e, Window{ql, false});
  double pq = perimeter(ql);
  EquiResult out;
  out.residual = pe - area(ql) * hex_density(n, area(omega));
  double r = std::abs(out.residual);
  double s_dia = pq;
  double s_indeco = std::pow(pq, 1.5) * std::pow(n / area(omega), 0.25);
  std::initializer_list<double> in = {area(ql), pq, static_cast<double>(n), area(omega), pe};
  out.dia = make_report("equidistribution_dia", r, kConstructionCeiling * s_dia, Sense::le, in);
  out.dia.normalized_residual = out.residual / s_dia;
  out.dia.fitted_constant = r / s_dia;
  out.indeco = make_report("equidistribution_indeco", r, kConstructionCeiling * s_indeco, Sense::le, in);
  out.indeco.normalized_residual = out.residual / s_indeco;
  out.indeco.fitted_constant = r / s_indeco;
  return out;
}

}  // namespace isoclus
