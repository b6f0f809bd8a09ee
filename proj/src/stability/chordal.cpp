#include <cmath>
#include <numbers>
#include <string>

#include "isoclus/errors.hpp"
#include "isoclus/stability.hpp"
#include "stability_internal.hpp"

namespace isoclus {

SideSplit split_at_corners(const Region& e, const Region& pi) {
  if (!is_convex_polygon(pi)) throw DomainError("Pi must be a convex polygon");
  if (e.loops().size() != 1) throw DomainError("chamber must be bounded by a single loop");
  SideSplit out;
  out.corners = pi.loops()[0].vertices();
  std::size_t n = out.corners.size();
  const auto& edges = e.loops()[0].edges;
  double tol = 1e-9 * std::max(1.0, pi.bbox().hi.norm() + pi.bbox().lo.norm());
  std::size_t start = edges.size();
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (distance(edges[i].from, out.corners[0]) <= tol) start = i;
  if (start == edges.size()) throw DomainError("chamber boundary does not pass through the corners of Pi");
  std::size_t k = 0;
  Loop chain;
  for (std::size_t j = 0; j < edges.size(); ++j) {
    const Edge& ed = edges[(start + j) % edges.size()];
    chain.edges.push_back(ed);
    Point2 next = out.corners[(k + 1) % n];
    if (distance(ed.to, next) <= tol) {
      Point2 from = out.corners[k];
      chain.edges.push_back(Edge::segment(ed.to, from));
      out.sides.push_back(distance(from, next));
      out.gaps.push_back(std::abs(chain.signed_area()));
      chain.edges.clear();
      ++k;
    }
  }
  if (k != n || !chain.edges.empty()) throw DomainError("chamber corners do not match the vertices of Pi");
  return out;
}

ChordalResult chordal_check(const Region& e, const Region& pi) {
  SideSplit sp = split_at_corners(e, pi);
  ChordalResult out;
  out.sides = sp.sides;
  out.gaps = sp.gaps;
  double dido = 0, total_gap = 0, p_pi = 0;
  for (std::size_t i = 0; i < sp.sides.size(); ++i) {
    double l = sp.sides[i], a = sp.gaps[i];
    if (l > 1 + 1e-12)
      throw PreconditionError("l_" + std::to_string(i + 1) + " <= 1 violated: " + std::to_string(l));
    if (a / (l * l) > std::numbers::pi / 8)
      throw PreconditionError("a_" + std::to_string(i + 1) + " / l_" + std::to_string(i + 1) +
                              "^2 <= pi/8 violated: " + std::to_string(a / (l * l)));
    dido += arc_t(a, l);
    total_gap += a;
    p_pi += l;
  }
  double pe = perimeter(e);
  out.dido = make_report("chordal_dido", pe, dido, Sense::ge, {pe, p_pi, total_gap});
  out.chordal = make_report("chordal", pe, p_pi * arc(total_gap / p_pi), Sense::ge, {pe, p_pi, total_gap});
  return out;
}

}  // namespace isoclus
