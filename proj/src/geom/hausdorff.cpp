#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "isoclus/errors.hpp"
#include "isoclus/geom.hpp"

namespace isoclus {

namespace {

struct Node {
  double upper;
  double t0, t1;
  std::vector<double> f0, f1;
  bool operator<(const Node& o) const { return upper < o.upper; }
};

std::vector<double> per_edge(Point2 p, const Chain& b) {
  std::vector<double> f(b.size());
  for (std::size_t j = 0; j < b.size(); ++j) f[j] = point_edge_distance(p, b[j]);
  return f;
}

double min_of(const std::vector<double>& f) { return *std::min_element(f.begin(), f.end()); }

/// Upper bound of min_j f_j over [t0, t1]. Along a straight edge the distance
/// to a segment is convex, so the larger endpoint value bounds it; otherwise
/// the Lipschitz tent bound applies.
double node_upper(const Edge& e, const Chain& b, const Node& n) {
  double len = e.length() * (n.t1 - n.t0);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < b.size(); ++j) {
    double u = (!e.is_arc() && !b[j].is_arc()) ? std::max(n.f0[j], n.f1[j]) : 0.5 * (n.f0[j] + n.f1[j] + len);
    best = std::min(best, u);
  }
  return best;
}

double directed(const Chain& a, const Chain& b, double tol) {
  double best = 0;
  std::priority_queue<Node> q;
  for (const auto& e : a) {
    Node n{0, 0.0, 1.0, per_edge(e.from, b), per_edge(e.to, b)};
    best = std::max({best, min_of(n.f0), min_of(n.f1)});
    n.upper = node_upper(e, b, n);
    q.push(std::move(n));
    while (!q.empty()) {
      Node top = q.top();
      if (top.upper <= best + tol) break;
      q.pop();
      double tm = 0.5 * (top.t0 + top.t1);
      auto fm = per_edge(e.point_at(tm), b);
      best = std::max(best, min_of(fm));
      if ((top.t1 - top.t0) * e.length() <= tol) continue;
      Node left{0, top.t0, tm, top.f0, fm};
      Node right{0, tm, top.t1, fm, top.f1};
      left.upper = node_upper(e, b, left);
      right.upper = node_upper(e, b, right);
      if (left.upper > best + tol) q.push(std::move(left));
      if (right.upper > best + tol) q.push(std::move(right));
    }
    q = {};
  }
  return best;
}

double chain_scale(const Chain& c) {
  double s = 0;
  for (const auto& e : c) s += e.length();
  return s;
}

}  // namespace

Chain boundary_chain(const Region& r) { return r.edges(); }

double hausdorff_distance(const Chain& a, const Chain& b) {
  if (a.empty() || b.empty()) throw DomainError("hausdorff_distance needs non-empty chains");
  double tol = 1e-12 * std::max({chain_scale(a), chain_scale(b), 1e-300});
  bool arcs = std::any_of(a.begin(), a.end(), [](const Edge& e) { return e.is_arc(); }) ||
              std::any_of(b.begin(), b.end(), [](const Edge& e) { return e.is_arc(); });
  if (arcs) tol = 1e-8 * std::max(chain_scale(a), chain_scale(b));
  return std::max(directed(a, b, tol), directed(b, a, tol));
}

double hausdorff_distance(const Region& a, const Region& b) {
  return hausdorff_distance(boundary_chain(a), boundary_chain(b));
}

}  // namespace isoclus
