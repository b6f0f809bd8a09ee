#include <algorithm>
#include <cmath>
#include <numeric>

#include "isoclus/errors.hpp"
#include "isoclus/hex_tiling.hpp"
#include "isoclus/partition.hpp"

namespace isoclus {

ReassemblyResult boundary_reassembly_partition(const Region& omega, int n, Point2 offset) {
  if (n < 1) throw DomainError("boundary_reassembly_partition needs N >= 1");
  if (!omega.is_polygonal()) throw UnsupportedOperation("boundary_reassembly_partition needs a polygonal region");
  double a0 = area(omega);
  if (!(a0 > 0)) throw DomainError("boundary_reassembly_partition needs |omega| > 0");
  double lambda = 1.0 / std::sqrt(a0);
  Region unit = scaled(omega, lambda);
  double delta = 1.0 / n;

  ReassemblyResult res;
  std::vector<Region> chambers;
  if (n == 1) {
    chambers.push_back(unit);
  } else {
    HexTiling tiling = generate_plane(delta, unit, offset);
    HexClassification cls = classify(tiling, unit);
    res.ledger.interior_count = cls.k;
    res.ledger.boundary_count = cls.h;
    for (std::size_t i : cls.interior) chambers.push_back(tiling.cells[i].region);

    struct Piece {
      std::size_t cell;
      Region region;
      double area;
    };
    std::vector<Piece> pieces;
    for (std::size_t i : cls.boundary) {
      Region p = boolean(tiling.cells[i].region, unit, BoolOp::intersect);
      if (p.empty()) continue;
      double a = area(p);
      if (a <= 1e-15) continue;
      pieces.push_back({i, std::move(p), a});
    }
    std::stable_sort(pieces.begin(), pieces.end(), [](const Piece& x, const Piece& y) {
      return x.area < y.area || (x.area == y.area && x.cell < y.cell);
    });

    std::size_t need_chambers = static_cast<std::size_t>(n) - cls.k;
    std::vector<Region> parts;
    std::vector<std::size_t> composition;
    double acc = 0;
    auto close = [&] {
      chambers.push_back(Region::from_parts(parts));
      res.ledger.compositions.push_back(composition);
      parts.clear();
      composition.clear();
      acc = 0;
    };
    double side = std::sqrt(delta);
    for (auto& p : pieces) {
      res.ledger.piece_order.push_back(p.cell);
      res.ledger.piece_areas.push_back(p.area);
      Region rem = p.region;
      double ra = p.area;
      while (true) {
        double need = delta - acc;
        bool last_chamber = chambers.size() + 1 - cls.k == need_chambers;
        if (ra <= need * (1 + 1e-12) || last_chamber) {
          parts.push_back(rem);
          composition.push_back(p.cell);
          acc += ra;
          if (acc >= delta * (1 - 1e-12) && !last_chamber) close();
          break;
        }
        Box b = rem.bbox();
        double dir = b.width() > 1e-9 * side ? 0.0 : kPi / 2;
        auto [first, second] = equal_area_cut(rem, need, dir);
        Point2 u = unit_vector(dir);
        double cpos = -1e300;
        for (auto v : first.vertices()) cpos = std::max(cpos, dot(v, u));
        res.ledger.cut_positions.push_back(cpos);
        parts.push_back(first);
        composition.push_back(p.cell);
        close();
        rem = second;
        ra = area(rem);
      }
    }
    if (!parts.empty()) close();
    if (chambers.size() != static_cast<std::size_t>(n))
      throw PreconditionError("boundary reassembly produced " + std::to_string(chambers.size()) + " chambers for N = " +
                              std::to_string(n));
  }

  for (auto& ch : chambers) ch = scaled(ch, 1.0 / lambda);
  res.cluster = Cluster::in_region(std::move(chambers), omega);
  double total = cluster_perimeter(res.cluster);
  double base = 0.5 * kHexPerimeter * std::sqrt(static_cast<double>(n)) * std::sqrt(a0);
  double p_omega = perimeter(omega);
  res.lower = make_report("energy_lower", total, base, Sense::ge, {a0, p_omega, static_cast<double>(n)});
  res.upper = make_report("energy_upper", total, base + kConstructionCeiling * p_omega, Sense::le,
                          {a0, p_omega, static_cast<double>(n)});
  res.upper.fitted_constant = (total - base) / p_omega;
  return res;
}

}  // namespace isoclus
