#include <cmath>
#include <random>

#include "isoclus/errors.hpp"
#include "isoclus/stability.hpp"

namespace isoclus {

std::vector<Region> random_ngon_corpus(int n, int count, double deficit_max, std::uint64_t seed) {
  if (n < 3) throw DomainError("random_ngon_corpus needs n >= 3");
  if (count < 0 || !(deficit_max > 0)) throw DomainError("random_ngon_corpus needs count >= 0 and deficit_max > 0");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> log_scale(std::log(1e-4), std::log(std::sqrt(deficit_max)));
  std::normal_distribution<double> noise(0, 1);
  const auto base = regular_unit_ngon(n).loops()[0].vertices();
  const double ideal = n * regular_unit_ngon_side(n);
  std::vector<Region> out;
  int attempts = 0;
  while (static_cast<int>(out.size()) < count) {
    if (++attempts > 100 * (count + 10)) throw DomainError("random_ngon_corpus: deficit bound too small to sample");
    double sigma = std::exp(log_scale(rng));
    auto v = base;
    for (auto& p : v) p = p + Point2{sigma * noise(rng), sigma * noise(rng)};
    Region r;
    try {
      r = Region::polygon(v);
    } catch (const ValidationError&) {
      continue;
    }
    if (!is_convex_polygon(r)) continue;
    double a = area(r);
    if (!(a > 0)) continue;
    r = scaled(r, 1 / std::sqrt(a), centroid(r));
    double p = perimeter(r);
    double deficit = p * p - ideal * ideal;
    if (deficit > 0 && deficit <= deficit_max) out.push_back(std::move(r));
  }
  return out;
}

}  // namespace isoclus
