// Brute-force search for a small binary curve suitable for exhaustive
// testing: over GF(2^5) with f = x^5 + x^2 + 1, pick (a, b) whose group
// order is 2p with p as large as possible, and a generator of the whole
// (cyclic) group as base point. Prints the result in curve-file format.

#include <cstdint>
#include <iostream>
#include <optional>
#include <vector>

#include "hkecc/ecpm.hpp"

using namespace hkecc;
using namespace hkecc::ecpm;

namespace {

bool is_prime(std::uint64_t v) {
  if (v < 2) return false;
  for (std::uint64_t d = 2; d * d <= v; ++d) {
    if (v % d == 0) return false;
  }
  return true;
}

std::uint64_t point_order(const AffinePoint& p, const CurveParams& c) {
  AffinePoint q = p;
  std::uint64_t k = 1;
  while (!q.is_infinity()) {
    q = point_add_affine(q, p, c);
    ++k;
  }
  return k;
}

}  // namespace

int main() {
  const FieldContext f = FieldContext::from_exponents({5, 2, 0});
  const std::size_t m = f.m();
  std::optional<CurveParams> best;
  std::uint64_t best_prime = 0;

  for (std::uint64_t a = 0; a < (1U << m); ++a) {
    for (std::uint64_t b = 1; b < (1U << m); ++b) {
      const auto fa = gf2m::FieldElement::from_uint(m, a);
      const auto fb = gf2m::FieldElement::from_uint(m, b);
      // Placeholder base point; CurveParams::make only needs it on the curve.
      const CurveParams probe{"probe", f, fa, fb, AffinePoint::infinity(), 1, 1};
      std::vector<AffinePoint> points;
      for (std::uint64_t x = 0; x < (1U << m); ++x) {
        for (std::uint64_t y = 0; y < (1U << m); ++y) {
          AffinePoint p(gf2m::FieldElement::from_uint(m, x), gf2m::FieldElement::from_uint(m, y));
          if (on_curve(p, probe)) points.push_back(p);
        }
      }
      const std::uint64_t order = points.size() + 1;
      if (order % 2 != 0 || !is_prime(order / 2) || order / 2 <= best_prime) continue;
      for (const auto& g : points) {
        if (g.x().is_zero() || point_order(g, probe) != order) continue;
        best = CurveParams::make("toy-m5", f, fa, fb, g, order, 1);
        best_prime = order / 2;
        break;
      }
    }
  }
  if (!best) {
    std::cerr << "no suitable curve found\n";
    return 1;
  }
  std::cout << "# GF(2^5) toy curve: cyclic group of order 2p, p = " << best_prime << "\n"
            << "# generated by tools/toy_curve_search\n"
            << format_curve_file(*best);
  return 0;
}
