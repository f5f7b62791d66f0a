#include <utility>

#include "hkecc/gf2m.hpp"
#include "words.hpp"

namespace hkecc::gf2m {

Inversion invert_counted(const FieldElement& a, const FieldContext& ctx) {
  const std::size_t m = ctx.m();
  if (a.width() != m) throw ContractViolation("invert: operand width does not match field degree");
  if (a.is_zero()) throw NonInvertible();

  // Invariants: g1 * a == u and g2 * a == v (mod f). Each step cancels the
  // leading term of u, so deg(u) + deg(v) drops by at least one and the loop
  // ends within 2m - 1 steps.
  const std::size_t limbs = words_for(m + 1);
  detail::Words u(a.words().begin(), a.words().end());
  u.resize(limbs, 0);
  detail::Words v(ctx.modulus().words().begin(), ctx.modulus().words().end());
  detail::Words g1(limbs, 0);
  detail::Words g2(limbs, 0);
  g1[0] = 1;

  std::size_t iterations = 0;
  long du = degree_of(detail::view(u));
  long dv = degree_of(detail::view(v));
  while (du != 0) {
    if (du < 0 || iterations > 2 * m) {
      throw DomainError("invert: modulus is not irreducible");
    }
    long j = du - dv;
    if (j < 0) {
      std::swap(u, v);
      std::swap(g1, g2);
      std::swap(du, dv);
      j = -j;
    }
    detail::xor_shifted(u, v, static_cast<std::size_t>(j));
    detail::xor_shifted(g1, g2, static_cast<std::size_t>(j));
    du = degree_of(detail::view(u));
    ++iterations;
  }
  return {FieldElement::from_words(m, std::span<const Word>(g1.data(), g1.size())), iterations};
}

FieldElement invert(const FieldElement& a, const FieldContext& ctx) {
  return invert_counted(a, ctx).value;
}

FieldElement divide(const FieldElement& num, const FieldElement& den, const FieldContext& ctx) {
  return mul(num, invert(den, ctx), ctx);
}

}  // namespace hkecc::gf2m
