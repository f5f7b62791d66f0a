#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "hkecc/ecpm.hpp"
#include "oracles.hpp"

using namespace hkecc;
using namespace hkecc::ecpm;
using gf2m::FieldElement;

namespace {

const oracle::SmallCurve& toy_ref() {
  static const oracle::SmallCurve c = oracle::toy_oracle();
  return c;
}
const CurveParams& toy() {
  static const CurveParams c = oracle::toy_curve();
  return c;
}
const CurveParams& std163() {
  static const CurveParams c = b163();
  return c;
}

std::vector<AffinePoint> toy_points() {
  std::vector<AffinePoint> pts;
  for (const auto& p : toy_ref().points()) pts.push_back(toy_ref().to_lib(p));
  return pts;
}

std::uint32_t val(const FieldElement& e) { return oracle::SmallField::value(e); }

// x(P) recovered from a projective pair, or nullopt for Z = 0.
std::optional<std::uint32_t> ratio(const FieldElement& x, const FieldElement& z) {
  if (z.is_zero()) return std::nullopt;
  const auto& F = toy_ref().F;
  return F.mul(val(x), F.inv(val(z)));
}

std::optional<std::uint32_t> x_of(const oracle::SmallCurve::Point& p) {
  if (!p) return std::nullopt;
  return p->first;
}

}  // namespace

TEST(ToyCurve, FixtureMatchesShippedFile) {
  const auto file = load_curve_file(HKECC_DATA_DIR "/toy5.curve");
  const auto& c = file.require_curve();
  EXPECT_EQ(c.field, toy().field);
  EXPECT_EQ(c.a, toy().a);
  EXPECT_EQ(c.b, toy().b);
  EXPECT_EQ(c.g, toy().g);
  EXPECT_EQ(c.n, toy().n);
  EXPECT_EQ(c.h, toy().h);
}

TEST(ToyCurve, GroupShape) {
  const auto pts = toy_ref().points();
  ASSERT_EQ(pts.size(), oracle::kToyOrder);
  // G generates everything.
  const oracle::SmallCurve::Point g(std::in_place, 6, 0);
  std::set<oracle::SmallCurve::Point> seen;
  for (std::uint64_t k = 0; k < oracle::kToyOrder; ++k) seen.insert(toy_ref().times(k, g));
  EXPECT_EQ(seen.size(), oracle::kToyOrder);
  EXPECT_EQ(toy_ref().times(oracle::kToyOrder, g), std::nullopt);
}

TEST(OnCurve, ExhaustiveAndBitFlips) {
  EXPECT_TRUE(on_curve(AffinePoint::infinity(), toy()));
  const auto& F = toy_ref().F;
  for (std::uint32_t x = 0; x < F.size(); ++x) {
    for (std::uint32_t y = 0; y < F.size(); ++y) {
      ASSERT_EQ(on_curve({F.elem(x), F.elem(y)}, toy()), toy_ref().on_curve(x, y));
    }
  }
  for (const auto& p : toy_points()) {
    if (p.is_infinity()) continue;
    for (std::size_t i = 0; i < 5; ++i) {
      FieldElement y = p.y();
      y.set_bit(i, !y.bit(i));
      // The other root for this x is y + x, so the flip lands on -P exactly when x = 2^i.
      const bool is_negation = p.x() == F.elem(std::uint32_t{1} << i);
      EXPECT_EQ(on_curve({p.x(), y}, toy()), is_negation);
    }
  }
  EXPECT_TRUE(on_curve(std163().g, std163()));
  FieldElement gy = std163().g.y();
  gy.set_bit(0, !gy.bit(0));
  EXPECT_FALSE(on_curve({std163().g.x(), gy}, std163()));
}

TEST(GroupLaw, MatchesIntegerOracleExhaustively) {
  const auto ref = toy_ref().points();
  for (const auto& p : ref) {
    const auto lp = toy_ref().to_lib(p);
    EXPECT_EQ(negate(lp), toy_ref().to_lib(toy_ref().neg(p)));
    EXPECT_EQ(negate(negate(lp)), lp);
    EXPECT_TRUE(point_add_affine(lp, negate(lp), toy()).is_infinity());
    EXPECT_EQ(point_add_affine(lp, AffinePoint::infinity(), toy()), lp);
    EXPECT_EQ(point_double_affine(lp, toy()), toy_ref().to_lib(toy_ref().dbl(p)));
    for (const auto& q : ref) {
      ASSERT_EQ(point_add_affine(lp, toy_ref().to_lib(q), toy()), toy_ref().to_lib(toy_ref().add(p, q)));
    }
  }
  EXPECT_TRUE(negate(AffinePoint::infinity()).is_infinity());
  EXPECT_TRUE(point_double_affine(AffinePoint::infinity(), toy()).is_infinity());
}

TEST(GroupLaw, CayleyTableAssociativeCommutative) {
  const auto pts = toy_points();
  const std::size_t n = pts.size();
  std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto s = point_add_affine(pts[i], pts[j], toy());
      const auto it = std::find(pts.begin(), pts.end(), s);
      ASSERT_NE(it, pts.end());
      table[i][j] = static_cast<std::size_t>(it - pts.begin());
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      ASSERT_EQ(table[i][j], table[j][i]);
      for (std::size_t k = 0; k < n; ++k) ASSERT_EQ(table[table[i][j]][k], table[i][table[j][k]]);
    }
  }
}

TEST(GroupLaw, DoublingIdentityEq7) {
  const auto& F = toy_ref().F;
  for (const auto& p : toy_points()) {
    if (p.is_infinity()) continue;
    const auto d = point_double_affine(p, toy());
    if (p.x().is_zero()) {
      EXPECT_TRUE(d.is_infinity());
      continue;
    }
    const std::uint32_t x2 = F.sq(val(p.x()));
    ASSERT_FALSE(d.is_infinity());
    EXPECT_EQ(val(d.x()), x2 ^ F.mul(toy_ref().b, F.inv(x2)));
  }
}

TEST(GroupLaw, XRelationEq6aExhaustive) {
  const auto& F = toy_ref().F;
  std::size_t pairs = 0;
  for (const auto& a : toy_points()) {
    for (const auto& b : toy_points()) {
      if (a.is_infinity() || b.is_infinity() || a == b || a == negate(b)) continue;
      ASSERT_TRUE(x_add_relation_check(a, b, toy()));
      // Independent restatement on integers.
      const auto sum = toy_ref().add({{val(a.x()), val(a.y())}}, {{val(b.x()), val(b.y())}});
      const auto diff = toy_ref().add({{val(a.x()), val(a.y())}}, toy_ref().neg({{val(b.x()), val(b.y())}}));
      const std::uint32_t t = F.mul(val(b.x()), F.inv(val(a.x()) ^ val(b.x())));
      ASSERT_EQ(x_of(sum).value_or(0), x_of(diff).value_or(0) ^ t ^ F.sq(t));
      ++pairs;
    }
  }
  EXPECT_GT(pairs, 1000U);
}

TEST(GroupLaw, XRelationEq6bOnLadderPairs) {
  // A = sP, B = (s+1)P, so A - B = -P and x_{A-B} = x_P.
  const auto& F = toy_ref().F;
  for (const auto& p : toy_ref().points()) {
    if (!p || p->first == 0) continue;
    for (std::uint64_t s = 1; s + 1 < oracle::kToyOrder; ++s) {
      const auto a = toy_ref().times(s, p);
      const auto b = toy_ref().times(s + 1, p);
      if (!a || !b || a->first == b->first) continue;
      const std::uint32_t t = F.mul(b->first, F.inv(a->first ^ b->first));
      const auto sum = toy_ref().add(a, b);
      ASSERT_EQ(x_of(sum).value_or(0), p->first ^ t ^ F.sq(t));
      EXPECT_TRUE(x_add_relation_check(toy_ref().to_lib(a), toy_ref().to_lib(b), toy()));
    }
  }
}

TEST(GroupLaw, XRelationRandomB163) {
  std::mt19937_64 rng(21);
  const auto& c = std163();
  for (int i = 0; i < 1000; ++i) {
    const auto a = scalar_mul(Scalar(oracle::random_below(rng, c.n - 1) + 1), c.g, c);
    const auto b = scalar_mul(Scalar(oracle::random_below(rng, c.n - 1) + 1), c.g, c);
    if (a == b || a == negate(b)) continue;
    ASSERT_TRUE(x_add_relation_check(a, b, c));
  }
}

TEST(ScalarMul, OraclesAgreeWithIntegerOracle) {
  for (const auto& p : toy_ref().points()) {
    const auto lp = toy_ref().to_lib(p);
    for (std::uint64_t k = 0; k <= oracle::kToyOrder; ++k) {
      const auto expect = toy_ref().to_lib(toy_ref().times(k, p));
      ASSERT_EQ(scalar_mul_oracle(k, lp, toy()), expect);
      ASSERT_EQ(double_and_add(k, lp, toy()), expect);
    }
  }
}

TEST(ScalarMul, LadderExhaustiveOnToyCurve) {
  for (const auto& p : toy_points()) {
    for (std::uint64_t k = 0; k < 2 * oracle::kToyOrder; ++k) {
      const auto r = scalar_mul_detailed(k, p, toy());
      ASSERT_EQ(r.point, double_and_add(k, p, toy())) << format_point(p) << " k=" << k;
      ASSERT_TRUE(on_curve(r.point, toy()));
      ASSERT_EQ(r.reduced, Scalar(k % oracle::kToyOrder));
      ASSERT_EQ(r.oracle_fallback, !p.is_infinity() && p.x().is_zero() && !r.reduced.is_zero());
      if (!r.reduced.is_zero() && !r.oracle_fallback && !p.is_infinity()) {
        ASSERT_EQ(r.loop_iterations, r.reduced.bit_length() - 1);
      }
    }
  }
}

TEST(Ladder, InitExample) {
  const auto f = gf2m::FieldContext::from_exponents({5, 2, 0});
  const auto c = CurveParams::make("t", f, FieldElement(5), FieldElement::from_uint(5, 1),
                                   AffinePoint(FieldElement::from_uint(5, 1), FieldElement(5)), 4, 1);
  const auto s = ladder_init(FieldElement::from_uint(5, 1), c);
  EXPECT_EQ(s, (LadderState{FieldElement::from_uint(5, 1), FieldElement::from_uint(5, 1), FieldElement(5),
                            FieldElement::from_uint(5, 1)}));
  EXPECT_THROW(ladder_init(FieldElement(5), c), DegenerateBasePoint);
}

TEST(Ladder, RatiosTrackOracleAtEveryStep) {
  for (const auto& p : toy_ref().points()) {
    if (!p || p->first == 0) continue;
    const auto xp = toy_ref().F.elem(p->first);
    const auto init = ladder_init(xp, toy());
    ASSERT_EQ(ratio(init.x1, init.z1), x_of(p));
    ASSERT_EQ(ratio(init.x2, init.z2), x_of(toy_ref().dbl(p)));
    for (std::uint64_t k = 1; k < oracle::kToyOrder; ++k) {
      const Scalar ks(k);
      LadderState s = init;
      std::uint64_t sj = 1;
      for (std::size_t i = ks.bit_length() - 1; i-- > 0;) {
        s = ladder_step(s, ks.bit(i), xp, toy());
        sj = 2 * sj + (ks.bit(i) ? 1 : 0);
        ASSERT_EQ(ratio(s.x1, s.z1), x_of(toy_ref().times(sj, p))) << "k=" << k << " s=" << sj;
        ASSERT_EQ(ratio(s.x2, s.z2), x_of(toy_ref().times(sj + 1, p)));
      }
      ASSERT_EQ(sj, k);
      ASSERT_EQ(recover_and_normalize(s, toy_ref().to_lib(p), toy()), toy_ref().to_lib(toy_ref().times(k, p)));
    }
  }
}

TEST(Ladder, InitInvariantB163) {
  const auto& c = std163();
  const auto s = ladder_init(c.g.x(), c);
  const auto g2 = point_double_affine(c.g, c);
  EXPECT_EQ(gf2m::divide(s.x2, s.z2, c.field), g2.x());
  EXPECT_EQ(gf2m::divide(s.x1, s.z1, c.field), c.g.x());
}

TEST(Ladder, BranchSymmetryAndOpCounts) {
  std::mt19937_64 rng(22);
  for (const CurveParams* c : {&toy(), &std163()}) {
    for (int i = 0; i < 500; ++i) {
      const std::size_t m = c->m();
      const LadderState s{oracle::random_element(rng, m), oracle::random_element(rng, m),
                          oracle::random_element(rng, m), oracle::random_element(rng, m)};
      const auto xp = oracle::random_nonzero(rng, m);
      OpCounts c0;
      OpCounts c1;
      const auto s0 = ladder_step(s, false, xp, *c, &c0);
      EXPECT_EQ(s0, swap_registers(ladder_step(swap_registers(s), true, xp, *c, &c1)));
      EXPECT_EQ(c0, (OpCounts{6, 5, 3}));
      EXPECT_EQ(c1, (OpCounts{6, 5, 3}));
    }
  }
}

TEST(Ladder, StepMatchesProjectiveFormulas) {
  // Bit 1: (X1:Z1) <- sum, (X2:Z2) <- double, written out directly.
  std::mt19937_64 rng(23);
  const auto& c = std163();
  const auto& f = c.field;
  using gf2m::add;
  using gf2m::mul;
  using gf2m::square;
  for (int i = 0; i < 200; ++i) {
    const LadderState s{oracle::random_element(rng, 163), oracle::random_element(rng, 163),
                        oracle::random_element(rng, 163), oracle::random_element(rng, 163)};
    const auto xp = oracle::random_nonzero(rng, 163);
    const auto z_sum = square(add(mul(s.x1, s.z2, f), mul(s.x2, s.z1, f)), f);
    const auto x_sum = add(mul(xp, z_sum, f), mul(mul(s.x1, s.x2, f), mul(s.z1, s.z2, f), f));
    const auto z_dbl = mul(square(s.x2, f), square(s.z2, f), f);
    const auto x_dbl = add(square(square(s.x2, f), f), mul(c.b, square(square(s.z2, f), f), f));
    EXPECT_EQ(ladder_step(s, true, xp, c), (LadderState{x_sum, z_sum, x_dbl, z_dbl}));
  }
}

TEST(Recovery, MatchesEq8OnToyCurve) {
  // y_A = x_P^-1 (x_A + x_P)[(x_A + x_P)(x_B + x_P) + x_P^2 + y_P] + y_P
  const auto& F = toy_ref().F;
  for (const auto& p : toy_ref().points()) {
    if (!p || p->first == 0) continue;
    const auto [xp, yp] = *p;
    for (std::uint64_t k = 1; k < oracle::kToyOrder; ++k) {
      const auto a = toy_ref().times(k, p);
      const auto b = toy_ref().times(k + 1, p);
      if (!a || !b) continue;
      const std::uint32_t u = a->first ^ xp;
      const std::uint32_t y = F.mul(F.mul(F.inv(xp), u), F.mul(u, b->first ^ xp) ^ F.sq(xp) ^ yp) ^ yp;
      ASSERT_EQ(y, a->second);
    }
  }
}

TEST(Recovery, DegenerateRegisters) {
  const auto& c = toy();
  const auto one = c.field.one();
  const auto zero = c.field.zero();
  for (const auto& p : toy_points()) {
    if (p.is_infinity() || p.x().is_zero()) continue;
    EXPECT_TRUE(recover_and_normalize({one, zero, one, one}, p, c).is_infinity());
    EXPECT_EQ(recover_and_normalize({one, one, one, zero}, p, c), negate(p));
    // k = 1: no loop iterations, recovery returns P itself.
    EXPECT_EQ(recover_and_normalize(ladder_init(p.x(), c), p, c), p);
  }
  EXPECT_THROW(recover_and_normalize({one, one, one, one}, AffinePoint::infinity(), c), ContractViolation);
}

TEST(ScalarMul, EdgeCases) {
  const auto& c = toy();
  for (const auto& p : toy_points()) {
    EXPECT_TRUE(scalar_mul(0, p, c).is_infinity());
    EXPECT_EQ(scalar_mul(1, p, c), p);
  }
  EXPECT_TRUE(scalar_mul(5, AffinePoint::infinity(), c).is_infinity());
  const auto& F = toy_ref().F;
  EXPECT_THROW(scalar_mul(3, {F.elem(1), F.elem(1)}, c), InvalidPoint);
  // The two-torsion point takes the flagged fallback.
  const auto pts = toy_points();
  const auto t2 = std::find_if(pts.begin(), pts.end(), [](const AffinePoint& p) {
    return !p.is_infinity() && p.x().is_zero();
  });
  ASSERT_NE(t2, pts.end());
  const auto r = scalar_mul_detailed(3, *t2, c);
  EXPECT_TRUE(r.oracle_fallback);
  EXPECT_EQ(r.point, *t2);
  EXPECT_TRUE(scalar_mul(2, *t2, c).is_infinity());
}

TEST(ScalarMul, HomomorphismToy) {
  std::mt19937_64 rng(24);
  const auto& c = toy();
  const auto pts = toy_points();
  for (int i = 0; i < 2000; ++i) {
    const auto& p = pts[rng() % pts.size()];
    const std::uint64_t k = rng() % 100;
    const std::uint64_t l = rng() % 100;
    ASSERT_EQ(scalar_mul(k + l, p, c), point_add_affine(scalar_mul(k, p, c), scalar_mul(l, p, c), c));
  }
}

TEST(B163, KnownAnswerProperties) {
  const auto& c = std163();
  EXPECT_TRUE(c.field.is_b163());
  EXPECT_TRUE(on_curve(c.g, c));
  EXPECT_TRUE(scalar_mul(Scalar(c.n), c.g, c).is_infinity());
  EXPECT_TRUE(scalar_mul_oracle(Scalar(c.n), c.g, c).is_infinity());
  EXPECT_EQ(scalar_mul(Scalar(c.n - 1), c.g, c), negate(c.g));
  EXPECT_EQ(scalar_mul(Scalar(c.n + 1), c.g, c), c.g);
  EXPECT_EQ(scalar_mul(2, c.g, c), point_double_affine(c.g, c));
}

TEST(B163, RandomScalarsMatchDoubleAndAdd) {
  std::mt19937_64 rng(25);
  const auto& c = std163();
  for (int i = 0; i < 100; ++i) {
    const Scalar k(oracle::random_below(rng, c.n));
    const auto q = scalar_mul(k, c.g, c);
    ASSERT_TRUE(on_curve(q, c));
    ASSERT_EQ(q, double_and_add(k, c.g, c)) << k.to_hex();
  }
}

TEST(B163, Homomorphism) {
  std::mt19937_64 rng(26);
  const auto& c = std163();
  for (int i = 0; i < 20; ++i) {
    const BigUint k = oracle::random_below(rng, c.n);
    const BigUint l = oracle::random_below(rng, c.n);
    EXPECT_EQ(scalar_mul(Scalar(k + l), c.g, c),
              point_add_affine(scalar_mul(Scalar(k), c.g, c), scalar_mul(Scalar(l), c.g, c), c));
  }
}

TEST(B163, BatchMatchesSequential) {
  std::mt19937_64 rng(27);
  const auto& c = std163();
  std::vector<Scalar> ks;
  for (int i = 0; i < 16; ++i) ks.emplace_back(oracle::random_below(rng, c.n));
  const auto batch = scalar_mul_batch(ks, c.g, c, 4);
  ASSERT_EQ(batch.size(), ks.size());
  for (std::size_t i = 0; i < ks.size(); ++i) EXPECT_EQ(batch[i], scalar_mul(ks[i], c.g, c));
}

TEST(Scalar, Basics) {
  const auto k = Scalar::from_hex("0x1a");
  EXPECT_EQ(k.value(), 26);
  EXPECT_EQ(k.bit_length(), 5U);
  EXPECT_TRUE(k.bit(4));
  EXPECT_FALSE(k.bit(0));
  EXPECT_EQ(k.to_hex(), "1a");
  EXPECT_EQ(Scalar(0).bit_length(), 0U);
  EXPECT_THROW(Scalar::from_hex("zz"), ParseError);
  EXPECT_EQ(reduce_scalar(Scalar(40), toy()), Scalar(2));
}

TEST(CurveFile, RoundTripAndShippedB163) {
  const auto file = load_curve_file(HKECC_DATA_DIR "/b163.curve");
  const auto& c = file.require_curve();
  EXPECT_EQ(c.field, std163().field);
  EXPECT_EQ(c.b, std163().b);
  EXPECT_EQ(c.g, std163().g);
  EXPECT_EQ(c.n, std163().n);
  const auto again = parse_curve_file(format_curve_file(c)).require_curve();
  EXPECT_EQ(again.field, c.field);
  EXPECT_EQ(again.g, c.g);
  EXPECT_EQ(again.n, c.n);
  EXPECT_EQ(again.h, c.h);
  const auto toy21 = CurveParams::make("t", toy().field.with_cutoff(3), toy().a, toy().b, toy().g, toy().n, 1);
  EXPECT_EQ(parse_curve_file(format_curve_file(toy21)).require_curve().field.cutoff(), 3U);
}

TEST(CurveFile, Errors) {
  EXPECT_THROW(parse_curve_file("m = 3\n"), ParseError);
  EXPECT_THROW(parse_curve_file("m = x\nf = b\n"), ParseError);
  EXPECT_THROW(parse_curve_file("m = 3\nf = b\nm = 3\n"), ParseError);
  EXPECT_THROW(parse_curve_file("m = 3\nf = 7\n"), ParseError);
  EXPECT_THROW(parse_curve_file("garbage\n"), ParseError);
  const auto field_only = parse_curve_file("# comment\nm = 3\nf = b\n");
  EXPECT_EQ(field_only.field.m(), 3U);
  EXPECT_FALSE(field_only.curve.has_value());
  EXPECT_THROW(field_only.require_curve(), ParseError);
  // Off-curve generator.
  EXPECT_THROW(parse_curve_file("m=5\nf=25\na=1\nb=3\ngx=1\ngy=1\nn=26\nh=1\n"), InvalidPoint);
}

TEST(PointFormat, RoundTrip) {
  EXPECT_TRUE(parse_point("INF", 5).is_infinity());
  EXPECT_EQ(format_point(AffinePoint::infinity()), "INF");
  for (const auto& p : toy_points()) EXPECT_EQ(parse_point(format_point(p), 5), p);
  EXPECT_THROW(parse_point("12", 5), ParseError);
}
