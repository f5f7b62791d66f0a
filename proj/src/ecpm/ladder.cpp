#include <algorithm>
#include <thread>

#include "hkecc/ecpm.hpp"

namespace hkecc::ecpm {

using namespace gf2m;

namespace {

// Field operations that optionally tally what they do.
struct CountingOps {
  const FieldContext& f;
  OpCounts* counts;

  FieldElement mul(const FieldElement& a, const FieldElement& b) const {
    if (counts) ++counts->mul;
    return gf2m::mul(a, b, f);
  }
  FieldElement sq(const FieldElement& a) const {
    if (counts) ++counts->square;
    return gf2m::square(a, f);
  }
  FieldElement add(const FieldElement& a, const FieldElement& b) const {
    if (counts) ++counts->add;
    return gf2m::add(a, b);
  }
};

// (Xa : Za) <- (Xa : Za) + (Xd : Zd), (Xd : Zd) <- 2 (Xd : Zd), where the two
// tracked points differ by P. Operation order follows the per-cycle schedule.
void add_and_double(FieldElement& xa, FieldElement& za, FieldElement& xd, FieldElement& zd,
                    const FieldElement& xp, const FieldElement& b, const CountingOps& op) {
  const FieldElement xd_za = op.mul(xd, za);
  const FieldElement xd2 = op.sq(xd);
  const FieldElement xa_zd = op.mul(xa, zd);
  const FieldElement zd2 = op.sq(zd);
  const FieldElement cross = op.add(xa_zd, xd_za);
  const FieldElement all4 = op.mul(xa_zd, xd_za);
  za = op.sq(cross);
  const FieldElement za_xp = op.mul(za, xp);
  const FieldElement zd4 = op.sq(zd2);
  xa = op.add(za_xp, all4);
  const FieldElement b_zd4 = op.mul(b, zd4);
  const FieldElement xd4 = op.sq(xd2);
  xd = op.add(b_zd4, xd4);
  zd = op.mul(xd2, zd2);
}

}  // namespace

LadderState swap_registers(const LadderState& s) { return {s.x2, s.z2, s.x1, s.z1}; }

LadderState ladder_init(const FieldElement& xp, const CurveParams& c) {
  if (xp.width() != c.m()) throw ContractViolation("ladder_init: x_P width does not match field");
  if (xp.is_zero()) throw DegenerateBasePoint();
  const FieldElement xp2 = square(xp, c.field);
  return {xp, c.field.one(), add(square(xp2, c.field), c.b), xp2};
}

LadderState ladder_step(const LadderState& s, bool bit, const FieldElement& xp, const CurveParams& c,
                        OpCounts* counts) {
  LadderState r = s;
  const CountingOps op{c.field, counts};
  if (bit) {
    add_and_double(r.x1, r.z1, r.x2, r.z2, xp, c.b, op);
  } else {
    add_and_double(r.x2, r.z2, r.x1, r.z1, xp, c.b, op);
  }
  return r;
}

AffinePoint recover_and_normalize(const LadderState& s, const AffinePoint& p, const CurveParams& c) {
  if (p.is_infinity() || p.x().is_zero()) throw ContractViolation("recovery needs finite P with x_P != 0");
  if (s.z1.is_zero()) return AffinePoint::infinity();
  if (s.z2.is_zero()) return negate(p);

  const auto& f = c.field;
  const FieldElement& xp = p.x();
  const FieldElement& yp = p.y();
  const FieldElement z1z2 = mul(s.z1, s.z2, f);
  const FieldElement xp_z2 = mul(xp, s.z2, f);
  // One inversion serves both coordinates: 1/Z1 = xP Z2 / (xP Z1 Z2).
  const FieldElement inv = invert(mul(xp, z1z2, f), f);
  const FieldElement x3 = mul(s.x1, mul(xp_z2, inv, f), f);

  const FieldElement lhs = mul(add(s.x1, mul(xp, s.z1, f)), add(s.x2, xp_z2), f);
  const FieldElement rhs = mul(add(square(xp, f), yp), z1z2, f);
  const FieldElement y3 = add(mul(mul(add(xp, x3), add(lhs, rhs), f), inv, f), yp);
  return {x3, y3};
}

Scalar reduce_scalar(const Scalar& k, const CurveParams& c) {
  return Scalar(k.value() % c.group_order());
}

ScalarMulResult scalar_mul_detailed(const Scalar& k, const AffinePoint& p, const CurveParams& c) {
  if (!on_curve(p, c)) throw InvalidPoint("point is not on the curve");
  ScalarMulResult out;
  out.reduced = reduce_scalar(k, c);
  if (out.reduced.is_zero() || p.is_infinity()) return out;
  if (p.x().is_zero()) {
    out.point = scalar_mul_oracle(out.reduced, p, c);
    out.oracle_fallback = true;
    return out;
  }
  const std::size_t t = out.reduced.bit_length();
  LadderState s = ladder_init(p.x(), c);
  for (std::size_t i = t - 1; i-- > 0;) {
    s = ladder_step(s, out.reduced.bit(i), p.x(), c);
    ++out.loop_iterations;
  }
  out.point = recover_and_normalize(s, p, c);
  return out;
}

AffinePoint scalar_mul(const Scalar& k, const AffinePoint& p, const CurveParams& c) {
  return scalar_mul_detailed(k, p, c).point;
}

std::vector<AffinePoint> scalar_mul_batch(std::span<const Scalar> ks, const AffinePoint& p,
                                          const CurveParams& c, unsigned threads) {
  if (!on_curve(p, c)) throw InvalidPoint("point is not on the curve");
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(ks.size(), 1)));
  std::vector<AffinePoint> out(ks.size());
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < ks.size(); i += threads) out[i] = scalar_mul(ks[i], p, c);
      });
    }
  }
  return out;
}

}  // namespace hkecc::ecpm
