#include <cctype>

#include "hkecc/ecpm.hpp"

namespace hkecc::ecpm {

using namespace gf2m;

const FieldElement& AffinePoint::x() const {
  if (!xy_) throw ContractViolation("point at infinity has no coordinates");
  return xy_->first;
}

const FieldElement& AffinePoint::y() const {
  if (!xy_) throw ContractViolation("point at infinity has no coordinates");
  return xy_->second;
}

// --- scalars -------------------------------------------------------------------

Scalar::Scalar(BigUint value) : value_(std::move(value)) {
  if (value_ < 0) throw ContractViolation("scalar must be non-negative");
}

Scalar Scalar::from_hex(std::string_view text) { return Scalar(parse_hex_integer(text)); }

std::size_t Scalar::bit_length() const {
  return value_ == 0 ? 0 : static_cast<std::size_t>(boost::multiprecision::msb(value_)) + 1;
}

bool Scalar::bit(std::size_t i) const { return boost::multiprecision::bit_test(value_, static_cast<unsigned>(i)); }

std::string Scalar::to_hex() const { return to_hex_integer(value_); }

BigUint parse_hex_integer(std::string_view text) {
  if (text.size() >= 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) text.remove_prefix(2);
  if (text.empty()) throw ParseError("empty hex integer");
  BigUint v = 0;
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (!std::isxdigit(c)) throw ParseError("malformed hex integer '" + std::string(text) + "'");
    const int d = std::isdigit(c) ? c - '0' : std::tolower(c) - 'a' + 10;
    v = (v << 4) | d;
  }
  return v;
}

std::string to_hex_integer(const BigUint& value) {
  if (value == 0) return "0";
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  BigUint v = value;
  while (v != 0) {
    out.push_back(kDigits[static_cast<unsigned>(v & 0xF)]);
    v >>= 4;
  }
  return {out.rbegin(), out.rend()};
}

// --- curve parameters ----------------------------------------------------------------

CurveParams CurveParams::make(std::string name, FieldContext field, FieldElement a, FieldElement b,
                              AffinePoint g, BigUint n, BigUint h) {
  const std::size_t m = field.m();
  if (a.width() != m || b.width() != m) throw ContractViolation("curve coefficients must have width m");
  if (b.is_zero()) throw ContractViolation("curve coefficient b must be nonzero");
  if (!g.is_infinity() && (g.x().width() != m || g.y().width() != m)) {
    throw ContractViolation("base point coordinates must have width m");
  }
  if (n <= 0 || h <= 0) throw ContractViolation("order and cofactor must be positive");
  CurveParams c{std::move(name), std::move(field), std::move(a), std::move(b), std::move(g), std::move(n),
                std::move(h)};
  if (!on_curve(c.g, c)) throw InvalidPoint("base point is not on the curve");
  return c;
}

CurveParams b163() {
  const FieldContext f = FieldContext::from_exponents({163, 7, 6, 3, 0});
  return CurveParams::make(
      "B-163", f, f.one(), parse_hex("20a601907b8c953ca1481eb10512f78744a3205fd", 163),
      AffinePoint(parse_hex("3f0eba16286a2d57ea0991168d4994637e8343e36", 163),
                  parse_hex("0d51fbc6c71a0094fa2cdd545b11c5c0c797324f1", 163)),
      parse_hex_integer("40000000000000000000292fe77e70c12a4234c33"), 2);
}

// --- affine group law ---------------------------------------------------------------

bool on_curve(const AffinePoint& p, const CurveParams& c) {
  if (p.is_infinity()) return true;
  const auto& f = c.field;
  const FieldElement& x = p.x();
  const FieldElement& y = p.y();
  if (x.width() != f.m() || y.width() != f.m()) return false;
  const FieldElement x2 = square(x, f);
  const FieldElement lhs = add(square(y, f), mul(x, y, f));
  const FieldElement rhs = add(add(mul(x2, x, f), mul(c.a, x2, f)), c.b);
  return lhs == rhs;
}

AffinePoint negate(const AffinePoint& p) {
  if (p.is_infinity()) return p;
  return {p.x(), add(p.x(), p.y())};
}

AffinePoint point_double_affine(const AffinePoint& a, const CurveParams& c) {
  if (a.is_infinity() || a.x().is_zero()) return AffinePoint::infinity();
  const auto& f = c.field;
  const FieldElement lambda = add(a.x(), divide(a.y(), a.x(), f));
  const FieldElement x3 = add(add(square(lambda, f), lambda), c.a);
  const FieldElement y3 = add(add(square(a.x(), f), mul(lambda, x3, f)), x3);
  return {x3, y3};
}

AffinePoint point_add_affine(const AffinePoint& a, const AffinePoint& b, const CurveParams& c) {
  if (a.is_infinity()) return b;
  if (b.is_infinity()) return a;
  const auto& f = c.field;
  if (a.x() == b.x()) {
    return a.y() == b.y() ? point_double_affine(a, c) : AffinePoint::infinity();
  }
  const FieldElement dx = add(a.x(), b.x());
  const FieldElement lambda = divide(add(a.y(), b.y()), dx, f);
  const FieldElement x3 = add(add(add(square(lambda, f), lambda), dx), c.a);
  const FieldElement y3 = add(add(mul(lambda, add(a.x(), x3), f), x3), a.y());
  return {x3, y3};
}

AffinePoint scalar_mul_oracle(const Scalar& k, const AffinePoint& p, const CurveParams& c) {
  AffinePoint lo = AffinePoint::infinity();
  AffinePoint hi = p;
  for (std::size_t i = k.bit_length(); i-- > 0;) {
    if (k.bit(i)) {
      lo = point_add_affine(lo, hi, c);
      hi = point_double_affine(hi, c);
    } else {
      hi = point_add_affine(lo, hi, c);
      lo = point_double_affine(lo, c);
    }
  }
  return lo;
}

AffinePoint double_and_add(const Scalar& k, const AffinePoint& p, const CurveParams& c) {
  AffinePoint q = AffinePoint::infinity();
  for (std::size_t i = k.bit_length(); i-- > 0;) {
    q = point_double_affine(q, c);
    if (k.bit(i)) q = point_add_affine(q, p, c);
  }
  return q;
}

bool x_add_relation_check(const AffinePoint& a, const AffinePoint& b, const CurveParams& c) {
  if (a.is_infinity() || b.is_infinity()) throw ContractViolation("relation needs finite points");
  if (a.x() == b.x()) throw ContractViolation("relation needs A != +-B");
  const auto& f = c.field;
  const AffinePoint sum = point_add_affine(a, b, c);
  const AffinePoint diff = point_add_affine(a, negate(b), c);
  const FieldElement q = divide(b.x(), add(a.x(), b.x()), f);
  return sum.x() == add(add(diff.x(), q), square(q, f));
}

}  // namespace hkecc::ecpm
