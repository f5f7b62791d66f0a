#pragma once

// Point multiplication Q = kP on E: y^2 + xy = x^3 + ax^2 + b over GF(2^m).
//
// The production path is the x-only Montgomery ladder in projective (X, Z)
// coordinates with a single inversion at the end. The affine group law and
// the two affine scalar multiplications exist as independent oracles.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "hkecc/gf2m.hpp"

namespace hkecc::ecpm {

using gf2m::FieldContext;
using gf2m::FieldElement;
using BigUint = boost::multiprecision::cpp_int;

class AffinePoint {
 public:
  AffinePoint() = default;  // point at infinity
  AffinePoint(FieldElement x, FieldElement y) : xy_(std::in_place, std::move(x), std::move(y)) {}

  static AffinePoint infinity() { return {}; }

  bool is_infinity() const { return !xy_.has_value(); }
  const FieldElement& x() const;
  const FieldElement& y() const;

  friend bool operator==(const AffinePoint&, const AffinePoint&) = default;

 private:
  std::optional<std::pair<FieldElement, FieldElement>> xy_;
};

/// Non-negative scalar k = sum k_i 2^i.
class Scalar {
 public:
  Scalar() = default;
  explicit Scalar(BigUint value);
  Scalar(unsigned long long value) : Scalar(BigUint(value)) {}  // NOLINT(google-explicit-constructor)

  /// Hex digits, optional 0x prefix.
  static Scalar from_hex(std::string_view text);

  const BigUint& value() const { return value_; }
  /// Position of the top set bit plus one; 0 for k = 0.
  std::size_t bit_length() const;
  bool bit(std::size_t i) const;
  bool is_zero() const { return value_ == 0; }
  std::string to_hex() const;

  friend bool operator==(const Scalar&, const Scalar&) = default;

 private:
  BigUint value_;
};

BigUint parse_hex_integer(std::string_view text);
std::string to_hex_integer(const BigUint& value);

struct CurveParams {
  std::string name;
  FieldContext field;
  FieldElement a;
  FieldElement b;
  AffinePoint g;
  BigUint n;      ///< order of g
  BigUint h = 1;  ///< cofactor

  /// Validates widths, b != 0, and that g lies on the curve.
  static CurveParams make(std::string name, FieldContext field, FieldElement a, FieldElement b,
                          AffinePoint g, BigUint n, BigUint h);

  BigUint group_order() const { return n * h; }
  std::size_t m() const { return field.m(); }
};

/// NIST B-163: f = x^163 + x^7 + x^6 + x^3 + 1, a = 1.
CurveParams b163();

bool on_curve(const AffinePoint& p, const CurveParams& c);

/// (x, y) -> (x, x + y).
AffinePoint negate(const AffinePoint& p);

AffinePoint point_add_affine(const AffinePoint& a, const AffinePoint& b, const CurveParams& c);
AffinePoint point_double_affine(const AffinePoint& a, const CurveParams& c);

/// Two-register affine ladder: (A, B) <- (2A, A + B) on a 0 bit,
/// (A + B, 2B) on a 1 bit, starting from (infinity, P).
AffinePoint scalar_mul_oracle(const Scalar& k, const AffinePoint& p, const CurveParams& c);

/// Left-to-right double-and-add.
AffinePoint double_and_add(const Scalar& k, const AffinePoint& p, const CurveParams& c);

/// x_{A+B} == x_{A-B} + x_B/(x_A + x_B) + (x_B/(x_A + x_B))^2, with A + B and
/// A - B taken from the affine group law. Requires finite A != +-B.
bool x_add_relation_check(const AffinePoint& a, const AffinePoint& b, const CurveParams& c);

// --- projective ladder --------------------------------------------------------

/// (X1 : Z1) tracks s_j P and (X2 : Z2) tracks (s_j + 1) P. Z = 0 encodes
/// the point at infinity.
struct LadderState {
  FieldElement x1, z1, x2, z2;
  friend bool operator==(const LadderState&, const LadderState&) = default;
};

/// (X1, Z1) <-> (X2, Z2).
LadderState swap_registers(const LadderState& s);

struct OpCounts {
  std::size_t mul = 0;
  std::size_t square = 0;
  std::size_t add = 0;
  friend bool operator==(const OpCounts&, const OpCounts&) = default;
};

/// X1 = xP, Z1 = 1, X2 = xP^4 + b, Z2 = xP^2. Throws DegenerateBasePoint for xP = 0.
LadderState ladder_init(const FieldElement& xp, const CurveParams& c);

/// One main-loop iteration. Bit 1 adds into (X1, Z1) and doubles (X2, Z2);
/// bit 0 is the mirror image. If `counts` is given the field operations
/// performed are tallied into it.
LadderState ladder_step(const LadderState& s, bool bit, const FieldElement& xp, const CurveParams& c,
                        OpCounts* counts = nullptr);

/// Affine kP from the final ladder registers, including the y-coordinate.
/// Z1 = 0 gives infinity; Z2 = 0 means (k+1)P = infinity, so kP = -P.
AffinePoint recover_and_normalize(const LadderState& s, const AffinePoint& p, const CurveParams& c);

/// k mod (h * n). Reducing by the full group order keeps the result valid
/// for points outside the subgroup generated by g.
Scalar reduce_scalar(const Scalar& k, const CurveParams& c);

struct ScalarMulResult {
  AffinePoint point;
  Scalar reduced;                 ///< scalar after reduce_scalar
  std::size_t loop_iterations = 0;
  bool oracle_fallback = false;   ///< x_P = 0: computed by the affine oracle
};

/// Throws InvalidPoint if P is not on the curve.
ScalarMulResult scalar_mul_detailed(const Scalar& k, const AffinePoint& p, const CurveParams& c);
AffinePoint scalar_mul(const Scalar& k, const AffinePoint& p, const CurveParams& c);

/// Independent scalars on worker threads; 0 threads means hardware concurrency.
std::vector<AffinePoint> scalar_mul_batch(std::span<const Scalar> ks, const AffinePoint& p,
                                          const CurveParams& c, unsigned threads = 0);

// --- text formats ----------------------------------------------------------------

/// `INF` or `x_hex,y_hex`.
AffinePoint parse_point(std::string_view text, std::size_t m);
std::string format_point(const AffinePoint& p);

/// Contents of a curve file. Field-only files carry just m and f.
struct CurveFile {
  FieldContext field;
  std::optional<CurveParams> curve;

  const CurveParams& require_curve() const;
};

/// `key = value` lines, `#` comments. Keys: m (decimal), f (hex, m+1 bits),
/// a, b, gx, gy (hex field elements), n, h (hex integers), optional name and
/// cutoff (decimal).
CurveFile parse_curve_file(std::string_view text);
CurveFile load_curve_file(const std::string& path);
std::string format_curve_file(const CurveParams& c);

}  // namespace hkecc::ecpm
