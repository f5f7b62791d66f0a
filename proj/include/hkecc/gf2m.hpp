#pragma once

// Polynomial-basis arithmetic over GF(2^m).
//
// Coefficients are stored little-endian: bit i of the limb array is the
// coefficient of x^i. Every object carries its logical width; bits at or
// above the width are always zero.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hkecc/errors.hpp"

namespace hkecc::gf2m {

using Word = std::uint64_t;
inline constexpr std::size_t kWordBits = 64;

constexpr std::size_t words_for(std::size_t bits) { return (bits + kWordBits - 1) / kWordBits; }

/// Width-tagged bit vector. The tag keeps reduced field elements, unreduced
/// products and moduli from being mixed up at compile time.
template <class Tag>
class BitPoly {
 public:
  BitPoly() = default;
  explicit BitPoly(std::size_t width) : width_(width), words_(words_for(width), 0) {}

  /// Builds from limbs; throws ContractViolation if a bit at or above
  /// `width` is set.
  static BitPoly from_words(std::size_t width, std::span<const Word> words) {
    BitPoly p(width);
    for (std::size_t i = 0; i < words.size(); ++i) {
      if (i < p.words_.size()) {
        p.words_[i] = words[i];
      } else if (words[i] != 0) {
        throw ContractViolation("value does not fit in " + std::to_string(width) + " bits");
      }
    }
    if (!p.top_clean()) {
      throw ContractViolation("value does not fit in " + std::to_string(width) + " bits");
    }
    return p;
  }

  static BitPoly from_uint(std::size_t width, std::uint64_t value) {
    const Word w[1] = {value};
    return from_words(width, w);
  }

  std::size_t width() const { return width_; }
  std::span<const Word> words() const { return words_; }
  std::span<Word> words() { return words_; }

  bool bit(std::size_t i) const {
    return i < width_ && ((words_[i / kWordBits] >> (i % kWordBits)) & 1U) != 0;
  }
  void set_bit(std::size_t i, bool value) {
    if (i >= width_) throw ContractViolation("bit index out of range");
    const Word mask = Word{1} << (i % kWordBits);
    if (value) {
      words_[i / kWordBits] |= mask;
    } else {
      words_[i / kWordBits] &= ~mask;
    }
  }

  bool is_zero() const {
    for (Word w : words_) {
      if (w != 0) return false;
    }
    return true;
  }
  bool is_one() const {
    if (words_.empty() || words_[0] != 1) return false;
    for (std::size_t i = 1; i < words_.size(); ++i) {
      if (words_[i] != 0) return false;
    }
    return true;
  }

  /// Index of the highest set bit, or -1 for the zero polynomial.
  long degree() const;

  /// Same coefficients at a different width. Throws if shrinking would drop
  /// a set bit.
  template <class OtherTag = Tag>
  BitPoly<OtherTag> resized(std::size_t width) const {
    return BitPoly<OtherTag>::from_words(width, words_);
  }

  friend bool operator==(const BitPoly&, const BitPoly&) = default;

 private:
  bool top_clean() const {
    const std::size_t rem = width_ % kWordBits;
    return rem == 0 || words_.empty() || (words_.back() >> rem) == 0;
  }

  std::size_t width_ = 0;
  std::vector<Word> words_;
};

long degree_of(std::span<const Word> words);

template <class Tag>
long BitPoly<Tag>::degree() const {
  return degree_of(words_);
}

struct FieldTag {};
struct RawTag {};
struct PolyTag {};

using FieldElement = BitPoly<FieldTag>;
using RawProduct = BitPoly<RawTag>;
using Polynomial = BitPoly<PolyTag>;

inline constexpr std::size_t kDefaultCutoff = 41;

/// Degree m, irreducible modulus f(x) and the hybrid multiplier's
/// schoolbook cutoff. Immutable once built.
class FieldContext {
 public:
  /// `modulus` must have bit m and bit 0 set. Moduli of degree <= 16 are
  /// checked for irreducibility by trial division; larger ones are trusted.
  /// A cutoff of 0 selects min(kDefaultCutoff, m).
  explicit FieldContext(const Polynomial& modulus, std::size_t cutoff = 0);

  /// Convenience: modulus given by its exponents, e.g. {163, 7, 6, 3, 0}.
  static FieldContext from_exponents(std::initializer_list<std::size_t> exps, std::size_t cutoff = 0);

  std::size_t m() const { return m_; }
  const Polynomial& modulus() const { return modulus_; }
  std::size_t cutoff() const { return cutoff_; }
  /// Exponents of f(x) below m, descending.
  std::span<const std::size_t> tail_exponents() const { return tail_; }
  bool is_b163() const { return b163_; }

  FieldContext with_cutoff(std::size_t cutoff) const;

  FieldElement zero() const { return FieldElement(m_); }
  FieldElement one() const { return FieldElement::from_uint(m_, 1); }

  friend bool operator==(const FieldContext& a, const FieldContext& b) {
    return a.modulus_ == b.modulus_ && a.cutoff_ == b.cutoff_;
  }

 private:
  Polynomial modulus_;
  std::size_t m_ = 0;
  std::size_t cutoff_ = 0;
  std::vector<std::size_t> tail_;
  bool b163_ = false;
};

/// True when `f` has no factor of degree 1..deg(f)/2 (trial division).
bool is_irreducible(const Polynomial& f);

// --- addition ---------------------------------------------------------------

FieldElement add(const FieldElement& a, const FieldElement& b);

// --- unreduced multiplication ------------------------------------------------

/// Shape of a hybrid multiplication's recursion, recorded while it runs.
struct MultiplierStats {
  std::size_t karatsuba_stages = 0;  ///< depth of Karatsuba splitting
  std::size_t karatsuba_nodes = 0;
  std::size_t schoolbook_leaves = 0;
  std::vector<std::size_t> leaf_widths;
  /// level_widths[d] = operand width at recursion depth d (root first).
  std::vector<std::size_t> level_widths;
};

/// 64x64 -> 128 carry-less product, portable.
void clmul64(Word a, Word b, Word& lo, Word& hi);

/// Word-parallel long multiplication; width of result is 2n-1.
RawProduct mul_schoolbook(const FieldElement& a, const FieldElement& b);

/// Karatsuba all the way down to single-bit AND gates.
RawProduct mul_karatsuba(const FieldElement& a, const FieldElement& b);

/// Karatsuba that hands off to schoolbook once the operand width is at or
/// below `cutoff`.
RawProduct mul_hybrid(const FieldElement& a, const FieldElement& b, std::size_t cutoff,
                      MultiplierStats* stats = nullptr);
RawProduct mul_hybrid(const FieldElement& a, const FieldElement& b, const FieldContext& ctx);

/// The three sub-products of one Karatsuba split.
struct KaratsubaPartials {
  std::size_t half = 0;  ///< low-half width, ceil(n/2)
  RawProduct m0;         ///< A_L * B_L
  RawProduct m1;         ///< (A_H + A_L)(B_H + B_L)
  RawProduct m2;         ///< A_H * B_H
};

/// One level of splitting; sub-products use the hybrid rule with `cutoff`.
/// Requires width >= 2.
KaratsubaPartials karatsuba_partials(const FieldElement& a, const FieldElement& b,
                                     std::size_t cutoff = 1);

/// M2 x^{2h} + (M0 + M1 + M2) x^h + M0, truncated to 2n-1 bits.
RawProduct karatsuba_combine(const KaratsubaPartials& parts, std::size_t n);

// --- reduction ----------------------------------------------------------------

/// Reference path: top-down shift-XOR against f(x). Works for any modulus.
FieldElement reduce_generic(const RawProduct& p, const FieldContext& ctx);

/// Fixed word-level sequence for f = x^163 + x^7 + x^6 + x^3 + 1.
FieldElement reduce_b163(const RawProduct& p);

/// Dispatches to the B-163 path when the context matches, else generic.
FieldElement reduce(const RawProduct& p, const FieldContext& ctx);

// --- field operations -----------------------------------------------------------

FieldElement mul(const FieldElement& a, const FieldElement& b, const FieldContext& ctx);

/// Bit i of `a` moves to bit 2i. No AND terms are involved.
RawProduct spread(const FieldElement& a);

FieldElement square(const FieldElement& a, const FieldContext& ctx);

struct Inversion {
  FieldElement value;
  std::size_t iterations = 0;  ///< degree-reduction steps taken, <= 2m
};

/// Extended Euclid over GF(2)[x]. Throws NonInvertible for zero.
Inversion invert_counted(const FieldElement& a, const FieldContext& ctx);
FieldElement invert(const FieldElement& a, const FieldContext& ctx);

FieldElement divide(const FieldElement& num, const FieldElement& den, const FieldContext& ctx);

// --- text encoding ------------------------------------------------------------------

/// Big-endian hex (most significant coefficient first), optional 0x prefix,
/// case-insensitive. At most ceil(width/4) digits and no bit at or above
/// `width`.
FieldElement parse_hex(std::string_view text, std::size_t width);
Polynomial parse_hex_polynomial(std::string_view text, std::size_t width);

/// Lowercase hex without leading zeros ("0" for zero), or zero-padded to
/// ceil(width/4) digits when `padded` is set.
std::string to_hex(std::span<const Word> words, std::size_t width, bool padded = false);

template <class Tag>
std::string to_hex(const BitPoly<Tag>& p, bool padded = false) {
  return to_hex(p.words(), p.width(), padded);
}

}  // namespace hkecc::gf2m
