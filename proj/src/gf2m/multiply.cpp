#include <algorithm>

#include "hkecc/gf2m.hpp"
#include "words.hpp"

namespace hkecc::gf2m {

void clmul64(Word a, Word b, Word& lo, Word& hi) {
  // 4-bit windows of `a` against a table of small multiples of `b`. The table
  // entries lose the top three bits of b; those are patched in afterwards.
  Word table[16];
  table[0] = 0;
  table[1] = b;
  for (int i = 2; i < 16; i += 2) {
    table[i] = table[i / 2] << 1;
    table[i + 1] = table[i] ^ b;
  }
  lo = table[a & 0xF];
  hi = 0;
  for (int shift = 4; shift < 64; shift += 4) {
    const Word t = table[(a >> shift) & 0xF];
    lo ^= t << shift;
    hi ^= t >> (64 - shift);
  }
  hi ^= ((a & 0xEEEEEEEEEEEEEEEEULL) >> 1) & (Word{0} - ((b >> 63) & 1));
  hi ^= ((a & 0xCCCCCCCCCCCCCCCCULL) >> 2) & (Word{0} - ((b >> 62) & 1));
  hi ^= ((a & 0x8888888888888888ULL) >> 3) & (Word{0} - ((b >> 61) & 1));
}

namespace {

using detail::Words;

struct Split {
  std::size_t half = 0;
  Words m0, m1, m2;
};

void check_operands(const FieldElement& a, const FieldElement& b) {
  if (a.width() != b.width()) throw ContractViolation("multiply: operand widths differ");
  if (a.width() == 0) throw ContractViolation("multiply: operands must have width >= 1");
}

// n-bit operands, each held in words_for(n) limbs.
Words schoolbook_words(std::span<const Word> a, std::span<const Word> b, std::size_t n) {
  Words out(words_for(2 * n - 1), 0);
  const std::size_t na = words_for(n);
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t j = 0; j < na; ++j) {
      Word lo = 0;
      Word hi = 0;
      clmul64(a[i], b[j], lo, hi);
      out[i + j] ^= lo;
      if (i + j + 1 < out.size()) out[i + j + 1] ^= hi;
    }
  }
  return out;
}

void note_level(MultiplierStats* stats, std::size_t depth, std::size_t n) {
  if (stats == nullptr) return;
  if (stats->level_widths.size() <= depth) stats->level_widths.resize(depth + 1, 0);
  stats->level_widths[depth] = std::max(stats->level_widths[depth], n);
}

Words hybrid_words(std::span<const Word> a, std::span<const Word> b, std::size_t n,
                   std::size_t cutoff, MultiplierStats* stats, std::size_t depth);

Split split_products(std::span<const Word> a, std::span<const Word> b, std::size_t n,
                     std::size_t cutoff, MultiplierStats* stats, std::size_t depth) {
  // Odd widths: the high half is zero-padded at the MSB up to ceil(n/2).
  Split s;
  s.half = (n + 1) / 2;
  const std::size_t h = s.half;
  const Words a_lo = detail::extract(a, 0, h, h);
  const Words a_hi = detail::extract(a, h, n - h, h);
  const Words b_lo = detail::extract(b, 0, h, h);
  const Words b_hi = detail::extract(b, h, n - h, h);
  Words a_sum = a_lo;
  Words b_sum = b_lo;
  detail::xor_into(a_sum, a_hi);
  detail::xor_into(b_sum, b_hi);
  s.m0 = hybrid_words(detail::view(a_lo), detail::view(b_lo), h, cutoff, stats, depth + 1);
  s.m1 = hybrid_words(detail::view(a_sum), detail::view(b_sum), h, cutoff, stats, depth + 1);
  s.m2 = hybrid_words(detail::view(a_hi), detail::view(b_hi), h, cutoff, stats, depth + 1);
  return s;
}

// Overlap step: M2 x^{2h} + (M0 + M1 + M2) x^h + M0.
Words combine(const Split& s, std::size_t n) {
  Words out(words_for(2 * n - 1), 0);
  Words mid = s.m1;
  detail::xor_into(mid, s.m0);
  detail::xor_into(mid, s.m2);
  detail::xor_into(out, s.m0);
  detail::xor_shifted(out, mid, s.half);
  detail::xor_shifted(out, s.m2, 2 * s.half);
  detail::mask_top(out, 2 * n - 1);
  return out;
}

Words hybrid_words(std::span<const Word> a, std::span<const Word> b, std::size_t n,
                   std::size_t cutoff, MultiplierStats* stats, std::size_t depth) {
  note_level(stats, depth, n);
  if (n <= cutoff || n == 1) {
    if (stats != nullptr) {
      ++stats->schoolbook_leaves;
      stats->leaf_widths.push_back(n);
    }
    return schoolbook_words(a, b, n);
  }
  if (stats != nullptr) {
    ++stats->karatsuba_nodes;
    stats->karatsuba_stages = std::max(stats->karatsuba_stages, depth + 1);
  }
  return combine(split_products(a, b, n, cutoff, stats, depth), n);
}

RawProduct to_raw(const Words& w, std::size_t bits) {
  return RawProduct::from_words(bits, std::span<const Word>(w.data(), w.size()));
}

}  // namespace

RawProduct mul_schoolbook(const FieldElement& a, const FieldElement& b) {
  check_operands(a, b);
  return to_raw(schoolbook_words(a.words(), b.words(), a.width()), 2 * a.width() - 1);
}

RawProduct mul_karatsuba(const FieldElement& a, const FieldElement& b) {
  return mul_hybrid(a, b, 1);
}

RawProduct mul_hybrid(const FieldElement& a, const FieldElement& b, std::size_t cutoff,
                      MultiplierStats* stats) {
  check_operands(a, b);
  if (cutoff == 0) throw ContractViolation("multiply: cutoff must be >= 1");
  if (stats != nullptr) *stats = MultiplierStats{};
  const std::size_t n = a.width();
  return to_raw(hybrid_words(a.words(), b.words(), n, cutoff, stats, 0), 2 * n - 1);
}

RawProduct mul_hybrid(const FieldElement& a, const FieldElement& b, const FieldContext& ctx) {
  return mul_hybrid(a, b, ctx.cutoff());
}

KaratsubaPartials karatsuba_partials(const FieldElement& a, const FieldElement& b,
                                     std::size_t cutoff) {
  check_operands(a, b);
  if (a.width() < 2) throw ContractViolation("karatsuba split needs width >= 2");
  if (cutoff == 0) throw ContractViolation("multiply: cutoff must be >= 1");
  const Split s = split_products(a.words(), b.words(), a.width(), cutoff, nullptr, 0);
  const std::size_t bits = 2 * s.half - 1;
  return {s.half, to_raw(s.m0, bits), to_raw(s.m1, bits), to_raw(s.m2, bits)};
}

RawProduct karatsuba_combine(const KaratsubaPartials& parts, std::size_t n) {
  if (parts.half != (n + 1) / 2) throw ContractViolation("karatsuba_combine: half/width mismatch");
  auto to_words = [](const RawProduct& p) { return Words(p.words().begin(), p.words().end()); };
  const Split s{parts.half, to_words(parts.m0), to_words(parts.m1), to_words(parts.m2)};
  return to_raw(combine(s, n), 2 * n - 1);
}

}  // namespace hkecc::gf2m
