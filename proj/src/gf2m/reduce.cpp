#include "hkecc/gf2m.hpp"
#include "words.hpp"

namespace hkecc::gf2m {

namespace {

void check_raw_width(const RawProduct& p, std::size_t m) {
  if (p.width() != 2 * m - 1) {
    throw ContractViolation("reduce: raw product has width " + std::to_string(p.width()) +
                            ", expected " + std::to_string(2 * m - 1));
  }
}

FieldElement truncate(std::span<const Word> w, std::size_t m) {
  detail::Words out(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(words_for(m)));
  detail::mask_top(out, m);
  return FieldElement::from_words(m, std::span<const Word>(out.data(), out.size()));
}

// Interleave zeros: bit i of x goes to bit 2i.
Word spread32(std::uint32_t x) {
  Word v = x;
  v = (v | (v << 16)) & 0x0000FFFF0000FFFFULL;
  v = (v | (v << 8)) & 0x00FF00FF00FF00FFULL;
  v = (v | (v << 4)) & 0x0F0F0F0F0F0F0F0FULL;
  v = (v | (v << 2)) & 0x3333333333333333ULL;
  v = (v | (v << 1)) & 0x5555555555555555ULL;
  return v;
}

}  // namespace

FieldElement reduce_generic(const RawProduct& p, const FieldContext& ctx) {
  const std::size_t m = ctx.m();
  check_raw_width(p, m);
  detail::Words w(p.words().begin(), p.words().end());
  const auto tail = ctx.tail_exponents();
  // Fixed trip count: every position from the top down to m is visited and
  // the XOR is masked rather than branched on.
  for (std::size_t i = 2 * m - 1; i-- > m;) {
    const Word bit = (w[i / kWordBits] >> (i % kWordBits)) & 1U;
    const Word mask = Word{0} - bit;
    w[i / kWordBits] &= ~(Word{1} << (i % kWordBits));
    for (std::size_t e : tail) {
      const std::size_t j = i - m + e;
      w[j / kWordBits] ^= mask & (Word{1} << (j % kWordBits));
    }
  }
  return truncate(detail::view(w), m);
}

FieldElement reduce_b163(const RawProduct& p) {
  check_raw_width(p, 163);
  Word c[6];
  for (std::size_t i = 0; i < 6; ++i) c[i] = p.words()[i];
  // x^192 = x^29 * x^163 == x^36 + x^35 + x^32 + x^29.
  for (std::size_t i = 5; i >= 3; --i) {
    const Word t = c[i];
    c[i - 3] ^= (t << 29) ^ (t << 32) ^ (t << 35) ^ (t << 36);
    c[i - 2] ^= (t >> 35) ^ (t >> 32) ^ (t >> 29) ^ (t >> 28);
    c[i] = 0;
  }
  // Bits 163..191 sit in the top 29 bits of c[2].
  const Word t = c[2] >> 35;
  c[0] ^= t ^ (t << 3) ^ (t << 6) ^ (t << 7);
  c[2] &= (Word{1} << 35) - 1;
  return FieldElement::from_words(163, std::span<const Word>(c, 3));
}

FieldElement reduce(const RawProduct& p, const FieldContext& ctx) {
  return ctx.is_b163() ? reduce_b163(p) : reduce_generic(p, ctx);
}

FieldElement mul(const FieldElement& a, const FieldElement& b, const FieldContext& ctx) {
  if (a.width() != ctx.m() || b.width() != ctx.m()) {
    throw ContractViolation("mul: operand width does not match field degree");
  }
  return reduce(mul_hybrid(a, b, ctx), ctx);
}

RawProduct spread(const FieldElement& a) {
  if (a.width() == 0) throw ContractViolation("spread: empty operand");
  const std::size_t bits = 2 * a.width() - 1;
  detail::Words out(words_for(bits), 0);
  const auto in = a.words();
  for (std::size_t i = 0; i < in.size(); ++i) {
    out[2 * i] = spread32(static_cast<std::uint32_t>(in[i]));
    if (2 * i + 1 < out.size()) out[2 * i + 1] = spread32(static_cast<std::uint32_t>(in[i] >> 32));
  }
  return RawProduct::from_words(bits, std::span<const Word>(out.data(), out.size()));
}

FieldElement square(const FieldElement& a, const FieldContext& ctx) {
  if (a.width() != ctx.m()) throw ContractViolation("square: operand width does not match field degree");
  return reduce(spread(a), ctx);
}

}  // namespace hkecc::gf2m
