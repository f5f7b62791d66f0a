#include <algorithm>
#include <bit>
#include <cctype>

#include "hkecc/gf2m.hpp"
#include "words.hpp"

namespace hkecc::gf2m {

long degree_of(std::span<const Word> words) {
  for (std::size_t i = words.size(); i-- > 0;) {
    if (words[i] != 0) {
      return static_cast<long>(i * kWordBits + (kWordBits - 1 - std::countl_zero(words[i])));
    }
  }
  return -1;
}

namespace {

constexpr std::size_t kIrreducibilityCheckMaxDegree = 16;

// Remainder of `num` modulo `den` for polynomials that fit in one word.
std::uint64_t poly_mod_small(std::uint64_t num, std::uint64_t den) {
  const int dd = 63 - std::countl_zero(den);
  for (int d = 63 - std::countl_zero(num); num != 0 && d >= dd; d = 63 - std::countl_zero(num)) {
    num ^= den << (d - dd);
  }
  return num;
}

}  // namespace

bool is_irreducible(const Polynomial& f) {
  const long deg = f.degree();
  if (deg < 1) return false;
  if (deg >= static_cast<long>(kWordBits)) {
    throw ContractViolation("trial-division irreducibility check supports degree < 64 only");
  }
  const std::uint64_t fw = f.words()[0];
  // Any reducible f has a factor of degree <= deg/2.
  for (std::uint64_t g = 2; g < (std::uint64_t{1} << (deg / 2 + 1)); ++g) {
    if (poly_mod_small(fw, g) == 0) return false;
  }
  return true;
}

FieldContext::FieldContext(const Polynomial& modulus, std::size_t cutoff) : modulus_(modulus) {
  const long deg = modulus.degree();
  if (deg < 1) throw ContractViolation("modulus must have degree >= 1");
  if (!modulus.bit(0)) throw ContractViolation("modulus must have a constant term");
  m_ = static_cast<std::size_t>(deg);
  modulus_ = modulus.resized(m_ + 1);
  if (m_ <= kIrreducibilityCheckMaxDegree && !is_irreducible(modulus_)) {
    throw ContractViolation("modulus " + to_hex(modulus_) + " is reducible");
  }
  if (cutoff == 0) cutoff = std::min(kDefaultCutoff, m_);
  if (cutoff > m_) throw ContractViolation("cutoff must lie in [1, m]");
  cutoff_ = cutoff;
  for (std::size_t e = m_; e-- > 0;) {
    if (modulus_.bit(e)) tail_.push_back(e);
  }
  b163_ = m_ == 163 && tail_ == std::vector<std::size_t>{7, 6, 3, 0};
}

FieldContext FieldContext::from_exponents(std::initializer_list<std::size_t> exps, std::size_t cutoff) {
  const std::size_t top = *std::max_element(exps.begin(), exps.end());
  Polynomial f(top + 1);
  for (std::size_t e : exps) f.set_bit(e, true);
  return FieldContext(f, cutoff);
}

FieldContext FieldContext::with_cutoff(std::size_t cutoff) const {
  if (cutoff == 0) throw ContractViolation("cutoff must lie in [1, m]");
  return FieldContext(modulus_, cutoff);
}

FieldElement add(const FieldElement& a, const FieldElement& b) {
  if (a.width() != b.width()) throw ContractViolation("add: operand widths differ");
  FieldElement r = a;
  detail::xor_into(r.words(), b.words());
  return r;
}

// --- hex -----------------------------------------------------------------------

namespace {

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

std::vector<Word> parse_hex_words(std::string_view text, std::size_t width) {
  if (text.size() >= 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) text.remove_prefix(2);
  if (text.empty()) throw ParseError("empty hex literal");
  for (char c : text) {
    if (hex_value(c) < 0) throw ParseError("malformed hex literal '" + std::string(text) + "'");
  }
  const std::size_t max_digits = (width + 3) / 4;
  if (text.size() > max_digits) {
    throw ContractViolation("hex literal has " + std::to_string(text.size()) + " digits; width " +
                            std::to_string(width) + " allows at most " + std::to_string(max_digits));
  }
  std::vector<Word> words(words_for(width), 0);
  for (std::size_t i = 0; i < text.size(); ++i) {
    const std::size_t nibble = text.size() - 1 - i;
    const auto v = static_cast<Word>(hex_value(text[i]));
    words[(nibble * 4) / kWordBits] |= v << ((nibble * 4) % kWordBits);
  }
  return words;
}

}  // namespace

FieldElement parse_hex(std::string_view text, std::size_t width) {
  return FieldElement::from_words(width, parse_hex_words(text, width));
}

Polynomial parse_hex_polynomial(std::string_view text, std::size_t width) {
  return Polynomial::from_words(width, parse_hex_words(text, width));
}

std::string to_hex(std::span<const Word> words, std::size_t width, bool padded) {
  static constexpr char kDigits[] = "0123456789abcdef";
  const std::size_t digits = (width + 3) / 4;
  std::string out;
  out.reserve(digits);
  for (std::size_t nibble = digits; nibble-- > 0;) {
    const std::size_t bit = nibble * 4;
    const Word w = bit / kWordBits < words.size() ? words[bit / kWordBits] : 0;
    const auto v = static_cast<unsigned>((w >> (bit % kWordBits)) & 0xF);
    if (out.empty() && v == 0 && !padded) continue;
    out.push_back(kDigits[v]);
  }
  if (out.empty()) out = "0";
  return out;
}

}  // namespace hkecc::gf2m
