#pragma once

// Limb-level helpers shared by the gf2m translation units.

#include <algorithm>
#include <bit>
#include <span>

#include <boost/container/small_vector.hpp>

#include "hkecc/gf2m.hpp"

namespace hkecc::gf2m::detail {

// Six limbs hold a full 325-bit B-163 product without touching the heap.
using Words = boost::container::small_vector<Word, 6>;

inline void mask_top(std::span<Word> w, std::size_t bits) {
  const std::size_t rem = bits % kWordBits;
  const std::size_t n = words_for(bits);
  for (std::size_t i = n; i < w.size(); ++i) w[i] = 0;
  if (rem != 0 && n != 0 && n <= w.size()) w[n - 1] &= (Word{1} << rem) - 1;
}

/// Bits [offset, offset + count) of src, packed into words_for(out_bits) limbs.
inline Words extract(std::span<const Word> src, std::size_t offset, std::size_t count,
                     std::size_t out_bits) {
  Words out(words_for(out_bits), 0);
  const std::size_t ws = offset / kWordBits;
  const std::size_t bs = offset % kWordBits;
  const std::size_t n = words_for(count);
  for (std::size_t i = 0; i < n; ++i) {
    const Word lo = ws + i < src.size() ? src[ws + i] : 0;
    if (bs == 0) {
      out[i] = lo;
    } else {
      const Word hi = ws + i + 1 < src.size() ? src[ws + i + 1] : 0;
      out[i] = (lo >> bs) | (hi << (kWordBits - bs));
    }
  }
  mask_top(std::span<Word>(out.data(), n), count);
  return out;
}

/// dst ^= src << shift; bits shifted past the end of dst are dropped.
inline void xor_shifted(std::span<Word> dst, std::span<const Word> src, std::size_t shift) {
  const std::size_t ws = shift / kWordBits;
  const std::size_t bs = shift % kWordBits;
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (ws + i < dst.size()) dst[ws + i] ^= src[i] << bs;
    if (bs != 0 && ws + i + 1 < dst.size()) dst[ws + i + 1] ^= src[i] >> (kWordBits - bs);
  }
}

inline void xor_into(std::span<Word> dst, std::span<const Word> src) {
  const std::size_t n = std::min(dst.size(), src.size());
  for (std::size_t i = 0; i < n; ++i) dst[i] ^= src[i];
}

inline std::span<Word> view(Words& w) { return {w.data(), w.size()}; }
inline std::span<const Word> view(const Words& w) { return {w.data(), w.size()}; }

inline void mask_top(Words& w, std::size_t bits) { mask_top(view(w), bits); }
inline void xor_shifted(Words& dst, const Words& src, std::size_t shift) {
  xor_shifted(view(dst), view(src), shift);
}
inline void xor_into(Words& dst, const Words& src) { xor_into(view(dst), view(src)); }

}  // namespace hkecc::gf2m::detail
