#include "charp/simd/kernels.hpp"

#include <immintrin.h>

#include <algorithm>
#include <bit>

namespace charp::simd {
namespace {

constexpr std::size_t kLanes = 16;

inline __m256i load(const Exponent* p) {
  return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p));
}

inline std::uint32_t hmax_epu16(__m256i v) {
  __m128i m = _mm_max_epu16(_mm256_castsi256_si128(v), _mm256_extracti128_si256(v, 1));
  // max(x) = 0xFFFF - min(0xFFFF - x); minpos handles the min.
  const __m128i ones = _mm_set1_epi16(-1);
  const __m128i inv = _mm_sub_epi16(ones, m);
  const __m128i mn = _mm_minpos_epu16(inv);
  return 0xFFFFu - static_cast<std::uint32_t>(_mm_extract_epi16(mn, 0));
}

std::uint32_t add_max(const Exponent* a, const Exponent* b, Exponent* out, std::size_t n) {
  std::size_t i = 0;
  __m256i vmax = _mm256_setzero_si256();
  for (; i + kLanes <= n; i += kLanes) {
    const __m256i va = load(a + i);
    const __m256i vb = load(b + i);
    const __m256i wrap = _mm256_add_epi16(va, vb);
    const __m256i sat = _mm256_adds_epu16(va, vb);
    if (_mm256_movemask_epi8(_mm256_cmpeq_epi16(wrap, sat)) != -1) return kWrapped;
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), wrap);
    vmax = _mm256_max_epu16(vmax, wrap);
  }
  std::uint32_t best = hmax_epu16(vmax);
  for (; i < n; ++i) {
    const std::uint32_t s = std::uint32_t{a[i]} + std::uint32_t{b[i]};
    if (s > 0xFFFFu) return kWrapped;
    out[i] = static_cast<Exponent>(s);
    best = std::max(best, s);
  }
  return best;
}

bool divides(const Exponent* a, const Exponent* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256i va = load(a + i);
    const __m256i vb = load(b + i);
    const __m256i ok = _mm256_cmpeq_epi16(_mm256_max_epu16(va, vb), vb);
    if (_mm256_movemask_epi8(ok) != -1) return false;
  }
  for (; i < n; ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

void lcm(const Exponent* a, const Exponent* b, Exponent* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), _mm256_max_epu16(load(a + i), load(b + i)));
  }
  for (; i < n; ++i) out[i] = std::max(a[i], b[i]);
}

std::uint64_t total_degree(const Exponent* a, std::size_t n) {
  std::uint64_t total = 0;
  std::size_t i = 0;
  const __m256i zero = _mm256_setzero_si256();
  while (i + kLanes <= n) {
    __m256i acc = _mm256_setzero_si256();
    // 32-bit lanes take two values per step; 1024 steps cannot overflow.
    for (int step = 0; step < 1024 && i + kLanes <= n; ++step, i += kLanes) {
      const __m256i v = load(a + i);
      acc = _mm256_add_epi32(acc, _mm256_unpacklo_epi16(v, zero));
      acc = _mm256_add_epi32(acc, _mm256_unpackhi_epi16(v, zero));
    }
    alignas(32) std::uint32_t lanes[8];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
    for (std::uint32_t x : lanes) total += x;
  }
  for (; i < n; ++i) total += a[i];
  return total;
}

std::size_t first_difference(const Exponent* a, const Exponent* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const auto eq = static_cast<std::uint32_t>(_mm256_movemask_epi8(_mm256_cmpeq_epi16(load(a + i), load(b + i))));
    if (eq != 0xFFFFFFFFu) return i + static_cast<std::size_t>(std::countr_zero(~eq)) / 2;
  }
  for (; i < n; ++i) {
    if (a[i] != b[i]) return i;
  }
  return n;
}

std::size_t last_difference(const Exponent* a, const Exponent* b, std::size_t n) {
  const std::size_t full = n - n % kLanes;
  for (std::size_t i = n; i-- > full;) {
    if (a[i] != b[i]) return i;
  }
  for (std::size_t i = full; i >= kLanes; i -= kLanes) {
    const std::size_t base = i - kLanes;
    const auto eq =
        static_cast<std::uint32_t>(_mm256_movemask_epi8(_mm256_cmpeq_epi16(load(a + base), load(b + base))));
    if (eq != 0xFFFFFFFFu) return base + static_cast<std::size_t>(31 - std::countl_zero(~eq)) / 2;
  }
  return n;
}

std::uint32_t max_exponent(const Exponent* a, std::size_t n) {
  std::size_t i = 0;
  __m256i vmax = _mm256_setzero_si256();
  for (; i + kLanes <= n; i += kLanes) vmax = _mm256_max_epu16(vmax, load(a + i));
  std::uint32_t best = hmax_epu16(vmax);
  for (; i < n; ++i) best = std::max<std::uint32_t>(best, a[i]);
  return best;
}

}  // namespace

const KernelTable& avx2_kernels() {
  static const KernelTable table{"avx2",       add_max,          divides,         lcm,
                                 total_degree, first_difference, last_difference, max_exponent};
  return table;
}

}  // namespace charp::simd
