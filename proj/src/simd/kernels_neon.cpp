#include "charp/simd/kernels.hpp"

#include <arm_neon.h>

#include <algorithm>

namespace charp::simd {
namespace {

constexpr std::size_t kLanes = 8;

inline bool all_set(uint16x8_t m) { return vminvq_u16(m) == 0xFFFFu; }

std::uint32_t add_max(const Exponent* a, const Exponent* b, Exponent* out, std::size_t n) {
  std::size_t i = 0;
  uint16x8_t vmax = vdupq_n_u16(0);
  for (; i + kLanes <= n; i += kLanes) {
    const uint16x8_t va = vld1q_u16(a + i);
    const uint16x8_t vb = vld1q_u16(b + i);
    const uint16x8_t wrap = vaddq_u16(va, vb);
    if (!all_set(vceqq_u16(wrap, vqaddq_u16(va, vb)))) return kWrapped;
    vst1q_u16(out + i, wrap);
    vmax = vmaxq_u16(vmax, wrap);
  }
  std::uint32_t best = vmaxvq_u16(vmax);
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
    if (!all_set(vcleq_u16(vld1q_u16(a + i), vld1q_u16(b + i)))) return false;
  }
  for (; i < n; ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

void lcm(const Exponent* a, const Exponent* b, Exponent* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) vst1q_u16(out + i, vmaxq_u16(vld1q_u16(a + i), vld1q_u16(b + i)));
  for (; i < n; ++i) out[i] = std::max(a[i], b[i]);
}

std::uint64_t total_degree(const Exponent* a, std::size_t n) {
  std::uint64_t total = 0;
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) total += vaddlvq_u16(vld1q_u16(a + i));
  for (; i < n; ++i) total += a[i];
  return total;
}

std::size_t first_difference(const Exponent* a, const Exponent* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    if (!all_set(vceqq_u16(vld1q_u16(a + i), vld1q_u16(b + i)))) break;
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
    if (!all_set(vceqq_u16(vld1q_u16(a + base), vld1q_u16(b + base)))) {
      for (std::size_t j = base + kLanes; j-- > base;) {
        if (a[j] != b[j]) return j;
      }
    }
  }
  return n;
}

std::uint32_t max_exponent(const Exponent* a, std::size_t n) {
  std::size_t i = 0;
  uint16x8_t vmax = vdupq_n_u16(0);
  for (; i + kLanes <= n; i += kLanes) vmax = vmaxq_u16(vmax, vld1q_u16(a + i));
  std::uint32_t best = vmaxvq_u16(vmax);
  for (; i < n; ++i) best = std::max<std::uint32_t>(best, a[i]);
  return best;
}

}  // namespace

const KernelTable& neon_kernels() {
  static const KernelTable table{"neon",       add_max,          divides,         lcm,
                                 total_degree, first_difference, last_difference, max_exponent};
  return table;
}

}  // namespace charp::simd
