#include "charp/simd/kernels.hpp"

#include <algorithm>

namespace charp::simd {
namespace {

std::uint32_t add_max(const Exponent* a, const Exponent* b, Exponent* out, std::size_t n) {
  std::uint32_t best = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint32_t s = std::uint32_t{a[i]} + std::uint32_t{b[i]};
    if (s > 0xFFFFu) return kWrapped;
    out[i] = static_cast<Exponent>(s);
    best = std::max(best, s);
  }
  return best;
}

bool divides(const Exponent* a, const Exponent* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

void lcm(const Exponent* a, const Exponent* b, Exponent* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = std::max(a[i], b[i]);
}

std::uint64_t total_degree(const Exponent* a, std::size_t n) {
  std::uint64_t d = 0;
  for (std::size_t i = 0; i < n; ++i) d += a[i];
  return d;
}

std::size_t first_difference(const Exponent* a, const Exponent* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] != b[i]) return i;
  }
  return n;
}

std::size_t last_difference(const Exponent* a, const Exponent* b, std::size_t n) {
  for (std::size_t i = n; i-- > 0;) {
    if (a[i] != b[i]) return i;
  }
  return n;
}

std::uint32_t max_exponent(const Exponent* a, std::size_t n) {
  std::uint32_t best = 0;
  for (std::size_t i = 0; i < n; ++i) best = std::max<std::uint32_t>(best, a[i]);
  return best;
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{"scalar",        add_max,          divides,         lcm,
                                 total_degree,    first_difference, last_difference, max_exponent};
  return table;
}

}  // namespace charp::simd
