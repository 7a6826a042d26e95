#pragma once

// Exponent-vector kernels used by the polynomial and Groebner layers.
//
// Every kernel has a scalar reference implementation; vector variants
// (AVX2 on x86-64, NEON on aarch64) must agree with it bit for bit and are
// selected once at startup. Set CHARP_SIMD=scalar in the environment to
// force the reference path.

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace charp::simd {

using Exponent = std::uint16_t;

/// Sentinel returned by add_max when some lane wrapped past 2^16 - 1.
inline constexpr std::uint32_t kWrapped = 0x10000u;

struct KernelTable {
  std::string_view name;

  /// out[i] = a[i] + b[i]. Returns the largest lane of the true sum, or
  /// kWrapped if any lane exceeded 0xFFFF (out is unspecified then).
  std::uint32_t (*add_max)(const Exponent* a, const Exponent* b, Exponent* out, std::size_t n);

  /// True iff a[i] <= b[i] for every i (monomial a divides monomial b).
  bool (*divides)(const Exponent* a, const Exponent* b, std::size_t n);

  /// out[i] = max(a[i], b[i]).
  void (*lcm)(const Exponent* a, const Exponent* b, Exponent* out, std::size_t n);

  std::uint64_t (*total_degree)(const Exponent* a, std::size_t n);

  /// Index of the first / last lane where a and b differ, or n if equal.
  std::size_t (*first_difference)(const Exponent* a, const Exponent* b, std::size_t n);
  std::size_t (*last_difference)(const Exponent* a, const Exponent* b, std::size_t n);

  /// Largest lane value (0 for n == 0).
  std::uint32_t (*max_exponent)(const Exponent* a, std::size_t n);
};

const KernelTable& scalar_kernels();
#if defined(CHARP_HAVE_AVX2)
const KernelTable& avx2_kernels();
#endif
#if defined(CHARP_HAVE_NEON)
const KernelTable& neon_kernels();
#endif

/// True when the running CPU can execute the named variant.
bool cpu_supports_avx2();

/// The table chosen for this process (fixed after first call).
const KernelTable& active();

}  // namespace charp::simd
