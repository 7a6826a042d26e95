#include <cstdlib>
#include <string_view>

#include "charp/simd/kernels.hpp"

namespace charp::simd {

bool cpu_supports_avx2() {
#if defined(CHARP_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

namespace {

const KernelTable& select() {
  const char* env = std::getenv("CHARP_SIMD");
  if (env != nullptr && std::string_view(env) == "scalar") return scalar_kernels();
#if defined(CHARP_HAVE_AVX2)
  if (cpu_supports_avx2()) return avx2_kernels();
#endif
#if defined(CHARP_HAVE_NEON)
  return neon_kernels();
#endif
  return scalar_kernels();
}

}  // namespace

const KernelTable& active() {
  static const KernelTable& table = select();
  return table;
}

}  // namespace charp::simd
