#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "charp/simd/kernels.hpp"

namespace charp::simd {
namespace {

std::vector<const KernelTable*> vector_tables() {
  std::vector<const KernelTable*> out;
#if defined(CHARP_HAVE_AVX2)
  if (cpu_supports_avx2()) out.push_back(&avx2_kernels());
#endif
#if defined(CHARP_HAVE_NEON)
  out.push_back(&neon_kernels());
#endif
  return out;
}

std::vector<Exponent> random_lanes(std::mt19937_64& rng, std::size_t n, Exponent hi) {
  std::uniform_int_distribution<unsigned> d(0, hi);
  std::vector<Exponent> v(n);
  for (auto& x : v) x = static_cast<Exponent>(d(rng));
  return v;
}

TEST(Simd, ScalarReferenceBasics) {
  const KernelTable& k = scalar_kernels();
  const std::vector<Exponent> a{1, 2, 3}, b{3, 2, 1};
  std::vector<Exponent> out(3);
  EXPECT_EQ(k.add_max(a.data(), b.data(), out.data(), 3), 4u);
  EXPECT_EQ(out, (std::vector<Exponent>{4, 4, 4}));
  EXPECT_FALSE(k.divides(a.data(), b.data(), 3));
  EXPECT_TRUE(k.divides(a.data(), out.data(), 3));
  EXPECT_EQ(k.total_degree(a.data(), 3), 6u);
  EXPECT_EQ(k.first_difference(a.data(), b.data(), 3), 0u);
  EXPECT_EQ(k.last_difference(a.data(), b.data(), 3), 2u);
  EXPECT_EQ(k.first_difference(a.data(), a.data(), 3), 3u);
  EXPECT_EQ(k.max_exponent(b.data(), 3), 3u);
  EXPECT_EQ(k.max_exponent(b.data(), 0), 0u);
  const std::vector<Exponent> big{0xFFFF}, one{1};
  std::vector<Exponent> o1(1);
  EXPECT_EQ(k.add_max(big.data(), one.data(), o1.data(), 1), kWrapped);
}

TEST(Simd, ActiveTableIsKnown) {
  const std::string_view name = active().name;
  EXPECT_TRUE(name == "scalar" || name == "avx2" || name == "neon") << name;
}

// Vector kernels must agree with the scalar reference lane for lane,
// including lengths that are not a multiple of the vector width and lanes
// near the wrap-around point.
TEST(Simd, VectorKernelsMatchScalar) {
  const auto tables = vector_tables();
  if (tables.empty()) GTEST_SKIP() << "no vector kernels on this CPU";
  const KernelTable& ref = scalar_kernels();
  std::mt19937_64 rng(7);
  for (const KernelTable* k : tables) {
    for (std::size_t trial = 0; trial < 2000; ++trial) {
      const std::size_t n = trial % 71;
      const Exponent hi = trial % 3 == 0 ? 0xFFFF : (trial % 3 == 1 ? 40 : 3);
      auto a = random_lanes(rng, n, hi);
      auto b = trial % 5 == 0 ? a : random_lanes(rng, n, hi);
      if (n > 0 && trial % 7 == 0) b[rng() % n] ^= 1;
      std::vector<Exponent> r1(n), r2(n);
      const auto m1 = ref.add_max(a.data(), b.data(), r1.data(), n);
      const auto m2 = k->add_max(a.data(), b.data(), r2.data(), n);
      ASSERT_EQ(m1, m2) << k->name << " n=" << n;
      if (m1 != kWrapped) ASSERT_EQ(r1, r2);
      ASSERT_EQ(ref.divides(a.data(), b.data(), n), k->divides(a.data(), b.data(), n));
      ref.lcm(a.data(), b.data(), r1.data(), n);
      k->lcm(a.data(), b.data(), r2.data(), n);
      ASSERT_EQ(r1, r2);
      ASSERT_EQ(ref.total_degree(a.data(), n), k->total_degree(a.data(), n));
      ASSERT_EQ(ref.first_difference(a.data(), b.data(), n), k->first_difference(a.data(), b.data(), n));
      ASSERT_EQ(ref.last_difference(a.data(), b.data(), n), k->last_difference(a.data(), b.data(), n));
      ASSERT_EQ(ref.max_exponent(a.data(), n), k->max_exponent(a.data(), n));
    }
  }
}

}  // namespace
}  // namespace charp::simd
