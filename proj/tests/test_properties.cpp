#include <gtest/gtest.h>

#include "properties.hpp"

namespace charp::props {
namespace {

void expect_clean(const Report& r) {
  EXPECT_GE(r.cases, kDefaultCases) << r.name;
  EXPECT_EQ(r.failures, 0u) << r.name << ": " << r.first_failure;
}

TEST(Properties, TruncationSoundness) { expect_clean(truncation_soundness(kDefaultSeed, kDefaultCases)); }
TEST(Properties, FrobeniusPowering) { expect_clean(frobenius_powering(kDefaultSeed, kDefaultCases)); }
TEST(Properties, GroebnerSPairs) { expect_clean(groebner_s_pairs(kDefaultSeed, kDefaultCases)); }
TEST(Properties, MembershipOracle) { expect_clean(membership_oracle(kDefaultSeed, kDefaultCases)); }
TEST(Properties, CommutatorLaws) { expect_clean(commutator_laws(kDefaultSeed, kDefaultCases)); }
TEST(Properties, DeterminantOracle) { expect_clean(determinant_oracle(kDefaultSeed, kDefaultCases)); }
TEST(Properties, ParserRoundTrip) { expect_clean(parser_round_trip(kDefaultSeed, kDefaultCases)); }

TEST(Properties, SeedIsReproducible) {
  const Report a = truncation_soundness(99, 20);
  const Report b = truncation_soundness(99, 20);
  EXPECT_EQ(a.cases, b.cases);
  EXPECT_EQ(a.failures, b.failures);
}

}  // namespace
}  // namespace charp::props
