#include <gtest/gtest.h>

#include "charp/parse.hpp"
#include "charp/ring.hpp"

namespace charp {
namespace {

Ring xy(std::uint32_t p) { return make_ring(p, {"x", "y"}); }
Poly P(const Ring& r, std::string_view s) { return parse_poly(r, s); }

std::vector<std::string> wz_names() {
  std::vector<std::string> out;
  for (char l : {'w', 'z'}) {
    for (int i = 1; i <= 3; ++i) {
      for (int j = 1; j <= 3; ++j) out.push_back(std::string(1, l) + std::to_string(i) + std::to_string(j));
    }
  }
  return out;
}

TEST(Ring, RejectsCompositeAndLargeCharacteristic) {
  EXPECT_THROW(make_ring(4, {"x"}), std::invalid_argument);
  EXPECT_THROW(make_ring(1, {"x"}), std::invalid_argument);
  EXPECT_THROW(make_ring(1048583, {"x"}), std::invalid_argument);
  EXPECT_THROW(make_ring(3, {"x", "x"}), std::invalid_argument);
  EXPECT_NO_THROW(make_ring(1048573, {"x"}));
}

TEST(Ring, FieldArithmetic) {
  const Ring r = xy(7);
  EXPECT_EQ(r->mul(r->inv(3), 3), 1u);
  EXPECT_EQ(r->reduce(-1), 6u);
  EXPECT_EQ(r->balanced(6), -1);
  EXPECT_EQ(r->pow(3, 6), 1u);
}

TEST(Ring, MismatchedRingsThrow) {
  const Poly a = Poly::variable(xy(5), "x");
  const Poly b = Poly::variable(xy(7), "x");
  EXPECT_THROW(a + b, RingMismatch);
  EXPECT_THROW(a * b, RingMismatch);
}

TEST(Ring, StructurallyEqualRingsInteroperate) {
  const Poly a = Poly::variable(xy(5), "x");
  const Poly b = Poly::variable(xy(5), "y");
  EXPECT_EQ((a + b).to_string(), "x + y");
}

TEST(Poly, Addition) {
  const Ring r5 = xy(5);
  const Poly f = P(r5, "x^2 + 3*y");
  EXPECT_EQ(f + Poly(r5), f);
  EXPECT_EQ(P(r5, "x + y") + P(r5, "x - y"), P(r5, "2*x"));
  const Ring r2 = xy(2);
  EXPECT_TRUE((P(r2, "x") + P(r2, "x")).is_zero());
}

TEST(Poly, Multiplication) {
  const Ring r7 = xy(7);
  const Poly f = P(r7, "x^2 + 3*y");
  EXPECT_EQ(f * Poly::constant(r7, 1), f);
  EXPECT_EQ(P(r7, "x + y") * P(r7, "x - y"), P(r7, "x^2 - y^2"));
  const Ring r2 = xy(2);
  EXPECT_EQ(P(r2, "x + y") * P(r2, "x + y"), P(r2, "x^2 + y^2"));
}

TEST(Poly, CanonicalTermOrderIsGrevlex) {
  const Ring r = make_ring(5, {"x", "y", "z"});
  // x^2 > xy > y^2 > xz > yz > z^2 in grevlex.
  EXPECT_EQ(P(r, "z^2 + y*z + x*z + y^2 + x*y + x^2").to_string(), "x^2 + x*y + y^2 + x*z + y*z + z^2");
  EXPECT_EQ(P(r, "x + y^2").to_string(), "y^2 + x");
}

TEST(Poly, TruncatedMultiply) {
  const Ring r3 = xy(3);
  EXPECT_TRUE(truncated_multiply(P(r3, "x^2"), P(r3, "x"), 3).is_zero());
  const Ring r2 = xy(2);
  EXPECT_TRUE(truncated_multiply(P(r2, "x + y"), P(r2, "x + y"), 2).is_zero());
  EXPECT_THROW(truncated_multiply(P(r3, "x"), P(r3, "y"), 4), std::invalid_argument);
}

TEST(Poly, TruncatedProductOfTheEightVariableQuotient) {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    const Ring r = make_ring(p, {"w12", "w13", "w22", "w31", "z12", "z21", "z23", "z31"});
    const Poly omega = P(r, "(w12*z21)*(-w22*z21 + w31*z23)*(w22*z12)*(w13*z31)");
    EXPECT_EQ(power(omega, p - 1, p), power(P(r, "w12*w13*w22*w31*z12*z21*z23*z31"), p - 1)) << "p=" << p;
  }
}

TEST(Poly, FrobeniusPower) {
  const Ring r3 = xy(3);
  EXPECT_EQ(frobenius_power(P(r3, "x + y"), 1), P(r3, "x^3 + y^3"));
  const Poly f = P(r3, "x*y + 2");
  EXPECT_EQ(frobenius_power(f, 0), f);
  const Ring r5 = xy(5);
  EXPECT_EQ(frobenius_power(P(r5, "2*x"), 1), P(r5, "2*x^5"));
  const Ring tight = make_ring(2, {"x"}, MonomialOrder::kGrevlex, 100);
  EXPECT_THROW(frobenius_power(P(tight, "x^60"), 1), ExponentOverflow);
}

TEST(Poly, Power) {
  const Ring r3 = xy(3);
  const Poly f = P(r3, "x + 2*y");
  EXPECT_EQ(power(f, 1), f);
  EXPECT_EQ(power(f, 0), Poly::constant(r3, 1));
  EXPECT_TRUE(power(P(r3, "x + y"), 3, 3).is_zero());
  // Oracle: repeated truncated multiplication.
  Poly naive = Poly::constant(r3, 1);
  for (int i = 0; i < 8; ++i) naive = truncated_multiply(naive, P(r3, "x + y"), 9);
  EXPECT_EQ(power(P(r3, "x + y"), 8, 9), naive);
}

TEST(Poly, ExponentOverflowIsChecked) {
  const Ring r = make_ring(2, {"x"});
  EXPECT_THROW(power(P(r, "x^60000"), 2), ExponentOverflow);
  EXPECT_THROW(P(r, "x^40000") * P(r, "x^40000"), ExponentOverflow);
}

TEST(Poly, Substitute) {
  const Ring r = make_ring(5, {"x", "y", "z"});
  const Poly f = P(r, "x*y + z");
  EXPECT_EQ(substitute(f, {}), f);
  EXPECT_EQ(substitute(f, {{"x", std::nullopt}}), P(r, "z"));
  EXPECT_EQ(substitute(f, {{"x", P(r, "y + 1")}}), P(r, "y^2 + y + z"));
  EXPECT_THROW(substitute(f, {{"q", std::nullopt}}), std::invalid_argument);
  const Ring other = make_ring(7, {"x", "y", "z"});
  EXPECT_THROW(substitute(f, {}, other), std::invalid_argument);
}

TEST(Poly, ZeroingTheTenVariablesOfT) {
  const Ring r = make_ring(3, wz_names());
  const std::vector<std::string> zeroed{"w11", "w21", "w23", "w32", "w33", "z11", "z13", "z22", "z32", "z33"};
  const Poly f2 = P(r, "w22*z21 - w21*z22 + w23*z31 - w31*z23 + w21*z11 - w11*z21");
  EXPECT_EQ(zero_variables(f2, zeroed), P(r, "w22*z21 - w31*z23"));
  const Poly f4 = P(r, "w12*z21 - w21*z12 + w13*z31 - w31*z13");
  EXPECT_EQ(zero_variables(f4, zeroed), P(r, "w12*z21 + w13*z31"));
}

TEST(Poly, Derivative) {
  const Ring r2 = xy(2);
  EXPECT_TRUE(derivative(P(r2, "x^2"), "x").is_zero());
  const Ring r = make_ring(5, wz_names());
  EXPECT_EQ(derivative(P(r, "w21*z12 - w12*z21 + w23*z32 - w32*z23"), "w32"), P(r, "-z23"));
  EXPECT_TRUE(derivative(P(r, "w11*z11"), "w12").is_zero());
  EXPECT_THROW(derivative(P(r, "w11"), "nope"), std::invalid_argument);
}

TEST(Poly, RenderingUsesBalancedCoefficients) {
  const Ring r = xy(7);
  EXPECT_EQ(P(r, "-x + 3*y - 2").to_string(), "-x + 3*y - 2");
  EXPECT_EQ(P(r, "6*x^2").to_string(), "-x^2");
  EXPECT_EQ(Poly(r).to_string(), "0");
  EXPECT_EQ(P(xy(2), "x - y").to_string(), "x + y");
}

TEST(Parse, Grammar) {
  const Ring r = xy(5);
  EXPECT_EQ(P(r, "2*(x+y)^2 - -x"), P(r, "2*x^2 + 4*x*y + 2*y^2 + x"));
  EXPECT_EQ(P(r, "  7 "), Poly::constant(r, 2));
  EXPECT_EQ(P(r, "x^0"), Poly::constant(r, 1));
}

TEST(Parse, ErrorsCarryPositions) {
  const Ring r = xy(5);
  try {
    P(r, "x + q");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1u);
    EXPECT_EQ(e.column(), 5u);
    EXPECT_EQ(e.token(), "q");
  }
  EXPECT_THROW(P(r, "x +"), ParseError);
  EXPECT_THROW(P(r, "(x"), ParseError);
  EXPECT_THROW(P(r, "x^y"), ParseError);
  EXPECT_THROW(P(r, "x y"), ParseError);
  EXPECT_THROW(P(r, ""), ParseError);
}

}  // namespace
}  // namespace charp
