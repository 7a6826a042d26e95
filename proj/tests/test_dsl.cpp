#include <gtest/gtest.h>

#include <random>

#include "charp/dsl.hpp"
#include "charp/script.hpp"

namespace charp::dsl {
namespace {

TEST(Dsl, MinimalScript) {
  const Script s = parse_script("ring p=2 vars x y; poly f = x+y; check dim0 [f]");
  ASSERT_EQ(s.statements.size(), 3u);
  EXPECT_EQ(s.statements[0].kind, Statement::Kind::kRing);
  EXPECT_EQ(s.statements[0].characteristic, 2u);
  EXPECT_EQ(s.statements[2].check, CheckKind::kDim0);
  const Certificate c = run_script(s, Budget{});
  ASSERT_EQ(c.steps.size(), 1u);
  EXPECT_EQ(c.steps[0].status, CriterionStatus::kFails);
}

TEST(Dsl, PolynomialBindingMatchesConstruction) {
  const Script s = parse_script(
      "ring p=5 vars w12 w21 w23 w32 z12 z21 z23 z32\n"
      "poly f1 = w21*z12 - w12*z21 + w23*z32 - w32*z23\n");
  const Environment env = bind(s);
  const Ring& r = env.ring;
  const Poly built = Poly::variable(r, "w21") * Poly::variable(r, "z12") -
                     Poly::variable(r, "w12") * Poly::variable(r, "z21") +
                     Poly::variable(r, "w23") * Poly::variable(r, "z32") -
                     Poly::variable(r, "w32") * Poly::variable(r, "z23");
  EXPECT_EQ(env.polys.at("f1"), built);
}

TEST(Dsl, SyntaxErrorPointsAtTheEqualsSign) {
  try {
    parse_script("ring p=3 vars x\npoly = x");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 6u);
    EXPECT_EQ(e.token(), "=");
  }
}

TEST(Dsl, ResolutionErrors) {
  EXPECT_THROW(parse_script("poly f = 1"), ParseError);
  EXPECT_THROW(parse_script("ring p=4 vars x"), ParseError);
  EXPECT_THROW(parse_script("ring p=3 vars x\npoly f = y"), ParseError);
  EXPECT_THROW(parse_script("ring p=3 vars x\npoly x = 1"), ParseError);
  EXPECT_THROW(parse_script("ring p=3 vars x\npoly f = 1\npoly f = 2"), ParseError);
  EXPECT_THROW(parse_script("ring p=3 vars x\nring p=3 vars y"), ParseError);
  EXPECT_THROW(parse_script("ring p=3 vars x\ncheck fpure J"), ParseError);
  EXPECT_THROW(parse_script("ring p=3 vars x y\nideal I = cross_ideal(3)"), ParseError);
  EXPECT_THROW(parse_script("ring p=3 vars matvars(2)\npoly f = comm(2, 1)"), ParseError);
  EXPECT_THROW(parse_script("ring p=3 vars x\npoly f = (x"), ParseError);
  EXPECT_THROW(parse_script("ring p=3 vars x\npoly f = x $ 2"), ParseError);
}

TEST(Dsl, CheckForms) {
  const Script s = parse_script(
      "ring p=3 vars matvars(3)\n"
      "ideal c = cross_ideal(3)\n"
      "poly f = x13*y23*(x13*y31 - x31*y13)\n"
      "check freg c witness f prefactor x13 ^ p^2-3 prefactor y23*y31 ^ q-2 q p^2 zero [x12, x22]\n"
      "check fpure c\n"
      "check member comm(3, 1, 1) in c\n");
  ASSERT_EQ(s.statements.size(), 6u);
  const Statement& freg = s.statements[3];
  EXPECT_EQ(freg.check, CheckKind::kFReg);
  ASSERT_EQ(freg.prefactors.size(), 2u);
  EXPECT_EQ(freg.prefactors[0].second.to_string(), "p^2-3");
  EXPECT_EQ(freg.prefactors[1].second.to_string(), "q-2");
  ASSERT_EQ(freg.q_list.size(), 1u);
  EXPECT_EQ(freg.q_list[0].evaluate(3, 9), 9u);
  EXPECT_EQ(freg.zeroed, (std::vector<std::string>{"x12", "x22"}));
}

TEST(Dsl, MembershipAndDimension) {
  const Script s = parse_script(
      "ring p=3 vars x y\n"
      "ideal I = [x^2, y^3]\n"
      "check member x^2*y + y^4 in I\n"
      "check member x*y in I\n"
      "check dim0 I\n");
  const Certificate c = run_script(s, Budget{});
  ASSERT_EQ(c.steps.size(), 3u);
  EXPECT_EQ(c.steps[0].status, CriterionStatus::kHolds);
  EXPECT_EQ(c.steps[1].status, CriterionStatus::kFails);
  EXPECT_EQ(c.steps[2].status, CriterionStatus::kHolds);
  EXPECT_EQ(c.steps[0].id, "line3.member");
}

TEST(Dsl, BriefTruncatesLongPolynomials) {
  const Script s = parse_script("ring p=7 vars a b c\npoly f = (a + b + c + 1)^6");
  const Poly f = bind(s).polys.at("f");
  const std::string b = brief(f, 3);
  EXPECT_LT(b.size(), f.to_string().size());
  EXPECT_EQ(brief(Poly::variable(f.ring(), "a")), "a");
}

TEST(Dsl, FuzzedInputNeverCrashes) {
  const std::string alphabet = "ringpvarsxyzqchekfudm0123456789 =+-*^()[],;#\n";
  std::mt19937_64 rng(7);
  const std::vector<std::string> seeds{"ring p=3 vars x y\npoly f = x^2 - y\nideal I = [f]\ncheck fpure I\n",
                                       "ring p=2 vars matvars(2)\nideal a = anti_ideal(2)\ncheck dim0 a\n"};
  for (int trial = 0; trial < 2000; ++trial) {
    std::string text = seeds[trial % seeds.size()];
    const int edits = 1 + static_cast<int>(rng() % 4);
    for (int e = 0; e < edits; ++e) {
      const std::size_t at = rng() % (text.size() + 1);
      switch (rng() % 3) {
        case 0:
          text.insert(at, 1, alphabet[rng() % alphabet.size()]);
          break;
        case 1:
          if (at < text.size()) text.erase(at, 1);
          break;
        default:
          if (at < text.size()) text[at] = alphabet[rng() % alphabet.size()];
      }
    }
    try {
      const Script s = parse_script(text);
      run_script(s, Budget{10'000, 200'000});
    } catch (const ParseError&) {
    } catch (const ScriptError&) {
    } catch (const BudgetExceeded&) {
    }
  }
  SUCCEED();
}

}  // namespace
}  // namespace charp::dsl
