// Acceptance gate: one PASS/FAIL line per criterion, exit status 0 iff all
// pass. Every limit below is pinned here; polynomial comparisons are exact.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "charp/parse.hpp"
#include "charp/repro.hpp"
#include "properties.hpp"

namespace {

using namespace charp;
using Clock = std::chrono::steady_clock;

constexpr double kLimitT = 60.0;            // seconds, all three primes
constexpr double kLimitA3AtThree = 300.0;   // seconds, p = 3
constexpr double kLimitA4AtThree = 600.0;   // seconds, p = 3
constexpr double kLimitKnown = 600.0;       // seconds, whole table
constexpr double kLimitSplits = 10.0;       // seconds, n = 5 and n = 6
constexpr std::size_t kPropertyCases = 200;
constexpr std::uint64_t kPropertySeed = props::kDefaultSeed;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      if (!pass) detail << "; ";
      pass = false;
      detail << what;
    }
  }
};

double seconds(Clock::time_point start) { return std::chrono::duration<double>(Clock::now() - start).count(); }

const CertStep* find_step(const Certificate& c, const std::string& id) {
  for (const CertStep& s : c.steps) {
    if (s.id == id) return &s;
  }
  return nullptr;
}

void require_steps(Outcome& o, const Certificate& c, std::uint32_t p, const std::vector<std::string>& names) {
  for (const std::string& n : names) {
    const std::string id = "p" + std::to_string(p) + "." + n;
    const CertStep* s = find_step(c, id);
    o.require(s && s->status == CriterionStatus::kHolds, id + (s ? " is " + std::string(to_string(s->status)) : " missing"));
  }
}

/// The witness must be exactly +-target (a single term).
void require_survivor(Outcome& o, const Certificate& c, std::uint32_t p, const Ring& ring, const std::string& base,
                      std::uint64_t exponent) {
  const std::string id = "p" + std::to_string(p) + ".glassbrenner";
  const CertStep* s = find_step(c, id);
  if (!s) return o.require(false, id + " missing");
  const Poly target = power(parse_poly(ring, base), exponent);
  const Poly got = parse_poly(ring, s->witness);
  o.require(got == target || got == -target, id + " survivor " + s->witness);
}

void report(int number, const std::string& title, const std::function<void(Outcome&)>& body, int& failures) {
  Outcome o;
  const auto start = Clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.require(false, std::string("exception: ") + e.what());
  }
  if (!o.pass) ++failures;
  std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << number << ": " << title << " (" << seconds(start)
            << " s)";
  if (!o.pass) std::cout << " -- " << o.detail.str();
  std::cout << std::endl;
}

Ring ring_of(std::uint32_t p, std::vector<std::string> vars) { return make_ring(p, std::move(vars)); }

std::vector<std::string> wz() {
  std::vector<std::string> out;
  for (char l : {'w', 'z'}) {
    for (int i = 1; i <= 3; ++i) {
      for (int j = 1; j <= 3; ++j) out.push_back(std::string(1, l) + std::to_string(i) + std::to_string(j));
    }
  }
  return out;
}

void criterion_T(Outcome& o) {
  const auto start = Clock::now();
  const Certificate c = repro_T({2, 3, 5});
  const double t = seconds(start);
  o.require(c.overall() == Overall::kVerified, "certificate " + std::string(to_string(c.overall())));
  for (std::uint32_t p : {2u, 3u, 5u}) {
    require_steps(o, c, p,
                  {"hsop.primary", "fedder.quotient", "jacobian", "radical.w21", "cofactor-identity", "glassbrenner"});
    require_survivor(o, c, p, ring_of(p, wz()), "w12*w13*w22*w23*w32*z13*z21*z22*z23*z31", p - 1);
  }
  o.require(t < kLimitT, "runtime " + std::to_string(t) + " s");
}

void criterion_A3(Outcome& o) {
  const Certificate c2 = repro_A3({2});
  const auto start = Clock::now();
  const Certificate c3 = repro_A3({3});
  const double t = seconds(start);
  for (const auto& [p, c] : {std::pair{2u, &c2}, std::pair{3u, &c3}}) {
    o.require(c->overall() == Overall::kVerified, "p=" + std::to_string(p) + " " + std::string(to_string(c->overall())));
    require_steps(o, *c, p, {"jacobian", "hsop", "glassbrenner"});
    require_survivor(o, *c, p, ring_of(p, matrix_variable_names(3)),
                     "x11*x13*x21*x23*x32*y12*y13*y21*y23*y31*y32", std::uint64_t{p} * p - 1);
  }
  o.require(t < kLimitA3AtThree, "p=3 runtime " + std::to_string(t) + " s");
}

void criterion_A4(Outcome& o) {
  const Certificate c2 = repro_A4({2});
  const auto start = Clock::now();
  const Certificate c3 = repro_A4({3});
  const double t = seconds(start);
  for (const auto& [p, c] : {std::pair{2u, &c2}, std::pair{3u, &c3}}) {
    o.require(c->overall() == Overall::kVerified, "p=" + std::to_string(p) + " " + std::string(to_string(c->overall())));
    require_steps(o, *c, p, {"jacobian", "radical.x12", "glassbrenner"});
    require_survivor(o, *c, p, ring_of(p, matrix_variable_names(4)),
                     "x12*x13*x14*x21*x23*x31*x32*x34*x41*x42*x43*y11*y12*y13*y14*y21*y22*y23*y24*y34*y42", p - 1);
  }
  o.require(t < kLimitA4AtThree, "p=3 runtime " + std::to_string(t) + " s");
}

void criterion_known(Outcome& o) {
  struct Case {
    IdealFamily family;
    std::size_t n;
    std::uint32_t p;
    bool fpure;
  };
  std::vector<Case> cases;
  for (std::uint32_t p : {2u, 3u}) {
    for (std::size_t n : {2u, 3u}) cases.push_back({IdealFamily::kOffDiagonal, n, p, true});
    for (std::size_t n : {3u, 4u}) {
      cases.push_back({IdealFamily::kCrossDiagonal, n, p, true});
      cases.push_back({IdealFamily::kAntiDiagonal, n, p, true});
    }
  }
  cases.push_back({IdealFamily::kOffDiagonal, 4, 2, false});
  const auto start = Clock::now();
  for (const Case& k : cases) {
    const Certificate c = check_known_fpurity(k.family, k.n, k.p);
    const CertStep& s = c.steps.at(0);
    const std::string label = std::string(to_string(k.family)) + " n=" + std::to_string(k.n) + " p=" + std::to_string(k.p);
    const std::string want = k.fpure ? "computed: F-pure" : "computed: fails F-purity";
    bool computed = false;
    for (const std::string& n : s.notes) computed = computed || n == want;
    o.require(s.status == CriterionStatus::kHolds && computed, label + " " + std::string(to_string(s.status)));
  }
  const double t = seconds(start);
  o.require(t < kLimitKnown, "runtime " + std::to_string(t) + " s");
}

void criterion_splits(Outcome& o) {
  const auto start = Clock::now();
  const Certificate s5 = repro_theorem_splits(5);
  const Certificate s6 = repro_theorem_splits(6);
  const double t = seconds(start);
  o.require(s5.overall() == Overall::kVerified, "n=5 " + std::string(to_string(s5.overall())));
  o.require(s6.overall() == Overall::kVerified, "n=6 " + std::string(to_string(s6.overall())));
  const CertStep* w5 = find_step(s5, "omega.size");
  const CertStep* w6 = find_step(s6, "omega.size");
  o.require(w5 && w5->witness == "14 variables", "|Omega1| != 14");
  o.require(w6 && w6->witness == "24 variables", "|Omega2| != 24");
  for (const auto& [c, id] : {std::pair{&s5, "generators"}, std::pair{&s5, "dimension"}, std::pair{&s6, "generators"},
                              std::pair{&s6, "t-prime.vs-t"}, std::pair{&s6, "dimension"}}) {
    const CertStep* s = find_step(*c, id);
    o.require(s && s->status == CriterionStatus::kHolds, c->claim_id + "." + id);
  }
  o.require(t < kLimitSplits, "runtime " + std::to_string(t) + " s");
}

void criterion_properties(Outcome& o) {
  for (const props::Report& r : props::run_all(kPropertySeed, kPropertyCases)) {
    o.require(r.cases >= kPropertyCases && r.failures == 0,
              r.name + ": " + std::to_string(r.failures) + "/" + std::to_string(r.cases) + " failed, " + r.first_failure);
  }
}

void criterion_negative(Outcome& o) {
  ReproOptions tampered;
  tampered.tamper = Tamper::kSignFlip;
  const Certificate t = repro_T({2, 3, 5}, tampered);
  const Certificate a3 = repro_A3({2, 3}, tampered);
  const Certificate a4 = repro_A4({2, 3}, tampered);
  for (const Certificate* c : {&t, &a3, &a4}) {
    o.require(c->overall() != Overall::kVerified, c->claim_id + " verified despite a flipped sign");
  }
}

}  // namespace

int main() {
  int failures = 0;
  report(1, "ring T certificate at p = 2, 3, 5", criterion_T, failures);
  report(2, "A3 certificate at p = 2, 3 with q = p^2", criterion_A3, failures);
  report(3, "A4 certificate at p = 2, 3", criterion_A4, failures);
  report(4, "known F-purity table", criterion_known, failures);
  report(5, "structural splits for n = 5, 6", criterion_splits, failures);
  report(6, "property suites, 200 cases each", criterion_properties, failures);
  report(7, "sign-flip negative controls", criterion_negative, failures);
  return failures == 0 ? 0 : 1;
}
