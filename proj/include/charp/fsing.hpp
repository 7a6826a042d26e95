#pragma once

// Fedder and Glassbrenner criteria for complete intersections, and the
// parameter-system checks that justify applying them.

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "charp/groebner.hpp"
#include "charp/ring.hpp"

namespace charp {

/// An exponent of the form base + offset where base is 0, p^k or q.
struct ExponentExpr {
  enum class Base { kConstant, kPPower, kQ };
  Base base = Base::kConstant;
  unsigned p_power = 1;  // k in p^k; ignored unless base == kPPower
  std::int64_t offset = 0;

  static ExponentExpr constant(std::int64_t value) { return {Base::kConstant, 1, value}; }
  static ExponentExpr p_pow(unsigned k, std::int64_t offset = 0) { return {Base::kPPower, k, offset}; }
  static ExponentExpr q_minus(std::int64_t d) { return {Base::kQ, 1, -d}; }

  /// Throws std::domain_error when the value is negative.
  std::uint64_t evaluate(std::uint64_t p, std::uint64_t q) const;
  std::string to_string() const;
};

/// prod factor_i ^ exponent_i, evaluated modulo (zeroed variables) + m^[q].
struct ProductExpr {
  Ring ring;
  std::vector<std::pair<Poly, std::uint64_t>> factors;
  std::vector<std::string> zeroed;
  std::optional<std::uint64_t> truncation_q;
};

struct ProductStats {
  std::uint64_t max_intermediate_terms = 0;
  std::uint64_t multiplications = 0;
};

/// Zeroes variables in every factor, multiplies the single-term factors
/// first, then the rest by ascending term count (stable), one copy at a time
/// with truncation. Throws BudgetExceeded past budget.max_terms terms.
Poly eval_product_expr(const ProductExpr& expr, const Budget& budget = {}, ProductStats* stats = nullptr);

enum class CriterionStatus { kHolds, kFails, kInconclusive };

std::string_view to_string(CriterionStatus status);

struct CriterionResult {
  CriterionStatus status = CriterionStatus::kInconclusive;
  std::uint64_t q = 0;
  /// Nonzero whenever status == kHolds.
  std::optional<Poly> survivor;
  std::vector<std::string> notes;
  std::uint64_t max_intermediate_terms = 0;
  std::chrono::duration<double> elapsed{0};
};

/// omega^(p-1) mod m^[p], optionally after zeroing variables. A zero product
/// under zeroing is reported as inconclusive.
CriterionResult fedder_ci_check(const Ideal& ideal, const std::vector<std::string>& zeroed = {},
                                const Budget& budget = {});

struct WitnessSpec {
  Poly test_element;
  std::vector<std::pair<Poly, ExponentExpr>> prefactors;
  std::vector<Poly> ci_generators;
  std::vector<std::string> zeroed;
  ExponentExpr generator_exponent = ExponentExpr::q_minus(1);
};

/// prefactors * c * prod g^(q-1) mod m^[q] for each q in turn; holds at the
/// first nonzero product.
CriterionResult glassbrenner_ci_check(const WitnessSpec& spec, const std::vector<std::uint64_t>& q_list,
                                      const Budget& budget = {});

/// p, p^2, ..., p^count.
std::vector<std::uint64_t> default_q_list(std::uint64_t p, unsigned count = 3);

struct Elimination {
  Ring residual;
  /// Non-linear inputs mapped into `residual`, in input order.
  std::vector<Poly> images;
  /// Input positions of the entries of `images`.
  std::vector<std::size_t> image_sources;
  /// Eliminated variable and its value, in elimination order.
  std::vector<std::pair<std::string, Poly>> steps;
  /// Linear inputs that became zero after earlier eliminations.
  std::vector<std::size_t> dependent;
  /// Human-readable log, e.g. "w13 -> z31".
  std::vector<std::string> path;
};

/// Uses every homogeneous linear element to eliminate the variable of its
/// support that comes last in ring order. Single-variable elements go first,
/// the rest follow in input order; each is rewritten by earlier steps before
/// it is used.
Elimination linear_eliminate(const Ring& ring, const std::vector<Poly>& elements);

struct HsopResult {
  CriterionStatus status = CriterionStatus::kInconclusive;
  Elimination elimination;
  std::optional<Ideal> residual_ideal;
  std::string note;
};

/// Holds iff the elements generate an ideal of dimension zero. Requires one
/// homogeneous element per variable.
HsopResult hsop_check(const Ring& ring, const std::vector<Poly>& elements, const Budget& budget = {});

}  // namespace charp
