#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "charp/fsing.hpp"

namespace charp {

namespace {

using Clock = std::chrono::steady_clock;

std::uint64_t checked_pow(std::uint64_t base, unsigned k) {
  std::uint64_t out = 1;
  for (unsigned i = 0; i < k; ++i) {
    if (out > UINT64_MAX / base) throw std::overflow_error("exponent expression overflows");
    out *= base;
  }
  return out;
}

void require_power_of_p(std::uint64_t q, std::uint64_t p) {
  const auto e = log_base(q, p);
  if (!e || *e == 0) {
    throw std::invalid_argument(std::to_string(q) + " is not a positive power of " + std::to_string(p));
  }
}

bool is_linear_form(const Poly& f) {
  if (f.is_zero()) return false;
  for (std::size_t i = 0; i < f.size(); ++i) {
    std::uint64_t d = 0;
    for (Exponent e : f.exponents(i)) d += e;
    if (d != 1) return false;
  }
  return true;
}

}  // namespace

std::uint64_t ExponentExpr::evaluate(std::uint64_t p, std::uint64_t q) const {
  std::int64_t base_value = 0;
  switch (base) {
    case Base::kConstant:
      break;
    case Base::kPPower:
      base_value = static_cast<std::int64_t>(checked_pow(p, p_power));
      break;
    case Base::kQ:
      base_value = static_cast<std::int64_t>(q);
      break;
  }
  const std::int64_t value = base_value + offset;
  if (value < 0) throw std::domain_error("exponent " + to_string() + " is negative");
  return static_cast<std::uint64_t>(value);
}

std::string ExponentExpr::to_string() const {
  std::string head;
  switch (base) {
    case Base::kConstant:
      return std::to_string(offset);
    case Base::kPPower:
      head = p_power == 1 ? "p" : "p^" + std::to_string(p_power);
      break;
    case Base::kQ:
      head = "q";
      break;
  }
  if (offset == 0) return head;
  return head + (offset > 0 ? "+" : "-") + std::to_string(offset > 0 ? offset : -offset);
}

Poly eval_product_expr(const ProductExpr& expr, const Budget& budget, ProductStats* stats) {
  if (!expr.ring) throw std::invalid_argument("product expression without a ring");
  const Ring& ring = expr.ring;
  for (const std::string& v : expr.zeroed) ring->require_index(v);
  const std::uint64_t q = expr.truncation_q.value_or(0);
  if (q != 0) require_power_of_p(q, ring->characteristic());

  ProductStats local;
  ProductStats& st = stats ? *stats : local;
  auto note_size = [&](const Poly& f) {
    st.max_intermediate_terms = std::max<std::uint64_t>(st.max_intermediate_terms, f.size());
    if (f.size() > budget.max_terms) {
      throw BudgetExceeded("product exceeded " + std::to_string(budget.max_terms) + " terms");
    }
  };
  auto mul = [&](const Poly& a, const Poly& b) {
    ++st.multiplications;
    Poly out = q != 0 ? truncated_multiply(a, b, q) : multiply(a, b);
    note_size(out);
    return out;
  };

  struct Factor {
    Poly poly;
    std::uint64_t exponent;
    std::size_t position;
  };
  std::vector<Factor> monomials, others;
  for (std::size_t i = 0; i < expr.factors.size(); ++i) {
    const auto& [f, e] = expr.factors[i];
    require_same_ring(f.ring(), ring);
    if (e == 0) continue;
    Poly g = expr.zeroed.empty() ? f : zero_variables(f, expr.zeroed);
    if (g.is_zero()) return Poly(ring);
    (g.size() == 1 ? monomials : others).push_back({std::move(g), e, i});
  }
  std::stable_sort(others.begin(), others.end(),
                   [](const Factor& a, const Factor& b) { return a.poly.size() < b.poly.size(); });

  Poly acc = Poly::constant(ring, 1);
  for (const Factor& m : monomials) {
    acc = mul(acc, power(m.poly, m.exponent, expr.truncation_q));
    if (acc.is_zero()) return acc;
  }
  for (const Factor& f : others) {
    for (std::uint64_t k = 0; k < f.exponent; ++k) {
      acc = mul(acc, f.poly);
      if (acc.is_zero()) return acc;
    }
  }
  return acc;
}

std::string_view to_string(CriterionStatus status) {
  switch (status) {
    case CriterionStatus::kHolds:
      return "holds";
    case CriterionStatus::kFails:
      return "fails";
    case CriterionStatus::kInconclusive:
      return "inconclusive";
  }
  return "?";
}

CriterionResult fedder_ci_check(const Ideal& ideal, const std::vector<std::string>& zeroed, const Budget& budget) {
  const auto start = Clock::now();
  const Ring& ring = ideal.ring();
  const std::uint64_t p = ring->characteristic();
  CriterionResult result;
  result.q = p;

  ProductExpr expr{ring, {}, zeroed, p};
  for (const Poly& g : ideal.generators()) expr.factors.emplace_back(g, p - 1);
  ProductStats stats;
  try {
    Poly product = eval_product_expr(expr, budget, &stats);
    if (!product.is_zero()) {
      result.status = CriterionStatus::kHolds;
      result.survivor = std::move(product);
    } else if (zeroed.empty()) {
      result.status = CriterionStatus::kFails;
      result.notes.push_back("omega^(p-1) lies in m^[p]");
    } else {
      result.status = CriterionStatus::kInconclusive;
      result.notes.push_back("product vanishes after zeroing; says nothing about the unzeroed ideal");
    }
  } catch (const BudgetExceeded& e) {
    result.status = CriterionStatus::kInconclusive;
    result.notes.push_back(e.what());
  }
  if (!zeroed.empty()) result.notes.push_back("evaluated with " + std::to_string(zeroed.size()) + " variables zeroed");
  result.max_intermediate_terms = stats.max_intermediate_terms;
  result.elapsed = Clock::now() - start;
  return result;
}

CriterionResult glassbrenner_ci_check(const WitnessSpec& spec, const std::vector<std::uint64_t>& q_list,
                                      const Budget& budget) {
  if (q_list.empty()) throw std::invalid_argument("empty q list");
  const auto start = Clock::now();
  const Ring& ring = spec.test_element.ring();
  const std::uint64_t p = ring->characteristic();
  for (std::uint64_t q : q_list) require_power_of_p(q, p);

  CriterionResult result;
  bool budget_hit = false;
  for (std::uint64_t q : q_list) {
    result.q = q;
    ProductExpr expr{ring, {}, spec.zeroed, q};
    for (const auto& [f, e] : spec.prefactors) expr.factors.emplace_back(f, e.evaluate(p, q));
    expr.factors.emplace_back(spec.test_element, 1);
    const std::uint64_t ge = spec.generator_exponent.evaluate(p, q);
    for (const Poly& g : spec.ci_generators) expr.factors.emplace_back(g, ge);
    ProductStats stats;
    try {
      Poly product = eval_product_expr(expr, budget, &stats);
      result.max_intermediate_terms = std::max(result.max_intermediate_terms, stats.max_intermediate_terms);
      if (!product.is_zero()) {
        result.status = CriterionStatus::kHolds;
        result.survivor = std::move(product);
        break;
      }
      result.notes.push_back("q=" + std::to_string(q) + ": product lies in m^[q]");
    } catch (const BudgetExceeded& e) {
      budget_hit = true;
      result.max_intermediate_terms = std::max(result.max_intermediate_terms, stats.max_intermediate_terms);
      result.notes.push_back("q=" + std::to_string(q) + ": " + e.what());
    }
  }
  if (result.status != CriterionStatus::kHolds) {
    result.status = (budget_hit || !spec.zeroed.empty()) ? CriterionStatus::kInconclusive : CriterionStatus::kFails;
  }
  result.elapsed = Clock::now() - start;
  return result;
}

std::vector<std::uint64_t> default_q_list(std::uint64_t p, unsigned count) {
  std::vector<std::uint64_t> out;
  std::uint64_t q = 1;
  for (unsigned i = 0; i < count; ++i) {
    q *= p;
    out.push_back(q);
  }
  return out;
}

Elimination linear_eliminate(const Ring& ring, const std::vector<Poly>& elements) {
  std::vector<std::size_t> order;
  std::vector<char> is_linear(elements.size(), 0);
  for (std::size_t i = 0; i < elements.size(); ++i) {
    require_same_ring(elements[i].ring(), ring);
    if (is_linear_form(elements[i])) is_linear[i] = 1;
  }
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (is_linear[i] && elements[i].size() == 1) order.push_back(i);
  }
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (is_linear[i] && elements[i].size() > 1) order.push_back(i);
  }

  Elimination out;
  Bindings bindings;
  std::vector<char> eliminated(ring->num_vars(), 0);
  for (std::size_t i : order) {
    const Poly form = substitute(elements[i], bindings);
    if (form.is_zero()) {
      out.dependent.push_back(i);
      out.path.push_back("element " + std::to_string(i) + " is dependent on earlier ones");
      continue;
    }
    std::size_t pivot_term = 0, pivot_var = 0;
    for (std::size_t t = 0; t < form.size(); ++t) {
      const auto e = form.exponents(t);
      const auto v = static_cast<std::size_t>(std::find(e.begin(), e.end(), Exponent{1}) - e.begin());
      if (t == 0 || v > pivot_var) {
        pivot_var = v;
        pivot_term = t;
      }
    }
    const std::string& name = ring->variables()[pivot_var];
    const Coeff c = form.coeff(pivot_term);
    const Poly lead = Poly::variable(ring, name).scaled(c);
    // v = -(form - c v) / c
    const Poly value = (lead - form).scaled(ring->inv(c));

    Bindings step{{name, value.is_zero() ? std::nullopt : std::optional<Poly>(value)}};
    for (auto& [var, image] : bindings) {
      if (image) {
        Poly updated = substitute(*image, step);
        image = updated.is_zero() ? std::nullopt : std::optional<Poly>(std::move(updated));
      }
    }
    bindings.emplace(name, step.begin()->second);
    eliminated[pivot_var] = 1;
    out.steps.emplace_back(name, value);
    out.path.push_back(name + " -> " + value.to_string());
  }

  std::vector<std::string> remaining;
  for (std::size_t v = 0; v < ring->num_vars(); ++v) {
    if (!eliminated[v]) remaining.push_back(ring->variables()[v]);
  }
  out.residual = make_ring(ring->characteristic(), remaining, ring->order(), ring->exponent_bound());
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (is_linear[i]) continue;
    out.images.push_back(substitute(substitute(elements[i], bindings), {}, out.residual));
    out.image_sources.push_back(i);
  }
  return out;
}

HsopResult hsop_check(const Ring& ring, const std::vector<Poly>& elements, const Budget& budget) {
  if (elements.size() != ring->num_vars()) {
    throw std::invalid_argument("parameter system needs " + std::to_string(ring->num_vars()) + " elements, got " +
                                std::to_string(elements.size()));
  }
  for (std::size_t i = 0; i < elements.size(); ++i) {
    require_same_ring(elements[i].ring(), ring);
    if (!elements[i].is_homogeneous()) {
      throw std::invalid_argument("element " + std::to_string(i) + " is not homogeneous");
    }
  }
  HsopResult result;
  result.elimination = linear_eliminate(ring, elements);
  const Elimination& elim = result.elimination;
  result.residual_ideal.emplace(elim.residual, elim.images);
  try {
    const bool zero_dim = dim_is_zero(*result.residual_ideal, budget);
    result.status = zero_dim ? CriterionStatus::kHolds : CriterionStatus::kFails;
    if (!zero_dim) result.note = "residual quotient has positive dimension";
  } catch (const BudgetExceeded& e) {
    result.status = CriterionStatus::kInconclusive;
    result.note = e.what();
  }
  return result;
}

}  // namespace charp
