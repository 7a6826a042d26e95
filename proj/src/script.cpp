#include "charp/script.hpp"

#include <chrono>

#include "charp/commutator.hpp"

namespace charp::dsl {

namespace {

IdealFamily family_of(std::string_view name) {
  if (name == "cross_ideal") return IdealFamily::kTraceAdjustedCross;
  if (name == "anti_ideal") return IdealFamily::kAntiDiagonal;
  if (name == "diag_ideal") return IdealFamily::kDiagonal;
  return IdealFamily::kOffDiagonal;
}

Ideal builtin_ideal(const Expr& call, const Ring& ring) {
  const std::size_t n = call.args.at(0).value;
  const MatrixPair m = indeterminate_matrices(ring, n);
  const SymbolicMatrix c = commutator(m.x, m.y);
  const IdealFamily family = family_of(call.name);
  if (family == IdealFamily::kDiagonal) {
    // The trace relation makes the last diagonal entry redundant.
    std::vector<Poly> gens;
    for (std::size_t i = 1; i < std::max<std::size_t>(n, 2); ++i) gens.push_back(c.entry(i, i));
    return Ideal(ring, std::move(gens));
  }
  return ideal_from_family(c, family);
}

std::vector<Poly> evaluate_all(const std::vector<Expr>& exprs, const Environment& env) {
  std::vector<Poly> out;
  for (const Expr& e : exprs) out.push_back(evaluate(e, env));
  return out;
}

const char* check_name(CheckKind kind) {
  switch (kind) {
    case CheckKind::kFPure:
      return "fpure";
    case CheckKind::kFReg:
      return "freg";
    case CheckKind::kDim0:
      return "dim0";
    case CheckKind::kMember:
      return "member";
  }
  return "?";
}

void record(const CriterionResult& r, CertStep& step) {
  step.status = r.status;
  step.witness = r.survivor ? brief(*r.survivor) : "0";
  step.notes.push_back("q=" + std::to_string(r.q) + ", peak intermediate terms " +
                       std::to_string(r.max_intermediate_terms));
  for (const std::string& n : r.notes) step.notes.push_back(n);
}

void run_check(const Statement& st, const Environment& env, const Budget& budget, CertStep& step) {
  switch (st.check) {
    case CheckKind::kFPure: {
      const Ideal& ideal = env.ideals.at(st.name);
      step.notes.push_back("generators taken as a regular sequence");
      record(fedder_ci_check(ideal, st.zeroed, budget), step);
      return;
    }
    case CheckKind::kFReg: {
      const Ideal& ideal = env.ideals.at(st.name);
      WitnessSpec spec{evaluate(*st.expr, env), {}, ideal.generators(), st.zeroed};
      for (const auto& [base, exponent] : st.prefactors) spec.prefactors.emplace_back(evaluate(base, env), exponent);
      std::vector<std::uint64_t> qs;
      const std::uint64_t p = env.ring->characteristic();
      for (const ExponentExpr& q : st.q_list) qs.push_back(q.evaluate(p, 0));
      step.notes.push_back("generators taken as a regular sequence");
      record(glassbrenner_ci_check(spec, qs, budget), step);
      return;
    }
    case CheckKind::kDim0: {
      const Ideal ideal = st.name.empty() ? Ideal(env.ring, evaluate_all(st.list, env)) : env.ideals.at(st.name);
      const MonomialIdeal lead = leading_monomial_ideal(ideal, budget);
      const std::size_t dim = monomial_quotient_dim(lead);
      step.witness = "dim " + std::to_string(dim);
      step.status = dim == 0 ? CriterionStatus::kHolds : CriterionStatus::kFails;
      return;
    }
    case CheckKind::kMember: {
      const Poly f = evaluate(*st.expr, env);
      const Poly r = normal_form(f, env.ideals.at(st.name), budget);
      step.witness = "remainder " + brief(r);
      step.status = r.is_zero() ? CriterionStatus::kHolds : CriterionStatus::kFails;
      return;
    }
  }
}

void bind_statement(const Statement& st, Environment& env) {
  try {
    switch (st.kind) {
      case Statement::Kind::kRing:
        env.ring = make_ring(st.characteristic, st.variables);
        return;
      case Statement::Kind::kPoly:
        env.polys.insert_or_assign(st.name, evaluate(*st.expr, env));
        return;
      case Statement::Kind::kIdeal:
        env.ideals.insert_or_assign(st.name, st.builtin ? builtin_ideal(*st.builtin, env.ring)
                                                        : Ideal(env.ring, evaluate_all(st.list, env)));
        return;
      case Statement::Kind::kCheck:
        return;
    }
  } catch (const ScriptError&) {
    throw;
  } catch (const std::exception& e) {
    throw ScriptError(st.line, e.what());
  }
}

}  // namespace

Poly evaluate(const Expr& expr, const Environment& env) {
  switch (expr.kind) {
    case Expr::Kind::kInt:
      return Poly::constant(env.ring, static_cast<std::int64_t>(expr.value % env.ring->characteristic()));
    case Expr::Kind::kName: {
      if (auto it = env.polys.find(expr.name); it != env.polys.end()) return it->second;
      return Poly::variable(env.ring, expr.name);
    }
    case Expr::Kind::kNeg:
      return -evaluate(expr.args[0], env);
    case Expr::Kind::kAdd:
      return evaluate(expr.args[0], env) + evaluate(expr.args[1], env);
    case Expr::Kind::kSub:
      return evaluate(expr.args[0], env) - evaluate(expr.args[1], env);
    case Expr::Kind::kMul:
      return evaluate(expr.args[0], env) * evaluate(expr.args[1], env);
    case Expr::Kind::kPow:
      return power(evaluate(expr.args[0], env), expr.value);
    case Expr::Kind::kCall: {
      const MatrixPair m = indeterminate_matrices(env.ring, expr.args[0].value);
      return commutator(m.x, m.y).entry(expr.args[1].value, expr.args[2].value);
    }
  }
  throw std::logic_error("unhandled expression");
}

Environment bind(const Script& script) {
  Environment env;
  for (const Statement& st : script.statements) bind_statement(st, env);
  return env;
}

Certificate run_script(const Script& script, const Budget& budget, const std::string& claim_id) {
  Certificate cert;
  cert.claim_id = claim_id;
  cert.title = "script checks";
  Environment env;
  for (const Statement& st : script.statements) {
    bind_statement(st, env);
    if (st.kind != Statement::Kind::kCheck) continue;
    CertStep step;
    step.id = "line" + std::to_string(st.line) + "." + check_name(st.check);
    step.description = st.text;
    const auto start = std::chrono::steady_clock::now();
    try {
      run_check(st, env, budget, step);
    } catch (const BudgetExceeded& e) {
      step.status = CriterionStatus::kInconclusive;
      step.notes.push_back(std::string("budget: ") + e.what());
    } catch (const std::exception& e) {
      step.status = CriterionStatus::kFails;
      step.notes.push_back(std::string("error: ") + e.what());
    }
    step.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    cert.seconds += step.seconds;
    cert.steps.push_back(std::move(step));
  }
  if (env.ring) cert.characteristics = {env.ring->characteristic()};
  return cert;
}

std::string brief(const Poly& f, std::size_t max_terms) {
  if (f.size() <= max_terms) return f.to_string();
  std::vector<Poly::Term> terms;
  for (std::size_t i = 0; i < max_terms; ++i) {
    const auto e = f.exponents(i);
    terms.push_back({f.coeff(i), std::vector<Exponent>(e.begin(), e.end())});
  }
  return Poly::from_terms(f.ring(), std::move(terms)).to_string() + " + ... (" + std::to_string(f.size()) + " terms)";
}

}  // namespace charp::dsl
