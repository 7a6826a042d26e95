#include <algorithm>
#include <set>
#include <stdexcept>
#include <tuple>

#include "charp/groebner.hpp"

namespace charp {

namespace {

using ExpVec = std::vector<Exponent>;

ExpVec to_vec(std::span<const Exponent> e) { return {e.begin(), e.end()}; }

// c * x^shift * g; monomial multiplication preserves the term order.
Poly shifted(const Poly& g, std::span<const Exponent> shift, Coeff c) {
  const RingCtx& ring = *g.ring();
  const std::size_t n = ring.num_vars();
  const auto& k = simd::active();
  std::vector<Coeff> coeffs(g.size());
  std::vector<Exponent> exps(g.size() * n);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const std::uint32_t top = k.add_max(g.exponents(i).data(), shift.data(), exps.data() + i * n, n);
    if (top > ring.exponent_bound()) throw ExponentOverflow("exponent overflow during reduction");
    coeffs[i] = ring.mul(g.coeff(i), c);
  }
  return Poly::from_sorted(g.ring(), std::move(coeffs), std::move(exps));
}

ExpVec quotient(std::span<const Exponent> a, std::span<const Exponent> b) {
  ExpVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = static_cast<Exponent>(a[i] - b[i]);
  return out;
}

Poly tail(const Poly& f) {
  const std::size_t n = f.ring()->num_vars();
  std::vector<Coeff> coeffs(f.coeffs().begin() + 1, f.coeffs().end());
  std::vector<Exponent> exps(f.flat_exponents().begin() + static_cast<std::ptrdiff_t>(n), f.flat_exponents().end());
  return Poly::from_sorted(f.ring(), std::move(coeffs), std::move(exps));
}

bool coprime(std::span<const Exponent> a, std::span<const Exponent> b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != 0 && b[i] != 0) return false;
  }
  return true;
}

Poly s_polynomial(const Poly& f, const Poly& g) {
  const std::size_t n = f.ring()->num_vars();
  ExpVec l(n);
  simd::active().lcm(f.leading_exponents().data(), g.leading_exponents().data(), l.data(), n);
  const RingCtx& ring = *f.ring();
  const Poly a = shifted(f, quotient(l, f.leading_exponents()), ring.inv(f.leading_coeff()));
  const Poly b = shifted(g, quotient(l, g.leading_exponents()), ring.inv(g.leading_coeff()));
  return subtract(a, b);
}

}  // namespace

Ideal::Ideal(Ring ring, std::vector<Poly> generators) : ring_(std::move(ring)), cache_(std::make_shared<Cache>()) {
  for (auto& g : generators) {
    require_same_ring(g.ring(), ring_);
    if (!g.is_zero()) gens_.push_back(std::move(g));
  }
}

const std::vector<Poly>& Ideal::groebner_basis(const Budget& budget) const {
  std::lock_guard lock(cache_->mutex);
  if (!cache_->basis) cache_->basis = buchberger(ring_, gens_, budget);
  return *cache_->basis;
}

bool Ideal::has_cached_basis() const {
  std::lock_guard lock(cache_->mutex);
  return cache_->basis.has_value();
}

Poly reduce(const Poly& f, const std::vector<Poly>& basis) {
  const RingCtx& ring = *f.ring();
  const std::size_t n = ring.num_vars();
  const auto& k = simd::active();
  std::vector<Poly::Term> remainder;
  Poly p = f;
  while (!p.is_zero()) {
    const auto lt = p.leading_exponents();
    const Poly* divisor = nullptr;
    for (const Poly& g : basis) {
      if (k.divides(g.leading_exponents().data(), lt.data(), n)) {
        divisor = &g;
        break;
      }
    }
    if (divisor == nullptr) {
      remainder.push_back({p.leading_coeff(), to_vec(lt)});
      p = tail(p);
      continue;
    }
    const Coeff c = ring.mul(p.leading_coeff(), ring.inv(divisor->leading_coeff()));
    p = subtract(p, shifted(*divisor, quotient(lt, divisor->leading_exponents()), c));
  }
  // Remainder terms were emitted in descending order already.
  std::vector<Coeff> coeffs;
  std::vector<Exponent> exps;
  for (auto& t : remainder) {
    coeffs.push_back(t.coeff);
    exps.insert(exps.end(), t.exponents.begin(), t.exponents.end());
  }
  return Poly::from_sorted(f.ring(), std::move(coeffs), std::move(exps));
}

std::vector<Poly> buchberger(const Ring& ring, const std::vector<Poly>& generators, const Budget& budget,
                             BuchbergerStats* stats) {
  BuchbergerStats local;
  BuchbergerStats& st = stats ? *stats : local;
  const std::size_t n = ring->num_vars();
  const auto& k = simd::active();

  std::vector<Poly> basis;
  for (const Poly& g : generators) {
    require_same_ring(g.ring(), ring);
    if (g.is_zero()) continue;
    Poly m = g.monic();
    if (std::find(basis.begin(), basis.end(), m) == basis.end()) basis.push_back(std::move(m));
  }

  struct Pair {
    std::uint64_t degree;
    ExpVec lcm;
    std::size_t i, j;
  };
  std::vector<Pair> pending;
  std::set<std::pair<std::size_t, std::size_t>> open;
  auto make_pair = [&](std::size_t i, std::size_t j) {
    Pair pr{0, ExpVec(n), i, j};
    k.lcm(basis[i].leading_exponents().data(), basis[j].leading_exponents().data(), pr.lcm.data(), n);
    pr.degree = k.total_degree(pr.lcm.data(), n);
    pending.push_back(std::move(pr));
    open.emplace(i, j);
  };
  for (std::size_t j = 0; j < basis.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) make_pair(i, j);
  }

  while (!pending.empty()) {
    // Normal strategy: smallest lcm first, ties by index for determinism.
    auto best = pending.begin();
    for (auto it = pending.begin() + 1; it != pending.end(); ++it) {
      int c = it->degree < best->degree ? -1 : (it->degree > best->degree ? 1 : 0);
      if (c == 0) c = ring->compare(it->lcm.data(), best->lcm.data());
      if (c == 0) c = std::tie(it->j, it->i) < std::tie(best->j, best->i) ? -1 : 1;
      if (c < 0) best = it;
    }
    const Pair pr = std::move(*best);
    pending.erase(best);
    open.erase({pr.i, pr.j});
    ++st.pairs_considered;

    if (coprime(basis[pr.i].leading_exponents(), basis[pr.j].leading_exponents())) {
      ++st.coprime_skips;
      continue;
    }
    bool chain = false;
    for (std::size_t m = 0; m < basis.size() && !chain; ++m) {
      if (m == pr.i || m == pr.j) continue;
      if (!k.divides(basis[m].leading_exponents().data(), pr.lcm.data(), n)) continue;
      const auto a = std::minmax(pr.i, m);
      const auto b = std::minmax(pr.j, m);
      chain = !open.contains({a.first, a.second}) && !open.contains({b.first, b.second});
    }
    if (chain) {
      ++st.chain_skips;
      continue;
    }

    if (++st.pairs_reduced > budget.max_pair_reductions) {
      throw BudgetExceeded("Groebner basis exceeded " + std::to_string(budget.max_pair_reductions) +
                           " pair reductions");
    }
    Poly r = reduce(s_polynomial(basis[pr.i], basis[pr.j]), basis);
    if (r.is_zero()) continue;
    basis.push_back(r.monic());
    const std::size_t t = basis.size() - 1;
    for (std::size_t i = 0; i < t; ++i) make_pair(i, t);
  }

  // Minimalise, then inter-reduce tails.
  std::vector<Poly> minimal;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < basis.size() && !redundant; ++j) {
      if (i == j) continue;
      const auto li = basis[i].leading_exponents();
      const auto lj = basis[j].leading_exponents();
      if (!k.divides(lj.data(), li.data(), n)) continue;
      // Equal leading monomials: keep the earliest.
      redundant = !std::equal(li.begin(), li.end(), lj.begin()) || j < i;
    }
    if (!redundant) minimal.push_back(basis[i]);
  }
  std::vector<Poly> reduced;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<Poly> others;
    for (std::size_t j = 0; j < minimal.size(); ++j) {
      if (j != i) others.push_back(minimal[j]);
    }
    const Poly& g = minimal[i];
    Poly lead = Poly::monomial(ring, g.leading_coeff(), g.leading_exponents());
    reduced.push_back(add(lead, reduce(tail(g), others)).monic());
  }
  std::sort(reduced.begin(), reduced.end(), [&](const Poly& a, const Poly& b) {
    return ring->compare(a.leading_exponents().data(), b.leading_exponents().data()) < 0;
  });
  return reduced;
}

Poly normal_form(const Poly& f, const Ideal& ideal, const Budget& budget) {
  require_same_ring(f.ring(), ideal.ring());
  return reduce(f, ideal.groebner_basis(budget));
}

bool contains(const Ideal& ideal, const Poly& f, const Budget& budget) {
  return normal_form(f, ideal, budget).is_zero();
}

bool same_ideal(const Ideal& a, const Ideal& b, const Budget& budget) {
  require_same_ring(a.ring(), b.ring());
  return a.groebner_basis(budget) == b.groebner_basis(budget);
}

Ideal bracket_power(const Ideal& ideal, std::uint64_t q) {
  const auto e = log_base(q, ideal.ring()->characteristic());
  if (!e || *e == 0) throw std::invalid_argument(std::to_string(q) + " is not a positive power of the characteristic");
  std::vector<Poly> gens;
  for (const Poly& g : ideal.generators()) gens.push_back(frobenius_power(g, *e));
  return Ideal(ideal.ring(), std::move(gens));
}

Ideal ci_colon(const Ideal& ideal, std::uint64_t q) {
  if (ideal.generators().empty()) throw std::invalid_argument("colon formula needs at least one generator");
  Poly omega = Poly::constant(ideal.ring(), 1);
  for (const Poly& g : ideal.generators()) omega = multiply(omega, g);
  const Ideal bracket = bracket_power(ideal, q);
  std::vector<Poly> gens{power(omega, q - 1)};
  gens.insert(gens.end(), bracket.generators().begin(), bracket.generators().end());
  return Ideal(ideal.ring(), std::move(gens));
}

MonomialIdeal::MonomialIdeal(Ring ring, std::vector<std::vector<Exponent>> generators) : ring_(std::move(ring)) {
  const std::size_t n = ring_->num_vars();
  const auto& k = simd::active();
  for (const auto& g : generators) {
    if (g.size() != n) throw std::invalid_argument("exponent vector length mismatch");
  }
  // Deduplicate, then drop anything divisible by another generator.
  std::sort(generators.begin(), generators.end());
  generators.erase(std::unique(generators.begin(), generators.end()), generators.end());
  for (std::size_t i = 0; i < generators.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < generators.size() && !redundant; ++j) {
      redundant = j != i && k.divides(generators[j].data(), generators[i].data(), n);
    }
    if (!redundant) gens_.push_back(generators[i]);
  }
}

bool MonomialIdeal::contains(std::span<const Exponent> monomial) const {
  const auto& k = simd::active();
  return std::any_of(gens_.begin(), gens_.end(),
                     [&](const auto& g) { return k.divides(g.data(), monomial.data(), monomial.size()); });
}

MonomialIdeal leading_monomial_ideal(const Ideal& ideal, const Budget& budget) {
  std::vector<std::vector<Exponent>> lts;
  for (const Poly& g : ideal.groebner_basis(budget)) lts.push_back(to_vec(g.leading_exponents()));
  return MonomialIdeal(ideal.ring(), std::move(lts));
}

namespace {

// Branch and bound for the smallest set of variables meeting every support.
class HittingSet {
 public:
  explicit HittingSet(std::vector<std::vector<std::size_t>> supports) : supports_(std::move(supports)) {}

  std::size_t solve(std::size_t upper) {
    best_ = upper;
    std::vector<char> chosen(upper, 0);
    search(chosen, 0);
    return best_;
  }

 private:
  void search(std::vector<char>& chosen, std::size_t count) {
    const std::vector<std::size_t>* open = nullptr;
    for (const auto& s : supports_) {
      const bool hit = std::any_of(s.begin(), s.end(), [&](std::size_t v) { return chosen[v] != 0; });
      if (!hit && (open == nullptr || s.size() < open->size())) open = &s;
    }
    if (open == nullptr) {
      best_ = std::min(best_, count);
      return;
    }
    if (count + 1 >= best_) return;
    for (std::size_t v : *open) {
      chosen[v] = 1;
      search(chosen, count + 1);
      chosen[v] = 0;
    }
  }

  std::vector<std::vector<std::size_t>> supports_;
  std::size_t best_ = 0;
};

}  // namespace

std::size_t monomial_quotient_dim(const MonomialIdeal& ideal) {
  const std::size_t n = ideal.ring()->num_vars();
  std::vector<std::vector<std::size_t>> supports;
  for (const auto& g : ideal.generators()) {
    std::vector<std::size_t> s;
    for (std::size_t v = 0; v < n; ++v) {
      if (g[v] != 0) s.push_back(v);
    }
    // The unit ideal: k[vars]/(1) is the zero ring, reported as 0.
    if (s.empty()) return 0;
    supports.push_back(std::move(s));
  }
  return n - HittingSet(std::move(supports)).solve(n);
}

bool dim_is_zero(const Ideal& ideal, const Budget& budget) {
  const std::size_t n = ideal.ring()->num_vars();
  std::vector<char> has_pure_power(n, 0);
  for (const Poly& g : ideal.groebner_basis(budget)) {
    const auto lt = g.leading_exponents();
    std::size_t nonzero = 0, last = 0;
    for (std::size_t v = 0; v < n; ++v) {
      if (lt[v] != 0) {
        ++nonzero;
        last = v;
      }
    }
    if (nonzero == 0) return true;
    if (nonzero == 1) has_pure_power[last] = 1;
  }
  return std::all_of(has_pure_power.begin(), has_pure_power.end(), [](char c) { return c != 0; });
}

std::optional<unsigned> power_membership(const Poly& f, const Ideal& ideal, unsigned cap, const Budget& budget) {
  require_same_ring(f.ring(), ideal.ring());
  const auto& basis = ideal.groebner_basis(budget);
  Poly residue = Poly::constant(f.ring(), 1);
  for (unsigned N = 1; N <= cap; ++N) {
    residue = reduce(multiply(residue, f), basis);
    if (residue.is_zero()) return N;
  }
  return std::nullopt;
}

}  // namespace charp
