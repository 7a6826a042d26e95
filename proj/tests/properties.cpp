#include "properties.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>

#include "charp/commutator.hpp"
#include "charp/groebner.hpp"
#include "charp/parse.hpp"

namespace charp::props {

namespace {

template <class Check>
Report run(const std::string& name, std::uint64_t seed, std::size_t cases, Check&& check) {
  Report r{name, cases, 0, {}};
  Rng rng(seed);
  for (std::size_t i = 0; i < cases; ++i) {
    std::string why;
    bool ok = false;
    try {
      ok = check(rng, why);
    } catch (const std::exception& e) {
      why = std::string("exception: ") + e.what();
    }
    if (!ok) {
      if (r.failures++ == 0) r.first_failure = "case " + std::to_string(i) + ": " + why;
    }
  }
  return r;
}

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

/// Naive product by schoolbook expansion through the term list.
Poly naive_multiply(const Poly& a, const Poly& b) {
  std::vector<Poly::Term> terms;
  const RingCtx& ring = *a.ring();
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      std::vector<Exponent> e(ring.num_vars());
      for (std::size_t v = 0; v < e.size(); ++v) e[v] = a.exponents(i)[v] + b.exponents(j)[v];
      terms.push_back({ring.mul(a.coeff(i), b.coeff(j)), std::move(e)});
    }
  }
  return Poly::from_terms(a.ring(), std::move(terms));
}

Poly naive_truncate(const Poly& f, std::uint64_t q) {
  std::vector<Poly::Term> terms;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto e = f.exponents(i);
    if (std::all_of(e.begin(), e.end(), [&](Exponent x) { return x < q; })) {
      terms.push_back({f.coeff(i), std::vector<Exponent>(e.begin(), e.end())});
    }
  }
  return Poly::from_terms(f.ring(), std::move(terms));
}

Poly monomial_of(const Ring& ring, std::vector<Exponent> e) { return Poly::from_terms(ring, {{1, std::move(e)}}); }

/// S-polynomial computed from scratch.
Poly s_polynomial(const Poly& f, const Poly& g) {
  const Ring& ring = f.ring();
  const std::size_t n = ring->num_vars();
  std::vector<Exponent> l(n), uf(n), ug(n);
  for (std::size_t v = 0; v < n; ++v) {
    l[v] = std::max(f.leading_exponents()[v], g.leading_exponents()[v]);
    uf[v] = l[v] - f.leading_exponents()[v];
    ug[v] = l[v] - g.leading_exponents()[v];
  }
  const Coeff cf = ring->inv(f.leading_coeff());
  const Coeff cg = ring->inv(g.leading_coeff());
  return (monomial_of(ring, uf) * f).scaled(cf) - (monomial_of(ring, ug) * g).scaled(cg);
}

std::vector<std::vector<Exponent>> monomials_of_degree(std::size_t n, unsigned d) {
  std::vector<std::vector<Exponent>> out;
  std::vector<Exponent> e(n, 0);
  auto rec = [&](auto&& self, std::size_t v, unsigned left) -> void {
    if (v + 1 == n) {
      e[v] = static_cast<Exponent>(left);
      out.push_back(e);
      return;
    }
    for (unsigned k = 0; k <= left; ++k) {
      e[v] = static_cast<Exponent>(k);
      self(self, v + 1, left - k);
    }
  };
  rec(rec, 0, d);
  return out;
}

/// Rank over F_p by Gaussian elimination on dense rows.
std::size_t rank_mod_p(std::vector<std::vector<std::int64_t>> rows, std::int64_t p) {
  auto inv = [p](std::int64_t a) {
    std::int64_t r = 1, e = p - 2;
    a %= p;
    while (e) {
      if (e & 1) r = r * a % p;
      a = a * a % p;
      e >>= 1;
    }
    return r;
  };
  std::size_t rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][c] % p == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[rank]);
    const std::int64_t iv = inv(rows[rank][c]);
    for (auto& x : rows[rank]) x = x * iv % p;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][c] % p == 0) continue;
      const std::int64_t factor = rows[r][c];
      for (std::size_t k = 0; k < cols; ++k) rows[r][k] = ((rows[r][k] - factor * rows[rank][k]) % p + p) % p;
    }
    ++rank;
  }
  return rank;
}

std::vector<std::int64_t> dense(const Poly& f, const std::map<std::vector<Exponent>, std::size_t>& index) {
  std::vector<std::int64_t> row(index.size(), 0);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto e = f.exponents(i);
    row.at(index.at(std::vector<Exponent>(e.begin(), e.end()))) = f.coeff(i);
  }
  return row;
}

SymbolicMatrix random_matrix(const Ring& ring, Rng& rng, std::size_t n, std::size_t max_terms, unsigned max_degree) {
  SymbolicMatrix m(ring, n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) m(r, c) = random_poly(ring, rng, max_terms, max_degree);
  }
  return m;
}

}  // namespace

Ring random_ring(Rng& rng, std::size_t min_vars, std::size_t max_vars, const std::vector<std::uint32_t>& primes) {
  const std::size_t n = uniform(rng, min_vars, max_vars);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(std::string(1, static_cast<char>('a' + i)) + std::to_string(i));
  return make_ring(primes[uniform(rng, 0, primes.size() - 1)], std::move(names));
}

Poly random_poly(const Ring& ring, Rng& rng, std::size_t max_terms, unsigned max_degree, bool homogeneous) {
  const std::size_t n = ring->num_vars();
  const std::size_t terms = uniform(rng, 1, max_terms);
  std::vector<Poly::Term> out;
  for (std::size_t t = 0; t < terms; ++t) {
    std::vector<Exponent> e(n, 0);
    const unsigned degree = homogeneous ? max_degree : static_cast<unsigned>(uniform(rng, 0, max_degree));
    for (unsigned k = 0; k < degree; ++k) ++e[uniform(rng, 0, n - 1)];
    out.push_back({static_cast<Coeff>(uniform(rng, 1, ring->characteristic() - 1)), std::move(e)});
  }
  return Poly::from_terms(ring, std::move(out));
}

Report truncation_soundness(std::uint64_t seed, std::size_t cases) {
  return run("truncation soundness", seed, cases, [](Rng& rng, std::string& why) {
    const Ring ring = random_ring(rng, 1, 4, {2, 3, 5, 7});
    const std::uint64_t p = ring->characteristic();
    const std::uint64_t q = uniform(rng, 0, 1) ? p : p * p;
    const Poly a = random_poly(ring, rng, 8, 6);
    const Poly b = random_poly(ring, rng, 8, 6);
    const Poly fast = truncated_multiply(a, b, q);
    const Poly slow = naive_truncate(naive_multiply(a, b), q);
    if (fast != slow) {
      why = "(" + a.to_string() + ")*(" + b.to_string() + ") mod m^[" + std::to_string(q) + "]";
      return false;
    }
    if (truncate(fast, q) != fast) {
      why = "truncate not idempotent";
      return false;
    }
    return true;
  });
}

Report frobenius_powering(std::uint64_t seed, std::size_t cases) {
  return run("Frobenius-factored powering", seed, cases, [](Rng& rng, std::string& why) {
    const Ring ring = random_ring(rng, 1, 3, {2, 3, 5});
    const Poly f = random_poly(ring, rng, 3, 2);
    const std::uint64_t n = uniform(rng, 0, 12);
    Poly naive = Poly::constant(ring, 1);
    for (std::uint64_t k = 0; k < n; ++k) naive = naive_multiply(naive, f);
    if (power(f, n) != naive) {
      why = "(" + f.to_string() + ")^" + std::to_string(n);
      return false;
    }
    const std::uint64_t q = ring->characteristic() * ring->characteristic();
    if (power(f, n, q) != naive_truncate(naive, q)) {
      why = "(" + f.to_string() + ")^" + std::to_string(n) + " mod m^[" + std::to_string(q) + "]";
      return false;
    }
    const Poly frob = frobenius_power(f, 1);
    Poly fp = Poly::constant(ring, 1);
    for (std::uint64_t k = 0; k < ring->characteristic(); ++k) fp = naive_multiply(fp, f);
    if (frob != fp) {
      why = "frobenius of " + f.to_string();
      return false;
    }
    return true;
  });
}

Report groebner_s_pairs(std::uint64_t seed, std::size_t cases) {
  return run("Groebner S-pairs reduce to zero", seed, cases, [](Rng& rng, std::string& why) {
    const Ring ring = random_ring(rng, 2, 3, {2, 3, 5, 7, 32003});
    std::vector<Poly> gens;
    const std::size_t count = uniform(rng, 1, 3);
    for (std::size_t i = 0; i < count; ++i) gens.push_back(random_poly(ring, rng, 3, 3));
    const std::vector<Poly> basis = buchberger(ring, gens);
    for (const Poly& g : gens) {
      if (!reduce(g, basis).is_zero()) {
        why = "generator " + g.to_string() + " does not reduce to zero";
        return false;
      }
    }
    for (std::size_t i = 0; i < basis.size(); ++i) {
      for (std::size_t j = i + 1; j < basis.size(); ++j) {
        if (!reduce(s_polynomial(basis[i], basis[j]), basis).is_zero()) {
          why = "S(" + basis[i].to_string() + ", " + basis[j].to_string() + ") does not reduce to zero";
          return false;
        }
      }
    }
    return true;
  });
}

Report membership_oracle(std::uint64_t seed, std::size_t cases) {
  return run("membership vs linear algebra", seed, cases, [](Rng& rng, std::string& why) {
    const Ring ring = random_ring(rng, 1, 3, {2, 3, 5, 7});
    const std::size_t n = ring->num_vars();
    std::vector<Poly> gens;
    const std::size_t count = uniform(rng, 1, 3);
    for (std::size_t i = 0; i < count; ++i) {
      gens.push_back(random_poly(ring, rng, 3, static_cast<unsigned>(uniform(rng, 1, 2)), true));
    }
    const unsigned d = static_cast<unsigned>(uniform(rng, 2, 3));
    // Candidate: a random combination of generators in degree d, perturbed
    // half of the time.
    Poly f(ring);
    for (const Poly& g : gens) {
      const unsigned dg = static_cast<unsigned>(g.total_degree());
      if (dg <= d) f = f + random_poly(ring, rng, 3, d - dg, true) * g;
    }
    if (uniform(rng, 0, 1)) f = f + random_poly(ring, rng, 2, d, true);

    const auto monos = monomials_of_degree(n, d);
    std::map<std::vector<Exponent>, std::size_t> index;
    for (const auto& m : monos) index.emplace(m, index.size());
    std::vector<std::vector<std::int64_t>> rows;
    for (const Poly& g : gens) {
      const unsigned dg = static_cast<unsigned>(g.total_degree());
      if (dg > d) continue;
      for (const auto& m : monomials_of_degree(n, d - dg)) rows.push_back(dense(monomial_of(ring, m) * g, index));
    }
    const std::int64_t p = ring->characteristic();
    const std::size_t base = rank_mod_p(rows, p);
    rows.push_back(dense(f, index));
    const bool oracle = rank_mod_p(rows, p) == base;
    const bool got = contains(Ideal(ring, gens), f);
    if (oracle != got) {
      why = f.to_string() + (oracle ? " should" : " should not") + " lie in the ideal";
      return false;
    }
    return true;
  });
}

Report commutator_laws(std::uint64_t seed, std::size_t cases) {
  return run("commutator trace and antisymmetry", seed, cases, [](Rng& rng, std::string& why) {
    const Ring ring = random_ring(rng, 2, 4, {2, 3, 5, 32003});
    const std::size_t n = uniform(rng, 1, 5);
    const SymbolicMatrix x = random_matrix(ring, rng, n, 2, 2);
    const SymbolicMatrix y = random_matrix(ring, rng, n, 2, 2);
    const SymbolicMatrix xy = commutator(x, y);
    if (!trace(xy).is_zero()) {
      why = "nonzero trace for n = " + std::to_string(n);
      return false;
    }
    const SymbolicMatrix yx = commutator(y, x);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) {
        if (xy(r, c) != -yx(r, c)) {
          why = "antisymmetry fails at (" + std::to_string(r + 1) + ", " + std::to_string(c + 1) + ")";
          return false;
        }
      }
    }
    return true;
  });
}

Report determinant_oracle(std::uint64_t seed, std::size_t cases) {
  return run("determinant vs permutation expansion", seed, cases, [](Rng& rng, std::string& why) {
    const Ring ring = random_ring(rng, 2, 4, {2, 3, 5, 32003});
    SymbolicMatrix m = random_matrix(ring, rng, 3, 2, 2);
    // Sprinkle zeros so the sparsest-line choice varies.
    for (std::size_t k = uniform(rng, 0, 4); k > 0; --k) m(uniform(rng, 0, 2), uniform(rng, 0, 2)) = Poly(ring);
    std::array<std::size_t, 3> perm{0, 1, 2};
    Poly oracle(ring);
    do {
      std::size_t inversions = 0;
      for (std::size_t a = 0; a < 3; ++a) {
        for (std::size_t b = a + 1; b < 3; ++b) inversions += perm[a] > perm[b];
      }
      Poly term = naive_multiply(naive_multiply(m(0, perm[0]), m(1, perm[1])), m(2, perm[2]));
      oracle = inversions % 2 ? oracle - term : oracle + term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    const Poly got = determinant(m);
    if (got != oracle) {
      why = "det " + got.to_string() + " vs " + oracle.to_string();
      return false;
    }
    return true;
  });
}

Report parser_round_trip(std::uint64_t seed, std::size_t cases) {
  return run("parser round trip", seed, cases, [](Rng& rng, std::string& why) {
    const Ring ring = random_ring(rng, 1, 5, {2, 3, 5, 7, 101, 32003});
    const Poly f = uniform(rng, 0, 9) == 0 ? Poly(ring) : random_poly(ring, rng, 6, 5);
    const std::string text = f.to_string();
    const Poly back = parse_poly(ring, text);
    if (back != f || back.to_string() != text) {
      why = "'" + text + "' parsed as '" + back.to_string() + "'";
      return false;
    }
    return true;
  });
}

std::vector<Report> run_all(std::uint64_t seed, std::size_t cases) {
  return {truncation_soundness(seed, cases), frobenius_powering(seed + 1, cases), groebner_s_pairs(seed + 2, cases),
          membership_oracle(seed + 3, cases), commutator_laws(seed + 4, cases), determinant_oracle(seed + 5, cases),
          parser_round_trip(seed + 6, cases)};
}

}  // namespace charp::props
