#pragma once

// Buchberger's algorithm and the ideal-theoretic queries built on it.

#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "charp/ring.hpp"

namespace charp {

/// An ideal given by generators. The reduced Groebner basis is computed on
/// first request and cached; copies share the cache.
class Ideal {
 public:
  Ideal(Ring ring, std::vector<Poly> generators);

  const Ring& ring() const { return ring_; }
  const std::vector<Poly>& generators() const { return gens_; }

  /// Reduced Groebner basis in the ring's order. Throws BudgetExceeded.
  const std::vector<Poly>& groebner_basis(const Budget& budget = {}) const;
  bool has_cached_basis() const;

 private:
  struct Cache {
    std::mutex mutex;
    std::optional<std::vector<Poly>> basis;
  };

  Ring ring_;
  std::vector<Poly> gens_;
  std::shared_ptr<Cache> cache_;
};

struct BuchbergerStats {
  std::uint64_t pairs_considered = 0;
  std::uint64_t pairs_reduced = 0;
  std::uint64_t coprime_skips = 0;
  std::uint64_t chain_skips = 0;
};

/// Reduced Groebner basis: monic, inter-reduced, sorted by ascending leading
/// monomial. Throws BudgetExceeded once more than
/// budget.max_pair_reductions S-polynomials have been reduced.
std::vector<Poly> buchberger(const Ring& ring, const std::vector<Poly>& generators, const Budget& budget = {},
                             BuchbergerStats* stats = nullptr);

/// Remainder of f on division by `basis` (fully reduced).
Poly reduce(const Poly& f, const std::vector<Poly>& basis);

/// Remainder of f modulo the ideal's Groebner basis; zero iff f is in I.
Poly normal_form(const Poly& f, const Ideal& ideal, const Budget& budget = {});

bool contains(const Ideal& ideal, const Poly& f, const Budget& budget = {});

/// Same ideal (compares reduced Groebner bases).
bool same_ideal(const Ideal& a, const Ideal& b, const Budget& budget = {});

/// (g^q : g a generator of I).
Ideal bracket_power(const Ideal& ideal, std::uint64_t q);

/// (omega^(q-1)) + I^[q], with omega the product of the generators. Valid as
/// the colon ideal (I^[q] : I) only when the generators form a regular
/// sequence, which the caller vouches for.
Ideal ci_colon(const Ideal& ideal, std::uint64_t q);

/// Monomial ideal kept as a minimal generating antichain.
class MonomialIdeal {
 public:
  MonomialIdeal(Ring ring, std::vector<std::vector<Exponent>> generators);

  const Ring& ring() const { return ring_; }
  const std::vector<std::vector<Exponent>>& generators() const { return gens_; }
  bool contains(std::span<const Exponent> monomial) const;

 private:
  Ring ring_;
  std::vector<std::vector<Exponent>> gens_;
};

MonomialIdeal leading_monomial_ideal(const Ideal& ideal, const Budget& budget = {});

/// Krull dimension of k[vars]/M: the largest set of variables containing the
/// support of no generator.
std::size_t monomial_quotient_dim(const MonomialIdeal& ideal);

/// True iff the leading-term ideal contains a pure power of every variable.
bool dim_is_zero(const Ideal& ideal, const Budget& budget = {});

/// Smallest N in 1..cap with f^N in I, or nullopt.
std::optional<unsigned> power_membership(const Poly& f, const Ideal& ideal, unsigned cap = 8,
                                         const Budget& budget = {});

}  // namespace charp
