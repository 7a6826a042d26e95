#pragma once

// Open-addressing accumulator mapping monomials to coefficients. Used by
// every operation that produces terms out of order.

#include <algorithm>
#include <cstring>
#include <numeric>
#include <vector>

#include "charp/ring.hpp"

namespace charp::detail {

inline std::uint64_t hash_exponents(const Exponent* e, std::size_t n) {
  std::uint64_t h = 0x9E3779B97F4A7C15ull ^ n;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    std::uint64_t w;
    std::memcpy(&w, e + i, sizeof w);
    h ^= w;
    h *= 0xBF58476D1CE4E5B9ull;
    h ^= h >> 31;
  }
  for (; i < n; ++i) {
    h ^= e[i];
    h *= 0x94D049BB133111EBull;
    h ^= h >> 29;
  }
  return h;
}

class TermTable {
 public:
  TermTable(const RingCtx& ring, std::size_t expected) : ring_(ring), n_(ring.num_vars()) {
    std::size_t cap = 16;
    while (cap < expected * 2) cap <<= 1;
    slots_.assign(cap, 0);
    coeffs_.reserve(expected);
    exps_.reserve(expected * n_);
  }

  /// Adds c * x^e. c must already be reduced mod p.
  void add(const Exponent* e, Coeff c) {
    if (c == 0) return;
    const std::uint64_t h = hash_exponents(e, n_);
    std::size_t mask = slots_.size() - 1;
    std::size_t pos = h & mask;
    while (true) {
      const std::uint32_t s = slots_[pos];
      if (s == 0) break;
      const std::size_t idx = s - 1;
      if (hashes_[idx] == h && (n_ == 0 || std::memcmp(exps_.data() + idx * n_, e, n_ * sizeof(Exponent)) == 0)) {
        coeffs_[idx] = ring_.add(coeffs_[idx], c);
        return;
      }
      pos = (pos + 1) & mask;
    }
    slots_[pos] = static_cast<std::uint32_t>(coeffs_.size() + 1);
    coeffs_.push_back(c);
    hashes_.push_back(h);
    exps_.insert(exps_.end(), e, e + n_);
    if (coeffs_.size() * 2 > slots_.size()) grow();
  }

  /// Entries ever inserted (cancelled ones included).
  std::size_t entries() const { return coeffs_.size(); }

  Poly to_poly(Ring ring) && {
    std::vector<std::uint32_t> order;
    order.reserve(coeffs_.size());
    for (std::uint32_t i = 0; i < coeffs_.size(); ++i) {
      if (coeffs_[i] != 0) order.push_back(i);
    }
    const Exponent* base = exps_.data();
    const std::size_t n = n_;
    const RingCtx& r = ring_;
    std::sort(order.begin(), order.end(),
              [&](std::uint32_t a, std::uint32_t b) { return r.compare(base + a * n, base + b * n) > 0; });
    std::vector<Coeff> coeffs;
    std::vector<Exponent> exps;
    coeffs.reserve(order.size());
    exps.reserve(order.size() * n);
    for (std::uint32_t i : order) {
      coeffs.push_back(coeffs_[i]);
      exps.insert(exps.end(), base + i * n, base + (i + 1) * n);
    }
    return Poly::from_sorted(std::move(ring), std::move(coeffs), std::move(exps));
  }

 private:
  void grow() {
    std::vector<std::uint32_t> next(slots_.size() * 2, 0);
    const std::size_t mask = next.size() - 1;
    for (std::size_t idx = 0; idx < coeffs_.size(); ++idx) {
      std::size_t pos = hashes_[idx] & mask;
      while (next[pos] != 0) pos = (pos + 1) & mask;
      next[pos] = static_cast<std::uint32_t>(idx + 1);
    }
    slots_.swap(next);
  }

  const RingCtx& ring_;
  std::size_t n_;
  std::vector<std::uint32_t> slots_;
  std::vector<Coeff> coeffs_;
  std::vector<std::uint64_t> hashes_;
  std::vector<Exponent> exps_;
};

}  // namespace charp::detail
