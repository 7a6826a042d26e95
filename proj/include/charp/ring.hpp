#pragma once

// Sparse multivariate polynomials over a prime field F_p.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "charp/errors.hpp"
#include "charp/simd/kernels.hpp"

namespace charp {

using Coeff = std::uint32_t;
using Exponent = simd::Exponent;

enum class MonomialOrder { kGrevlex, kLex };

std::string_view to_string(MonomialOrder order);

bool is_prime(std::uint64_t n);

/// Returns e with p^e == q, or nullopt when q is not a positive power of p
/// (q == 1 counts as p^0).
std::optional<unsigned> log_base(std::uint64_t q, std::uint64_t p);

/// Immutable ring descriptor: F_p[vars] with a monomial order. Shared by
/// every polynomial built over it.
class RingCtx {
 public:
  static constexpr std::uint32_t kMaxCharacteristic = 1u << 20;
  static constexpr std::uint32_t kDefaultExponentBound = 0xFFFF;

  RingCtx(std::uint32_t characteristic, std::vector<std::string> variables,
          MonomialOrder order = MonomialOrder::kGrevlex,
          std::uint32_t exponent_bound = kDefaultExponentBound);

  std::uint32_t characteristic() const { return p_; }
  const std::vector<std::string>& variables() const { return vars_; }
  std::size_t num_vars() const { return vars_.size(); }
  MonomialOrder order() const { return order_; }
  std::uint32_t exponent_bound() const { return bound_; }

  std::optional<std::size_t> index_of(std::string_view name) const;
  /// Throws std::invalid_argument for names outside the ring.
  std::size_t require_index(std::string_view name) const;

  Coeff reduce(std::int64_t value) const;
  Coeff add(Coeff a, Coeff b) const { return a + b >= p_ ? a + b - p_ : a + b; }
  Coeff sub(Coeff a, Coeff b) const { return a >= b ? a - b : a + p_ - b; }
  Coeff neg(Coeff a) const { return a == 0 ? 0 : p_ - a; }
  Coeff mul(Coeff a, Coeff b) const {
    return static_cast<Coeff>((std::uint64_t{a} * b) % p_);
  }
  Coeff pow(Coeff a, std::uint64_t e) const;
  Coeff inv(Coeff a) const;
  /// Balanced representative in (-p/2, p/2], used for "up to sign" checks.
  std::int64_t balanced(Coeff a) const;

  /// Three-way comparison in the ring's monomial order (>0 when a > b).
  int compare(const Exponent* a, const Exponent* b) const;

  /// Structural equality (characteristic, variables, order, bound).
  bool same_as(const RingCtx& other) const;

 private:
  std::uint32_t p_;
  std::vector<std::string> vars_;
  std::unordered_map<std::string, std::size_t> index_;
  MonomialOrder order_;
  std::uint32_t bound_;
};

using Ring = std::shared_ptr<const RingCtx>;

Ring make_ring(std::uint32_t characteristic, std::vector<std::string> variables,
               MonomialOrder order = MonomialOrder::kGrevlex,
               std::uint32_t exponent_bound = RingCtx::kDefaultExponentBound);

/// Throws RingMismatch unless a and b denote the same ring.
void require_same_ring(const Ring& a, const Ring& b);

/// A polynomial in canonical form: terms strictly descending in the ring's
/// order, no zero coefficients, no repeated monomials.
class Poly {
 public:
  struct Term {
    Coeff coeff;
    std::vector<Exponent> exponents;
  };

  explicit Poly(Ring ring);

  static Poly zero(Ring ring) { return Poly(std::move(ring)); }
  static Poly constant(Ring ring, std::int64_t value);
  static Poly variable(Ring ring, std::string_view name);
  static Poly monomial(Ring ring, Coeff coeff, std::span<const Exponent> exponents);
  /// Canonicalises arbitrary terms: merges duplicates, drops zeros, sorts.
  static Poly from_terms(Ring ring, std::vector<Term> terms);
  /// Builds from already-canonical flat arrays (checked in debug builds).
  static Poly from_sorted(Ring ring, std::vector<Coeff> coeffs, std::vector<Exponent> exponents);

  const Ring& ring() const { return ring_; }
  std::size_t size() const { return coeffs_.size(); }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const;
  bool is_monomial() const { return coeffs_.size() == 1; }

  Coeff coeff(std::size_t i) const { return coeffs_[i]; }
  std::span<const Exponent> exponents(std::size_t i) const {
    return {exps_.data() + i * ring_->num_vars(), ring_->num_vars()};
  }
  const std::vector<Coeff>& coeffs() const { return coeffs_; }
  const std::vector<Exponent>& flat_exponents() const { return exps_; }

  Coeff leading_coeff() const { return coeffs_.front(); }
  std::span<const Exponent> leading_exponents() const { return exponents(0); }

  /// Coefficient of the given monomial (0 when absent).
  Coeff coefficient_of(std::span<const Exponent> exponents) const;
  std::uint64_t total_degree() const;
  bool is_homogeneous() const;
  /// Indices of variables that occur in some term.
  std::vector<std::size_t> support() const;

  Poly operator-() const;
  Poly scaled(Coeff c) const;
  Poly monic() const;

  bool operator==(const Poly& other) const;
  bool operator!=(const Poly& other) const { return !(*this == other); }

  /// `3*x11^2*y12 - x13 + 2`, balanced coefficients, "0" for zero.
  std::string to_string() const;

 private:
  Ring ring_;
  std::vector<Coeff> coeffs_;
  std::vector<Exponent> exps_;
};

Poly operator+(const Poly& a, const Poly& b);
Poly operator-(const Poly& a, const Poly& b);
Poly operator*(const Poly& a, const Poly& b);

Poly add(const Poly& a, const Poly& b);
Poly subtract(const Poly& a, const Poly& b);
Poly multiply(const Poly& a, const Poly& b);

/// a*b modulo m^[q]: terms with some exponent >= q are dropped as each
/// partial product is formed. q must be a power of the characteristic.
Poly truncated_multiply(const Poly& a, const Poly& b, std::uint64_t q);

/// Deletes every term with some exponent >= q.
Poly truncate(const Poly& f, std::uint64_t q);

/// f^(p^e), formed by scaling exponents (coefficients are Frobenius-fixed).
Poly frobenius_power(const Poly& f, unsigned e);

/// f^n, optionally modulo m^[q]. Uses the base-p digits of n:
/// f^n = prod_i Frob^i(f^(d_i)). 0^0 = 1.
Poly power(const Poly& f, std::uint64_t n, std::optional<std::uint64_t> q = std::nullopt);

/// Image value for a substituted variable; nullopt stands for 0.
using Bindings = std::map<std::string, std::optional<Poly>, std::less<>>;

/// Ring homomorphism into `target`: bound variables go to their images,
/// unbound ones to the same-named variable of `target`.
Poly substitute(const Poly& f, const Bindings& bindings, const Ring& target);
Poly substitute(const Poly& f, const Bindings& bindings);

/// Sets the named variables to zero (same ring).
Poly zero_variables(const Poly& f, std::span<const std::string> names);

Poly derivative(const Poly& f, std::string_view variable);

/// Writes `x11^2*y12`; empty string for the unit monomial.
std::string monomial_to_string(const RingCtx& ring, std::span<const Exponent> exponents);

}  // namespace charp
