#include <algorithm>
#include <cassert>
#include <sstream>
#include <stdexcept>

#include "charp/ring.hpp"
#include "term_table.hpp"

namespace charp {

namespace {

void require_power_of_characteristic(const RingCtx& ring, std::uint64_t q) {
  const auto e = log_base(q, ring.characteristic());
  if (!e || *e == 0) {
    throw std::invalid_argument(std::to_string(q) + " is not a positive power of the characteristic " +
                                std::to_string(ring.characteristic()));
  }
}

[[noreturn]] void overflow(const RingCtx& ring) {
  throw ExponentOverflow("exponent exceeds bound " + std::to_string(ring.exponent_bound()));
}

// Shared body of multiply / truncated_multiply. q == 0 means no truncation.
Poly multiply_impl(const Poly& a, const Poly& b, std::uint64_t q) {
  require_same_ring(a.ring(), b.ring());
  const RingCtx& ring = *a.ring();
  if (a.is_zero() || b.is_zero()) return Poly(a.ring());
  const std::size_t n = ring.num_vars();
  const auto& k = simd::active();
  detail::TermTable table(ring, std::min<std::size_t>(a.size() * b.size(), 1u << 20));
  std::vector<Exponent> scratch(n);
  const std::uint32_t bound = ring.exponent_bound();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Exponent* ea = a.flat_exponents().data() + i * n;
    const Coeff ca = a.coeff(i);
    for (std::size_t j = 0; j < b.size(); ++j) {
      const std::uint32_t top = k.add_max(ea, b.flat_exponents().data() + j * n, scratch.data(), n);
      if (q != 0 && top >= q) continue;
      if (top > bound) overflow(ring);
      table.add(scratch.data(), ring.mul(ca, b.coeff(j)));
    }
  }
  return std::move(table).to_poly(a.ring());
}

Poly merge(const Poly& a, const Poly& b, bool negate_b) {
  require_same_ring(a.ring(), b.ring());
  const RingCtx& ring = *a.ring();
  const std::size_t n = ring.num_vars();
  std::vector<Coeff> coeffs;
  std::vector<Exponent> exps;
  coeffs.reserve(a.size() + b.size());
  exps.reserve((a.size() + b.size()) * n);
  auto push = [&](Coeff c, std::span<const Exponent> e) {
    coeffs.push_back(c);
    exps.insert(exps.end(), e.begin(), e.end());
  };
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    int cmp;
    if (i == a.size()) {
      cmp = -1;
    } else if (j == b.size()) {
      cmp = 1;
    } else {
      cmp = ring.compare(a.exponents(i).data(), b.exponents(j).data());
    }
    if (cmp > 0) {
      push(a.coeff(i), a.exponents(i));
      ++i;
    } else if (cmp < 0) {
      push(negate_b ? ring.neg(b.coeff(j)) : b.coeff(j), b.exponents(j));
      ++j;
    } else {
      const Coeff c = negate_b ? ring.sub(a.coeff(i), b.coeff(j)) : ring.add(a.coeff(i), b.coeff(j));
      if (c != 0) push(c, a.exponents(i));
      ++i;
      ++j;
    }
  }
  return Poly::from_sorted(a.ring(), std::move(coeffs), std::move(exps));
}

// Frob^e applied to f, dropping terms that land in m^[q] when q != 0.
Poly frobenius_impl(const Poly& f, unsigned e, std::uint64_t q) {
  const RingCtx& ring = *f.ring();
  std::uint64_t factor = 1;
  for (unsigned i = 0; i < e; ++i) {
    factor *= ring.characteristic();
    if (factor > (std::uint64_t{1} << 40)) overflow(ring);
  }
  const std::size_t n = ring.num_vars();
  std::vector<Coeff> coeffs;
  std::vector<Exponent> exps;
  coeffs.reserve(f.size());
  exps.reserve(f.flat_exponents().size());
  std::vector<Exponent> scratch(n);
  for (std::size_t t = 0; t < f.size(); ++t) {
    bool dropped = false;
    for (std::size_t v = 0; v < n; ++v) {
      const std::uint64_t scaled = f.exponents(t)[v] * factor;
      if (q != 0 && scaled >= q) {
        dropped = true;
        break;
      }
      if (scaled > ring.exponent_bound()) overflow(ring);
      scratch[v] = static_cast<Exponent>(scaled);
    }
    if (dropped) continue;
    coeffs.push_back(f.coeff(t));
    exps.insert(exps.end(), scratch.begin(), scratch.end());
  }
  // Scaling every exponent by a constant preserves both supported orders.
  return Poly::from_sorted(f.ring(), std::move(coeffs), std::move(exps));
}

}  // namespace

Poly::Poly(Ring ring) : ring_(std::move(ring)) {
  if (!ring_) throw std::invalid_argument("polynomial needs a ring");
}

Poly Poly::constant(Ring ring, std::int64_t value) {
  Poly out(ring);
  const Coeff c = ring->reduce(value);
  if (c != 0) {
    out.coeffs_.push_back(c);
    out.exps_.assign(ring->num_vars(), 0);
  }
  return out;
}

Poly Poly::variable(Ring ring, std::string_view name) {
  const std::size_t idx = ring->require_index(name);
  std::vector<Exponent> e(ring->num_vars(), 0);
  e[idx] = 1;
  return monomial(std::move(ring), 1, e);
}

Poly Poly::monomial(Ring ring, Coeff coeff, std::span<const Exponent> exponents) {
  if (exponents.size() != ring->num_vars()) throw std::invalid_argument("exponent vector length mismatch");
  for (Exponent x : exponents) {
    if (x > ring->exponent_bound()) overflow(*ring);
  }
  Poly out(ring);
  coeff %= ring->characteristic();
  if (coeff != 0) {
    out.coeffs_.push_back(coeff);
    out.exps_.assign(exponents.begin(), exponents.end());
  }
  return out;
}

Poly Poly::from_terms(Ring ring, std::vector<Term> terms) {
  detail::TermTable table(*ring, terms.size());
  for (const Term& t : terms) {
    if (t.exponents.size() != ring->num_vars()) throw std::invalid_argument("exponent vector length mismatch");
    for (Exponent x : t.exponents) {
      if (x > ring->exponent_bound()) overflow(*ring);
    }
    table.add(t.exponents.data(), t.coeff % ring->characteristic());
  }
  return std::move(table).to_poly(std::move(ring));
}

Poly Poly::from_sorted(Ring ring, std::vector<Coeff> coeffs, std::vector<Exponent> exponents) {
  Poly out(std::move(ring));
  assert(exponents.size() == coeffs.size() * out.ring_->num_vars());
#ifndef NDEBUG
  for (std::size_t i = 0; i + 1 < coeffs.size(); ++i) {
    const std::size_t n = out.ring_->num_vars();
    assert(out.ring_->compare(exponents.data() + i * n, exponents.data() + (i + 1) * n) > 0);
  }
  for (Coeff c : coeffs) assert(c != 0 && c < out.ring_->characteristic());
#endif
  out.coeffs_ = std::move(coeffs);
  out.exps_ = std::move(exponents);
  return out;
}

bool Poly::is_constant() const {
  if (coeffs_.empty()) return true;
  if (coeffs_.size() != 1) return false;
  return std::all_of(exps_.begin(), exps_.end(), [](Exponent e) { return e == 0; });
}

Coeff Poly::coefficient_of(std::span<const Exponent> exponents) const {
  if (exponents.size() != ring_->num_vars()) throw std::invalid_argument("exponent vector length mismatch");
  std::size_t lo = 0, hi = size();
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    const int c = ring_->compare(this->exponents(mid).data(), exponents.data());
    if (c == 0) return coeffs_[mid];
    if (c > 0) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  return 0;
}

std::uint64_t Poly::total_degree() const {
  std::uint64_t d = 0;
  const auto& k = simd::active();
  for (std::size_t i = 0; i < size(); ++i) d = std::max(d, k.total_degree(exponents(i).data(), ring_->num_vars()));
  return d;
}

bool Poly::is_homogeneous() const {
  if (size() <= 1) return true;
  const auto& k = simd::active();
  const std::size_t n = ring_->num_vars();
  const std::uint64_t d = k.total_degree(exponents(0).data(), n);
  for (std::size_t i = 1; i < size(); ++i) {
    if (k.total_degree(exponents(i).data(), n) != d) return false;
  }
  return true;
}

std::vector<std::size_t> Poly::support() const {
  std::vector<std::size_t> out;
  const std::size_t n = ring_->num_vars();
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t i = 0; i < size(); ++i) {
      if (exps_[i * n + v] != 0) {
        out.push_back(v);
        break;
      }
    }
  }
  return out;
}

Poly Poly::operator-() const {
  Poly out = *this;
  for (Coeff& c : out.coeffs_) c = ring_->neg(c);
  return out;
}

Poly Poly::scaled(Coeff c) const {
  c %= ring_->characteristic();
  if (c == 0) return Poly(ring_);
  Poly out = *this;
  for (Coeff& x : out.coeffs_) x = ring_->mul(x, c);
  return out;
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return scaled(ring_->inv(leading_coeff()));
}

bool Poly::operator==(const Poly& other) const {
  if (ring_ != other.ring_ && !ring_->same_as(*other.ring_)) return false;
  return coeffs_ == other.coeffs_ && exps_ == other.exps_;
}

std::string monomial_to_string(const RingCtx& ring, std::span<const Exponent> exponents) {
  std::string out;
  for (std::size_t v = 0; v < exponents.size(); ++v) {
    if (exponents[v] == 0) continue;
    if (!out.empty()) out += '*';
    out += ring.variables()[v];
    if (exponents[v] > 1) {
      out += '^';
      out += std::to_string(exponents[v]);
    }
  }
  return out;
}

std::string Poly::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  for (std::size_t i = 0; i < size(); ++i) {
    // Balanced representative, so -1 prints as a sign.
    const std::int64_t c = ring_->balanced(coeffs_[i]);
    if (i == 0) {
      if (c < 0) out += '-';
    } else {
      out += c < 0 ? " - " : " + ";
    }
    const std::uint64_t mag = static_cast<std::uint64_t>(c < 0 ? -c : c);
    const std::string mono = monomial_to_string(*ring_, exponents(i));
    if (mono.empty()) {
      out += std::to_string(mag);
    } else {
      if (mag != 1) {
        out += std::to_string(mag);
        out += '*';
      }
      out += mono;
    }
  }
  return out;
}

Poly add(const Poly& a, const Poly& b) { return merge(a, b, false); }
Poly subtract(const Poly& a, const Poly& b) { return merge(a, b, true); }
Poly multiply(const Poly& a, const Poly& b) { return multiply_impl(a, b, 0); }

Poly operator+(const Poly& a, const Poly& b) { return add(a, b); }
Poly operator-(const Poly& a, const Poly& b) { return subtract(a, b); }
Poly operator*(const Poly& a, const Poly& b) { return multiply(a, b); }

Poly truncated_multiply(const Poly& a, const Poly& b, std::uint64_t q) {
  require_power_of_characteristic(*a.ring(), q);
  return multiply_impl(a, b, q);
}

Poly truncate(const Poly& f, std::uint64_t q) {
  require_power_of_characteristic(*f.ring(), q);
  const auto& k = simd::active();
  const std::size_t n = f.ring()->num_vars();
  std::vector<Coeff> coeffs;
  std::vector<Exponent> exps;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (k.max_exponent(f.exponents(i).data(), n) >= q) continue;
    coeffs.push_back(f.coeff(i));
    exps.insert(exps.end(), f.exponents(i).begin(), f.exponents(i).end());
  }
  return Poly::from_sorted(f.ring(), std::move(coeffs), std::move(exps));
}

Poly frobenius_power(const Poly& f, unsigned e) { return frobenius_impl(f, e, 0); }

Poly power(const Poly& f, std::uint64_t n, std::optional<std::uint64_t> q) {
  const RingCtx& ring = *f.ring();
  const std::uint64_t qq = q.value_or(0);
  if (q) require_power_of_characteristic(ring, *q);
  auto mul = [&](const Poly& a, const Poly& b) { return multiply_impl(a, b, qq); };

  Poly result = Poly::constant(f.ring(), 1);
  if (q) result = truncate(result, qq);
  const Poly base = q ? truncate(f, qq) : f;
  const std::uint64_t p = ring.characteristic();
  unsigned level = 0;
  while (n != 0) {
    const std::uint64_t digit = n % p;
    n /= p;
    if (digit != 0) {
      // base^digit by square-and-multiply, then lifted by Frob^level.
      Poly piece = Poly::constant(f.ring(), 1);
      Poly sq = base;
      for (std::uint64_t d = digit; d != 0; d >>= 1) {
        if (d & 1) piece = mul(piece, sq);
        if (d > 1) sq = mul(sq, sq);
      }
      result = mul(result, frobenius_impl(piece, level, qq));
      if (result.is_zero()) return result;
    }
    ++level;
  }
  return result;
}

Poly substitute(const Poly& f, const Bindings& bindings, const Ring& target) {
  const RingCtx& src = *f.ring();
  if (target->characteristic() != src.characteristic()) {
    throw RingMismatch("substitution target has characteristic " + std::to_string(target->characteristic()) +
                       ", source has " + std::to_string(src.characteristic()));
  }
  const std::size_t n = src.num_vars();
  enum class Kind { kZero, kRename, kPoly };
  struct Image {
    Kind kind = Kind::kRename;
    std::size_t index = 0;
    const Poly* poly = nullptr;
  };
  std::vector<Image> images(n);
  for (const auto& [name, image] : bindings) {
    const std::size_t v = src.require_index(name);
    if (!image) {
      images[v].kind = Kind::kZero;
    } else {
      require_same_ring(image->ring(), target);
      images[v].kind = Kind::kPoly;
      images[v].poly = &*image;
    }
  }
  bool monomial_map = true;
  for (std::size_t v = 0; v < n; ++v) {
    if (images[v].kind == Kind::kRename) {
      images[v].index = target->index_of(src.variables()[v]).value_or(SIZE_MAX);
    } else if (images[v].kind == Kind::kPoly) {
      monomial_map = false;
    }
  }
  auto require_target_var = [&](std::size_t v) {
    if (images[v].index == SIZE_MAX) {
      throw std::invalid_argument("variable '" + src.variables()[v] + "' has no image in the target ring");
    }
  };

  if (monomial_map) {
    detail::TermTable table(*target, f.size());
    std::vector<Exponent> scratch(target->num_vars());
    for (std::size_t t = 0; t < f.size(); ++t) {
      std::fill(scratch.begin(), scratch.end(), 0);
      bool dead = false;
      for (std::size_t v = 0; v < n; ++v) {
        const Exponent e = f.exponents(t)[v];
        if (e == 0) continue;
        if (images[v].kind == Kind::kZero) {
          dead = true;
          break;
        }
        require_target_var(v);
        const std::uint32_t s = std::uint32_t{scratch[images[v].index]} + e;
        if (s > target->exponent_bound()) overflow(*target);
        scratch[images[v].index] = static_cast<Exponent>(s);
      }
      if (!dead) table.add(scratch.data(), f.coeff(t));
    }
    return std::move(table).to_poly(target);
  }

  // General case: expand each term as a product of images.
  std::vector<std::map<Exponent, Poly>> power_cache(n);
  auto image_power = [&](std::size_t v, Exponent e) -> const Poly& {
    auto& cache = power_cache[v];
    auto it = cache.find(e);
    if (it != cache.end()) return it->second;
    return cache.emplace(e, power(*images[v].poly, e)).first->second;
  };
  Poly result(target);
  for (std::size_t t = 0; t < f.size(); ++t) {
    std::vector<Exponent> mono(target->num_vars(), 0);
    bool dead = false;
    for (std::size_t v = 0; v < n && !dead; ++v) {
      const Exponent e = f.exponents(t)[v];
      if (e == 0) continue;
      if (images[v].kind == Kind::kZero) {
        dead = true;
      } else if (images[v].kind == Kind::kRename) {
        require_target_var(v);
        const std::uint32_t s = std::uint32_t{mono[images[v].index]} + e;
        if (s > target->exponent_bound()) overflow(*target);
        mono[images[v].index] = static_cast<Exponent>(s);
      }
    }
    if (dead) continue;
    Poly term = Poly::monomial(target, f.coeff(t), mono);
    for (std::size_t v = 0; v < n && !term.is_zero(); ++v) {
      const Exponent e = f.exponents(t)[v];
      if (e != 0 && images[v].kind == Kind::kPoly) term = multiply(term, image_power(v, e));
    }
    result = add(result, term);
  }
  return result;
}

Poly substitute(const Poly& f, const Bindings& bindings) { return substitute(f, bindings, f.ring()); }

Poly zero_variables(const Poly& f, std::span<const std::string> names) {
  const RingCtx& ring = *f.ring();
  std::vector<std::size_t> idx;
  for (const auto& name : names) idx.push_back(ring.require_index(name));
  std::vector<Coeff> coeffs;
  std::vector<Exponent> exps;
  for (std::size_t t = 0; t < f.size(); ++t) {
    const auto e = f.exponents(t);
    if (std::any_of(idx.begin(), idx.end(), [&](std::size_t v) { return e[v] != 0; })) continue;
    coeffs.push_back(f.coeff(t));
    exps.insert(exps.end(), e.begin(), e.end());
  }
  return Poly::from_sorted(f.ring(), std::move(coeffs), std::move(exps));
}

Poly derivative(const Poly& f, std::string_view variable) {
  const RingCtx& ring = *f.ring();
  const std::size_t v = ring.require_index(variable);
  detail::TermTable table(ring, f.size());
  std::vector<Exponent> scratch(ring.num_vars());
  for (std::size_t t = 0; t < f.size(); ++t) {
    const auto e = f.exponents(t);
    if (e[v] == 0) continue;
    const Coeff c = ring.mul(f.coeff(t), static_cast<Coeff>(e[v] % ring.characteristic()));
    if (c == 0) continue;
    std::copy(e.begin(), e.end(), scratch.begin());
    --scratch[v];
    table.add(scratch.data(), c);
  }
  return std::move(table).to_poly(f.ring());
}

}  // namespace charp
