#include <stdexcept>

#include "charp/ring.hpp"

namespace charp {

std::string_view to_string(MonomialOrder order) {
  return order == MonomialOrder::kGrevlex ? "grevlex" : "lex";
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::optional<unsigned> log_base(std::uint64_t q, std::uint64_t p) {
  if (p < 2 || q == 0) return std::nullopt;
  unsigned e = 0;
  while (q % p == 0) {
    q /= p;
    ++e;
  }
  if (q != 1) return std::nullopt;
  return e;
}

RingCtx::RingCtx(std::uint32_t characteristic, std::vector<std::string> variables, MonomialOrder order,
                 std::uint32_t exponent_bound)
    : p_(characteristic), vars_(std::move(variables)), order_(order), bound_(exponent_bound) {
  if (p_ >= kMaxCharacteristic) {
    throw std::invalid_argument("characteristic " + std::to_string(p_) + " exceeds 2^20");
  }
  if (!is_prime(p_)) throw std::invalid_argument(std::to_string(p_) + " is not prime");
  if (bound_ == 0 || bound_ > 0xFFFF) throw std::invalid_argument("exponent bound must lie in 1..65535");
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (vars_[i].empty()) throw std::invalid_argument("empty variable name");
    if (!index_.emplace(vars_[i], i).second) {
      throw std::invalid_argument("duplicate variable name '" + vars_[i] + "'");
    }
  }
}

std::optional<std::size_t> RingCtx::index_of(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t RingCtx::require_index(std::string_view name) const {
  if (auto i = index_of(name)) return *i;
  throw std::invalid_argument("unknown variable '" + std::string(name) + "'");
}

Coeff RingCtx::reduce(std::int64_t value) const {
  std::int64_t r = value % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return static_cast<Coeff>(r);
}

Coeff RingCtx::pow(Coeff a, std::uint64_t e) const {
  Coeff result = 1 % p_;
  Coeff base = a;
  while (e != 0) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

Coeff RingCtx::inv(Coeff a) const {
  if (a == 0) throw std::domain_error("inverse of zero");
  return pow(a, p_ - 2);
}

std::int64_t RingCtx::balanced(Coeff a) const {
  return a > p_ / 2 ? static_cast<std::int64_t>(a) - p_ : static_cast<std::int64_t>(a);
}

int RingCtx::compare(const Exponent* a, const Exponent* b) const {
  const auto& k = simd::active();
  const std::size_t n = vars_.size();
  if (order_ == MonomialOrder::kGrevlex) {
    const std::uint64_t da = k.total_degree(a, n);
    const std::uint64_t db = k.total_degree(b, n);
    if (da != db) return da > db ? 1 : -1;
    const std::size_t i = k.last_difference(a, b, n);
    if (i == n) return 0;
    return a[i] < b[i] ? 1 : -1;
  }
  const std::size_t i = k.first_difference(a, b, n);
  if (i == n) return 0;
  return a[i] > b[i] ? 1 : -1;
}

bool RingCtx::same_as(const RingCtx& other) const {
  return this == &other ||
         (p_ == other.p_ && order_ == other.order_ && bound_ == other.bound_ && vars_ == other.vars_);
}

Ring make_ring(std::uint32_t characteristic, std::vector<std::string> variables, MonomialOrder order,
               std::uint32_t exponent_bound) {
  return std::make_shared<const RingCtx>(characteristic, std::move(variables), order, exponent_bound);
}

void require_same_ring(const Ring& a, const Ring& b) {
  if (a == b) return;
  if (!a || !b || !a->same_as(*b)) throw RingMismatch("operands belong to different rings");
}

}  // namespace charp
