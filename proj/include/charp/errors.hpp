#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace charp {

/// Operands built over different ring contexts were combined.
class RingMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An exponent left the configured bound.
class ExponentOverflow : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// A resource cap was hit. Callers report this as "inconclusive", never as a
/// mathematical answer.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Resource caps shared by the Groebner engine and the product evaluator.
struct Budget {
  std::uint64_t max_pair_reductions = 1'000'000;
  std::uint64_t max_terms = 20'000'000;
};

}  // namespace charp
