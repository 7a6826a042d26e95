#pragma once

// Certificate-producing replays of the F-regularity arguments for the ring T,
// the cross-diagonal quotients A3 and A4, the inductive splits, and the known
// F-purity facts about commutator ideals.

#include <optional>
#include <string_view>
#include <vector>

#include "charp/certificate.hpp"
#include "charp/commutator.hpp"

namespace charp {

/// Negative controls. kSignFlip flips the sign of one term of one generator;
/// the flipped variable is always a column of the Jacobian minor.
enum class Tamper { kNone, kSignFlip, kDropPrefactor, kWrongZeroing };

struct ReproOptions {
  Budget budget;
  Tamper tamper = Tamper::kNone;
};

Certificate repro_T(const std::vector<std::uint32_t>& primes, const ReproOptions& options = {});
Certificate repro_A3(const std::vector<std::uint32_t>& primes, const ReproOptions& options = {});
Certificate repro_A4(const std::vector<std::uint32_t>& primes, const ReproOptions& options = {});

/// n = 5 (split off one middle row and column) or n = 6 (split off two).
Certificate repro_theorem_splits(unsigned n);

/// sizes drawn from {2, 3, 4}.
Certificate repro_Bn_bookkeeping(const std::vector<unsigned>& sizes = {2, 3, 4});

/// Fedder check of one commutator family against its recorded truth value.
/// Throws std::invalid_argument when no truth value is recorded.
Certificate check_known_fpurity(IdealFamily family, std::size_t n, std::uint32_t p, const Budget& budget = {});

/// All recorded (family, n) cases at each prime.
Certificate known_fpurity_suite(const std::vector<std::uint32_t>& primes, const Budget& budget = {});

enum class Claim { kT, kA3, kA4, kSplits5, kSplits6, kBn, kKnownFPurity };

std::optional<Claim> parse_claim(std::string_view name);
std::string_view to_string(Claim claim);

/// Primes a claim accepts; empty when the claim ignores the characteristic.
std::vector<std::uint32_t> supported_primes(Claim claim);

/// Throws std::invalid_argument naming the first unusable prime.
void validate_primes(Claim claim, const std::vector<std::uint32_t>& primes);

/// Runs every (claim, prime) unit on up to `threads` workers. Output order
/// and content do not depend on `threads`.
std::vector<Certificate> run_claims(const std::vector<Claim>& claims, const std::vector<std::uint32_t>& primes,
                                    const ReproOptions& options, unsigned threads);

}  // namespace charp
