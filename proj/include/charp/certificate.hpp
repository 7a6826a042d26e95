#pragma once

// Verification records and their canonical JSON form.

#include <string>
#include <string_view>
#include <vector>

#include "charp/fsing.hpp"

namespace charp {

enum class StepKind { kComputation, kAssumption };
enum class Overall { kVerified, kFailed, kInconclusive };

std::string_view to_string(StepKind kind);
std::string_view to_string(Overall overall);

struct CertStep {
  std::string id;
  std::string description;
  StepKind kind = StepKind::kComputation;
  CriterionStatus status = CriterionStatus::kInconclusive;
  std::string witness;
  /// Formula the step reproduces, or empty.
  std::string anchor;
  std::vector<std::string> notes;
  double seconds = 0;
};

struct Certificate {
  std::string claim_id;
  std::string title;
  std::vector<std::uint32_t> characteristics;
  std::string monomial_order = "grevlex";
  std::vector<CertStep> steps;
  std::vector<std::string> notes;
  double seconds = 0;

  /// Verified iff every step holds; failed if some step fails.
  Overall overall() const;
};

struct CertificateDocument {
  std::string tool_version;
  std::vector<Certificate> claims;
};

/// Canonical JSON: fixed field order, LF endings, trailing newline. Timings
/// appear only under "perf" and only when requested.
std::string write_certificate(const CertificateDocument& doc, bool include_perf = false);

/// 0 all verified, 2 some inconclusive and none failed, 1 otherwise.
int exit_status(const CertificateDocument& doc);

}  // namespace charp
