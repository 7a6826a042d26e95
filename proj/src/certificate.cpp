#include "charp/certificate.hpp"

#include "json.hpp"

namespace charp {

using Json = nlohmann::ordered_json;

std::string_view to_string(StepKind kind) { return kind == StepKind::kAssumption ? "assumption" : "computation"; }

std::string_view to_string(Overall overall) {
  switch (overall) {
    case Overall::kVerified:
      return "verified";
    case Overall::kFailed:
      return "failed";
    case Overall::kInconclusive:
      return "inconclusive";
  }
  return "?";
}

Overall Certificate::overall() const {
  bool inconclusive = steps.empty();
  for (const CertStep& s : steps) {
    if (s.status == CriterionStatus::kFails) return Overall::kFailed;
    if (s.status == CriterionStatus::kInconclusive) inconclusive = true;
  }
  return inconclusive ? Overall::kInconclusive : Overall::kVerified;
}

std::string write_certificate(const CertificateDocument& doc, bool include_perf) {
  Json root;
  root["schemaVersion"] = "1";
  root["toolVersion"] = doc.tool_version;
  Json claims = Json::array();
  for (const Certificate& c : doc.claims) {
    Json jc;
    jc["claimId"] = c.claim_id;
    jc["title"] = c.title;
    jc["characteristics"] = c.characteristics;
    jc["monomialOrder"] = c.monomial_order;
    jc["overall"] = to_string(c.overall());
    Json steps = Json::array();
    for (const CertStep& s : c.steps) {
      Json js;
      js["id"] = s.id;
      js["description"] = s.description;
      js["kind"] = to_string(s.kind);
      js["status"] = to_string(s.status);
      js["witness"] = s.witness;
      js["anchor"] = s.anchor;
      js["notes"] = s.notes;
      steps.push_back(std::move(js));
    }
    jc["steps"] = std::move(steps);
    jc["notes"] = c.notes;
    claims.push_back(std::move(jc));
  }
  root["claims"] = std::move(claims);

  if (include_perf) {
    Json perf = Json::array();
    for (const Certificate& c : doc.claims) {
      Json jc;
      jc["claimId"] = c.claim_id;
      jc["seconds"] = c.seconds;
      Json steps = Json::array();
      for (const CertStep& s : c.steps) steps.push_back(Json{{"id", s.id}, {"seconds", s.seconds}});
      jc["steps"] = std::move(steps);
      perf.push_back(std::move(jc));
    }
    root["perf"] = std::move(perf);
  }
  return root.dump(2) + "\n";
}

int exit_status(const CertificateDocument& doc) {
  bool inconclusive = false;
  for (const Certificate& c : doc.claims) {
    const Overall o = c.overall();
    if (o == Overall::kFailed) return 1;
    if (o == Overall::kInconclusive) inconclusive = true;
  }
  return inconclusive ? 2 : 0;
}

}  // namespace charp
