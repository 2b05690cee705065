#pragma once

// Invariant suite run by `hornforge verify`: instance-level checks (exact
// cover, tightening, refinement, weak duality) and, per construction, size
// identities, closure and exclusivity properties, cover extraction from a
// heuristic and (when small enough) an exactly minimized representation.

#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "hornforge/reduction_cnf.hpp"
#include "hornforge_cli/config.hpp"

namespace hornforge::cli {

// deviation: a published bound the construction exceeds; reported, not failed.
// warn: an empirical property that did not hold; logged, not failed.
enum class Status { pass, fail, skip, deviation, warn };
const char* status_name(Status s);

struct Check {
  std::string name;
  Status status = Status::pass;
  std::string provenance;  // where the expectation comes from
  nlohmann::json measured;
  nlohmann::json expected;
  std::string note;
  nlohmann::json counterexample;  // set for failures
};

struct VerificationReport {
  std::vector<Check> checks;

  bool ok() const;
  std::size_t count(Status s) const;
  nlohmann::json to_json() const;
};

struct VerifyRequest {
  const LcInstance* instance = nullptr;  // refined or not; refined on demand
  std::optional<Construction> construction;  // unset: both constructions
  std::size_t t = 1;
  std::optional<std::size_t> d_override;  // build_cnf only
  const HornCnf* formula = nullptr;  // compared against the rebuilt artifact
};

VerificationReport run_verification(const VerifyRequest& req, const Limits& limits);

}  // namespace hornforge::cli
