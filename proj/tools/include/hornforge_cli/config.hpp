#pragma once

#include <cstdint>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <string_view>

#include "hornforge/exact_oracle.hpp"

namespace hornforge::cli {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr const char* kReportSchema = "hornforge.report/1";

struct Limits {
  std::size_t max_vars = 12;
  std::size_t max_pi = 4096;
  std::uint64_t max_nodes = 20'000'000;
  // Largest variable count for all-subsets and resolution-closure checks.
  std::size_t fc_subset_cutoff = 12;

  ExactLimits exact() const { return {max_vars, max_pi, max_nodes}; }
};

// Parses "max_vars=10,max_nodes=1000" over `base`. Throws InputError on
// unknown keys or malformed numbers.
Limits parse_limits(std::string_view spec, Limits base = {});

// Defaults overridden by $HORNFORGE_LIMITS when set.
Limits limits_from_env();

struct RunConfig {
  std::string command;
  std::optional<std::uint64_t> seed;
  Limits limits;
  std::size_t t = 1;
  std::optional<std::size_t> d_override;
  std::string input = "-";
  std::string output = "-";
  std::string sidecar;
};

nlohmann::json to_json(const RunConfig& cfg);

// FNV-1a 64, rendered as "fnv1a64:<16 hex digits>".
std::string digest(std::string_view bytes);

}  // namespace hornforge::cli
