#include "hornforge_cli/config.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>

#include "hornforge/errors.hpp"

namespace hornforge::cli {

namespace {

std::uint64_t parse_count(std::string_view key, std::string_view value) {
  std::uint64_t n = 0;
  auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), n);
  if (ec != std::errc() || p != value.data() + value.size() || value.empty()) {
    throw InputError("limit '" + std::string(key) + "' needs a non-negative integer, got '" + std::string(value) + "'");
  }
  return n;
}

}  // namespace

Limits parse_limits(std::string_view spec, Limits base) {
  while (!spec.empty()) {
    const std::size_t comma = spec.find(',');
    std::string_view item = spec.substr(0, comma);
    spec = comma == std::string_view::npos ? std::string_view() : spec.substr(comma + 1);
    if (item.empty()) continue;
    const std::size_t eq = item.find('=');
    if (eq == std::string_view::npos) throw InputError("limit '" + std::string(item) + "' is not key=value");
    const std::string_view key = item.substr(0, eq);
    const std::uint64_t n = parse_count(key, item.substr(eq + 1));
    if (key == "max_vars") base.max_vars = n;
    else if (key == "max_pi") base.max_pi = n;
    else if (key == "max_nodes") base.max_nodes = n;
    else if (key == "fc_subset_cutoff") base.fc_subset_cutoff = n;
    else throw InputError("unknown limit '" + std::string(key) + "'");
  }
  return base;
}

Limits limits_from_env() {
  const char* env = std::getenv("HORNFORGE_LIMITS");
  return env ? parse_limits(env) : Limits{};
}

nlohmann::json to_json(const RunConfig& cfg) {
  nlohmann::json j;
  j["command"] = cfg.command;
  j["seed"] = cfg.seed ? nlohmann::json(*cfg.seed) : nlohmann::json(nullptr);
  j["limits"] = {{"max_vars", cfg.limits.max_vars},
                 {"max_pi", cfg.limits.max_pi},
                 {"max_nodes", cfg.limits.max_nodes},
                 {"fc_subset_cutoff", cfg.limits.fc_subset_cutoff}};
  j["t"] = cfg.t;
  j["d_override"] = cfg.d_override ? nlohmann::json(*cfg.d_override) : nlohmann::json(nullptr);
  j["outputs"] = {{"output", cfg.output}, {"sidecar", cfg.sidecar}};
  return j;
}

std::string digest(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string("fnv1a64:") + buf;
}

}  // namespace hornforge::cli
