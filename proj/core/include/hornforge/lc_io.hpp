#pragma once

// Label Cover text format:
//
//   X: x1 x2 x3
//   Y: y
//   LX: l1 l2           (refined: one "LX <x>: <labels>" line per x-vertex)
//   LY: l1' l2'         (refined: one "LY <y>: <labels>" line per y-vertex)
//   E:
//   x1 y
//   x2 y
//   PI x1 y: l1 l1' l1 l2'
//
// A line containing ':' starts a section; the tokens of a section may spill
// onto the following lines. E and PI tokens are read pairwise. `#` starts a
// comment. Every listed edge needs a PI section. JSON mirrors the same data
// under schema "hornforge.lc/1".

#include <nlohmann/json.hpp>
#include <string>
#include <string_view>

#include "hornforge/label_cover.hpp"

namespace hornforge {

inline constexpr const char* kLcSchema = "hornforge.lc/1";

// Throws InputError with a "line L, column C" diagnostic.
LcInstance parse_lc(std::string_view text);
std::string print_lc(const LcInstance& inst);

nlohmann::json lc_to_json(const LcInstance& inst);
LcInstance lc_from_json(const nlohmann::json& j);

// {"x": {"x1": ["l1"], ...}, "y": {"y": ["l2'"], ...}} by name. Vertices
// missing from the object get an empty set.
nlohmann::json labeling_to_json(const LcInstance& inst, const Labeling& f);
Labeling labeling_from_json(const LcInstance& inst, const nlohmann::json& j);

}  // namespace hornforge
