#pragma once

// Text format for pure Horn CNFs:
//
//   vars: 3
//   names: a b c
//   # comment
//   a & b -> c
//
// `names:` fixes the id order and may be omitted on input, in which case ids
// follow first appearance and must account for exactly `vars` names. Lines
// starting with `#%` are metadata: ignored by the formula parser but kept so
// pipelines can carry provenance along. The printer always writes `names:`
// and normalized (id-sorted) bodies, so print(parse(print(x))) == print(x).

#include <string>
#include <string_view>
#include <vector>

#include "hornforge/horn.hpp"

namespace hornforge {

struct HornDocument {
  HornCnf cnf;
  std::vector<std::string> meta;  // `#%` lines without the prefix
};

// Throws InputError with a "line L, column C" diagnostic.
HornDocument parse_horn(std::string_view text, bool allow_empty_bodies = false);

std::string print_horn(const HornCnf& cnf, const std::vector<std::string>& meta = {});

std::string format_clause(const HornCnf& cnf, const Clause& c);

}  // namespace hornforge
