#pragma once

// Bitmask forward chaining for formulas over at most 64 variables. Used by the
// exhaustive routines (prime implicate enumeration, all-subsets equivalence,
// exact minimization) where the same small formula is chained millions of
// times.

#include <cstdint>
#include <span>
#include <vector>

#include "hornforge/horn.hpp"

namespace hornforge {

using Mask = std::uint64_t;

struct MaskClause {
  Mask body = 0;
  Mask head = 0;  // single bit
};

inline Mask bit(VarId v) { return Mask{1} << v; }

Mask to_mask(std::span<const VarId> vars);
VarSet from_mask(Mask m);
MaskClause to_mask_clause(const Clause& c);

// Throws ResourceError when the formula has more than 64 variables.
std::vector<MaskClause> to_mask_clauses(const HornCnf& cnf);

// Repeated passes until no clause fires.
inline Mask mask_closure(std::span<const MaskClause> clauses, Mask query) {
  Mask cur = query;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const MaskClause& c : clauses) {
      if ((c.body & ~cur) == 0 && (cur & c.head) == 0) {
        cur |= c.head;
        changed = true;
      }
    }
  }
  return cur;
}

// F(U) for every U over n variables, indexed by the subset mask. n <= 24.
std::vector<Mask> closure_table(std::span<const MaskClause> clauses, std::size_t n);

}  // namespace hornforge
