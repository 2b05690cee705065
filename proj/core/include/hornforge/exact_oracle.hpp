#pragma once

// Exact clause and literal minimization for tiny pure Horn functions.
//
// The ground set is the set of prime implicates. Both searches branch on an
// input clause B -> h that the partial selection S does not yet derive: some
// prime implicate with body inside F_S(B) and head outside it must be added.
// Branching picks the requirement with the fewest such candidates and
// excludes earlier siblings, so every subset is reached at most once. A
// variable v that heads some implicate (v in F(V \ {v})) must head a clause
// of every representation; the missing ones give the lower bound. The clause
// search deepens on the cardinality from that bound; the literal search is
// depth-first branch and bound seeded with minimize_heuristic. The witness
// is the first optimum in this fixed order.

#include <cstdint>

#include "hornforge/horn.hpp"

namespace hornforge {

struct ExactLimits {
  std::size_t max_vars = 12;
  std::size_t max_pi = 4096;
  std::uint64_t max_nodes = 20'000'000;
};

struct MinimizationResult {
  std::size_t tau = 0;
  std::size_t lambda = 0;
  HornCnf witness_tau;
  HornCnf witness_lambda;
  std::uint64_t nodes_explored = 0;
  std::size_t prime_implicate_count = 0;
};

// Throws ResourceError (with the node count so far) when a limit is hit.
MinimizationResult minimize_exact(const HornCnf& cnf, const ExactLimits& limits = {});

// Number of variables v with v in F(V \ {v}). Polynomial.
std::size_t tau_lower_bound_heads(const HornCnf& cnf);

}  // namespace hornforge
