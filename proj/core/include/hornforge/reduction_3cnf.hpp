#pragma once

// Label Cover -> pure Horn 3-CNF. Same variables and families (a), (c), (e)
// as build_cnf with d = 1 + r*lambda + s*lambda' fixed. The long clauses are
// cubified:
//
//   (b1) dg(y) <= 2: the (b) clause as is.
//   (b2..b4) dg(y) >= 3: per (x,y), l', i a linked list over N(y) =
//        <z_1, ..., z_dg> (ascending vertex id) through fresh nodes
//        e[beta,x,y,l',i], beta in [dg-2]:
//          e(z_1,y,l',i) & e(z_2,y,l',i) -> e(1,x,y,l',i)
//          e(z_{b+2},y,l',i) & e(b,x,y,l',i) -> e(b+1,x,y,l',i)
//          e(z_dg,y,l',i) & e(dg-2,x,y,l',i) -> e(x,y,i)
//   (d1) per i, a complete binary tree in array layout over node ids
//        1..2m-1: e(2k,i) & e(2k+1,i) -> e(k,i), k in [m-1]. Leaves
//        k = m..2m-1 alias e(x,y,i) of the (k-m+1)-th edge; internal nodes
//        are fresh variables e[k,i].
//   (d2) e(1,a) & e(1,a+1) -> u(l_a), a in [d-1], labels chained as x-labels
//        by (vertex, label) then y-labels by (vertex, label).
//
// Families are emitted in the order a, b1, b2, b3, b4, c, d1, d2, e.
// Variables: u, e(x,y,i), e(x,y,l',i), list nodes, tree nodes, v.

#include <map>

#include "hornforge/reduction_cnf.hpp"

namespace hornforge {

// Throws InputError for unrefined instances or t == 0.
ReductionArtifact build_3cnf(const LcInstance& inst, std::size_t t);

// degree -> number of clauses
std::map<std::size_t, std::size_t> degree_histogram(const HornCnf& cnf);

struct LiteralRelation {
  std::size_t clauses = 0;
  std::size_t literals = 0;
  Rational ratio;  // literals / clauses, 0 for the empty CNF
};

// Throws InvariantError unless 2|cnf|_c <= |cnf|_l <= 3|cnf|_c.
LiteralRelation literal_count_relation(const HornCnf& cnf);

// Counts produced by build_3cnf, derived from the construction.
struct Cnf3Sizes {
  std::size_t phi_c = 0, phi_v = 0, psi_c = 0, psi_v = 0;
  std::map<std::string, std::size_t> family_counts;
  std::size_t b_tilde = 0;  // b1 + b2 + b3 + b4 = d lambda' sum_E (dg(y) - 1)
  std::size_t d_tilde = 0;  // d1 + d2 = d(m-1) + d-1
};
Cnf3Sizes cnf3_exact_sizes(const LcInstance& inst, std::size_t t);

// The published size bounds, taken verbatim:
//   d(pi + 2m lambda' + 2m - 1) - 1 <= |Phi|_c - t(r lambda + s lambda') <= d(pi + m^2 lambda' + 4m)
//   t <= |Phi|_v <= t + dm(lambda' + 2) + m^2 lambda'
// and the same for Psi with t = 0.
struct Cnf3StatedBounds {
  std::size_t clause_lower = 0, clause_upper = 0;  // on |Phi|_c - t(r lambda + s lambda') and |Psi|_c
  std::size_t phi_v_lower = 0, phi_v_upper = 0;
  std::size_t psi_v_upper = 0;
};
Cnf3StatedBounds cnf3_stated_bounds(const LcInstance& inst, std::size_t t);

// Variable bound with the list-node term scaled by d:
//   |Phi|_v <= t + dm(lambda' + 2) + d m^2 lambda'
std::size_t cnf3_corrected_var_bound(const LcInstance& inst, std::size_t t);

// Same contract as extract_covers.
Extraction extract_covers_3cnf(const ReductionArtifact& art, const HornCnf& rep);

}  // namespace hornforge
