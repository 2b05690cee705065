#pragma once

// Pure Horn clauses and CNFs, forward chaining, and the reductions built on
// it (implicate tests, equivalence, resolution, prime/irredundant reduction,
// exclusive components).

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace hornforge {

using VarId = std::uint32_t;

// Sorted, duplicate-free list of variable ids.
using VarSet = std::vector<VarId>;

VarSet make_varset(std::vector<VarId> ids);

// Dense name <-> id mapping. Append-only.
class VarRegistry {
 public:
  // Returns the id of `name`, registering it if unseen.
  VarId intern(std::string_view name);
  // Registers a new name; throws InputError if it already exists.
  VarId add(std::string_view name);

  std::optional<VarId> find(std::string_view name) const;
  // Throws InputError for unknown names.
  VarId id(std::string_view name) const;
  const std::string& name(VarId id) const;

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }

  bool operator==(const VarRegistry& other) const { return names_ == other.names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, VarId> index_;
};

// body -> head. The body is kept sorted and duplicate-free; head is never in
// the body.
struct Clause {
  VarSet body;
  VarId head = 0;

  // Normalizes the body; throws InputError if head is in body.
  static Clause make(std::vector<VarId> body, VarId head);

  std::size_t degree() const { return body.size() + 1; }
  bool contains(VarId v) const;

  auto operator<=>(const Clause&) const = default;
  bool operator==(const Clause&) const = default;
};

struct ClauseHash {
  std::size_t operator()(const Clause& c) const noexcept;
};

class HornCnf {
 public:
  HornCnf() = default;
  explicit HornCnf(VarRegistry registry, bool allow_empty_bodies = false);

  const VarRegistry& registry() const { return registry_; }
  VarId var(std::string_view name) { return registry_.intern(name); }
  VarId id(std::string_view name) const { return registry_.id(name); }
  const std::string& name(VarId v) const { return registry_.name(v); }

  // Throws InputError on duplicates, unknown ids, or an empty body when those
  // are not allowed.
  void add(Clause c);
  void add(std::vector<VarId> body, VarId head) { add(Clause::make(std::move(body), head)); }
  // Same as add() but returns false instead of throwing on a duplicate.
  bool try_add(Clause c);

  bool contains(const Clause& c) const { return lookup_.count(c) != 0; }

  const std::vector<Clause>& clauses() const { return clauses_; }
  std::size_t num_vars() const { return registry_.size(); }
  std::size_t clause_count() const { return clauses_.size(); }
  std::size_t literal_count() const;
  bool allows_empty_bodies() const { return allow_empty_; }

  // Variables that occur in at least one clause.
  VarSet used_vars() const;

  // Same registry, no clauses.
  HornCnf empty_like() const { return HornCnf(registry_, allow_empty_); }

 private:
  void validate(const Clause& c) const;

  VarRegistry registry_;
  bool allow_empty_ = false;
  std::vector<Clause> clauses_;
  std::unordered_set<Clause, ClauseHash> lookup_;
};

// Rewrites `cnf` onto `target` by variable name. Throws InputError when a
// name of `cnf` is missing from `target`.
HornCnf remap_to(const HornCnf& cnf, const VarRegistry& target);

struct FcTrace {
  VarSet closure;
  // (clause index, variable added) in trigger order.
  std::vector<std::pair<std::size_t, VarId>> triggered;
};

// Reusable forward-chaining engine over one CNF. Keeps per-clause missing
// counters and resets only what a query touched, so a query costs time
// proportional to the part of the formula it reaches. Not thread-safe; use one
// instance per thread.
class ForwardChainer {
 public:
  explicit ForwardChainer(const HornCnf& cnf);

  // Clauses can be switched off (irredundancy scans, leave-one-out tests).
  void set_active(std::size_t clause, bool active) { active_[clause] = active ? 1 : 0; }
  bool is_active(std::size_t clause) const { return active_[clause] != 0; }

  // Least fixpoint of `query`; membership flags are written to `in_closure`
  // (resized to num_vars).
  void closure(std::span<const VarId> query, std::vector<char>& in_closure);
  VarSet closure(std::span<const VarId> query);
  FcTrace trace(std::span<const VarId> query);

  // True iff `target` is in the closure of `query`; stops as soon as it is.
  bool derives(std::span<const VarId> query, VarId target);

 private:
  template <typename OnTrigger>
  bool run(std::span<const VarId> query, std::optional<VarId> stop_at, OnTrigger&& on_trigger);

  std::size_t num_vars_;
  std::vector<VarId> heads_;
  std::vector<std::uint32_t> body_size_;
  std::vector<std::uint32_t> occ_offset_;
  std::vector<std::uint32_t> occ_;
  std::vector<std::uint32_t> empty_body_;
  std::vector<char> active_;

  // scratch
  std::vector<std::uint32_t> missing_;
  std::vector<std::uint32_t> touched_clauses_;
  std::vector<char> in_;
  std::vector<VarId> queue_;
};

// Throws InputError when a query id is out of range.
FcTrace forward_chain(const HornCnf& cnf, std::span<const VarId> query);

bool is_implicate(const HornCnf& cnf, const Clause& clause);

// Every clause of each side is an implicate of the other. The registries must
// hold the same variable names (ids may differ); otherwise InputError.
bool equivalent(const HornCnf& phi, const HornCnf& psi);

// Compares F_phi(U) and F_psi(U) for every subset U of the variables.
// Throws ResourceError above `max_vars` (at most 24).
bool equivalent_exhaustive(const HornCnf& phi, const HornCnf& psi, std::size_t max_vars = 12);

// Resolvent on c1's head: requires c1.head in c2.body and no second
// complementary pair (c2.head not in c1.body).
std::optional<Clause> resolvent(const Clause& c1, const Clause& c2);

// Smallest superset closed under pairwise resolution, sorted. Throws
// ResourceError once more than `cap` clauses would be held.
std::vector<Clause> resolution_closure(std::span<const Clause> clauses, std::size_t cap);

// Greedy body-literal deletion in ascending id order. Throws InputError if
// `clause` is not an implicate of `cnf`.
Clause prime_reduce_clause(const HornCnf& cnf, const Clause& clause);

// Drops, in stored order, every clause derivable from the clauses still kept.
HornCnf irredundant_reduce(const HornCnf& cnf);

// prime_reduce_clause on every clause (duplicates merged), then
// irredundant_reduce.
HornCnf minimize_heuristic(const HornCnf& cnf);

bool is_prime(const HornCnf& cnf, const Clause& clause);
bool is_irredundant(const HornCnf& cnf);

// All prime implicates, sorted. Throws ResourceError above `max_vars`.
std::vector<Clause> enumerate_prime_implicates(const HornCnf& cnf, std::size_t max_vars = 14);

bool is_closed_under_fc(const HornCnf& cnf, std::span<const VarId> w);

// Clauses whose variables all lie in `w`, in stored order. Throws InputError
// when `w` is not closed under forward chaining.
HornCnf exclusive_component(const HornCnf& cnf, std::span<const VarId> w);

struct ExclusivityCheck {
  bool exclusive = true;
  std::size_t closure_size = 0;
  // First violating pair (c1, c2) and its resolvent, when not exclusive.
  std::optional<std::array<Clause, 3>> counterexample;
};

// Brute-force check that X(w) = {C in R(I^p(h)) : Vars(C) within w} is an
// exclusive set: no resolvable pair with a clause outside X resolves into X.
ExclusivityCheck verify_exclusive_family(const HornCnf& cnf, std::span<const VarId> w,
                                         std::size_t cap = 100000, std::size_t max_vars = 14);

}  // namespace hornforge
