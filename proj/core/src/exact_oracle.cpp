#include "hornforge/exact_oracle.hpp"

#include <algorithm>
#include <bit>
#include <limits>

#include "hornforge/errors.hpp"
#include "hornforge/small_fc.hpp"

namespace hornforge {

namespace {

class Search {
 public:
  Search(const HornCnf& cnf, std::vector<Clause> primes, std::uint64_t max_nodes)
      : primes_(std::move(primes)), max_nodes_(max_nodes) {
    for (const Clause& c : primes_) pm_.push_back(to_mask_clause(c));
    input_ = to_mask_clauses(cnf);
    const std::size_t n = cnf.num_vars();
    const Mask all = n == 64 ? ~Mask{0} : (Mask{1} << n) - 1;
    for (VarId v = 0; v < n; ++v) {
      if (mask_closure(input_, all & ~bit(v)) & bit(v)) required_ |= bit(v);
    }
    forbidden_.assign(primes_.size(), 0);
    chosen_.assign(primes_.size(), 0);
  }

  std::uint64_t nodes() const { return nodes_; }

  // Smallest k with a feasible subset of size k, searching k = lo..hi.
  std::vector<std::size_t> min_cardinality(std::size_t lo, std::size_t hi) {
    for (std::size_t k = lo; k <= hi; ++k) {
      if (cardinality_dfs(k)) return found_;
    }
    throw InvariantError("exact search found no representation up to the heuristic size");
  }

  std::vector<std::size_t> min_literals(std::size_t upper_exclusive) {
    best_cost_ = upper_exclusive;
    found_.clear();
    literal_dfs(0);
    if (best_cost_ == upper_exclusive) {
      throw InvariantError("exact search found no representation below the heuristic literal count");
    }
    return found_;
  }

 private:
  struct Requirement {
    bool uncovered = false;
    std::vector<std::size_t> candidates;
  };

  void tick() {
    if (++nodes_ > max_nodes_) {
      throw ResourceError("exact minimization exceeded max_nodes after " + std::to_string(nodes_ - 1) + " nodes");
    }
  }

  Requirement pick() const {
    Requirement best;
    for (const MaskClause& q : input_) {
      const Mask cl = mask_closure(selected_, q.body);
      if (cl & q.head) continue;
      std::vector<std::size_t> cand;
      for (std::size_t p = 0; p < pm_.size(); ++p) {
        if (!chosen_[p] && !forbidden_[p] && (pm_[p].body & ~cl) == 0 && (pm_[p].head & cl) == 0) cand.push_back(p);
      }
      if (!best.uncovered || cand.size() < best.candidates.size()) {
        best.uncovered = true;
        best.candidates = std::move(cand);
        if (best.candidates.empty()) break;
      }
    }
    return best;
  }

  Mask missing_heads() const {
    Mask heads = 0;
    for (const MaskClause& c : selected_) heads |= c.head;
    return required_ & ~heads;
  }

  void push(std::size_t p) {
    chosen_[p] = 1;
    selected_.push_back(pm_[p]);
    path_.push_back(p);
  }
  void pop(std::size_t p) {
    chosen_[p] = 0;
    selected_.pop_back();
    path_.pop_back();
  }

  bool cardinality_dfs(std::size_t budget) {
    tick();
    const Requirement req = pick();
    if (!req.uncovered) {
      found_ = path_;
      return true;
    }
    if (static_cast<std::size_t>(std::popcount(missing_heads())) > budget || budget == 0) return false;
    bool ok = false;
    std::size_t tried = 0;
    for (std::size_t p : req.candidates) {
      push(p);
      ok = cardinality_dfs(budget - 1);
      pop(p);
      if (ok) break;
      forbidden_[p] = 1;
      ++tried;
    }
    for (std::size_t q = 0; q < tried; ++q) forbidden_[req.candidates[q]] = 0;
    return ok;
  }

  // Sum over missing heads of the cheapest available clause for that head.
  std::size_t literal_bound() const {
    std::size_t total = 0;
    for (Mask m = missing_heads(); m != 0; m &= m - 1) {
      const Mask h = m & -m;
      std::size_t cheapest = std::numeric_limits<std::size_t>::max();
      for (std::size_t p = 0; p < pm_.size(); ++p) {
        if (pm_[p].head == h && !chosen_[p] && !forbidden_[p]) cheapest = std::min(cheapest, primes_[p].degree());
      }
      if (cheapest == std::numeric_limits<std::size_t>::max()) return cheapest;
      total += cheapest;
    }
    return total;
  }

  void literal_dfs(std::size_t cost) {
    tick();
    const Requirement req = pick();
    if (!req.uncovered) {
      if (cost < best_cost_) {
        best_cost_ = cost;
        found_ = path_;
      }
      return;
    }
    const std::size_t bound = literal_bound();
    if (bound == std::numeric_limits<std::size_t>::max() || cost + bound >= best_cost_) return;
    std::size_t tried = 0;
    for (std::size_t p : req.candidates) {
      if (cost + primes_[p].degree() < best_cost_) {
        push(p);
        literal_dfs(cost + primes_[p].degree());
        pop(p);
      }
      forbidden_[p] = 1;
      ++tried;
    }
    for (std::size_t q = 0; q < tried; ++q) forbidden_[req.candidates[q]] = 0;
  }

  std::vector<Clause> primes_;
  std::vector<MaskClause> pm_;
  std::vector<MaskClause> input_;
  Mask required_ = 0;
  std::uint64_t max_nodes_;
  std::uint64_t nodes_ = 0;

  std::vector<char> forbidden_, chosen_;
  std::vector<MaskClause> selected_;
  std::vector<std::size_t> path_, found_;
  std::size_t best_cost_ = 0;
};

HornCnf assemble(const HornCnf& like, const std::vector<Clause>& primes, std::vector<std::size_t> picks) {
  std::vector<Clause> chosen;
  for (std::size_t p : picks) chosen.push_back(primes[p]);
  std::sort(chosen.begin(), chosen.end());
  HornCnf out = like.empty_like();
  for (Clause& c : chosen) out.add(std::move(c));
  return out;
}

}  // namespace

MinimizationResult minimize_exact(const HornCnf& cnf, const ExactLimits& limits) {
  if (cnf.num_vars() > limits.max_vars) {
    throw ResourceError("exact minimization limited to " + std::to_string(limits.max_vars) + " variables, got " +
                        std::to_string(cnf.num_vars()));
  }
  std::vector<Clause> primes = enumerate_prime_implicates(cnf, limits.max_vars);
  if (primes.size() > limits.max_pi) {
    throw ResourceError("function has " + std::to_string(primes.size()) + " prime implicates, above max_pi = " +
                        std::to_string(limits.max_pi));
  }
  MinimizationResult out;
  out.prime_implicate_count = primes.size();

  const HornCnf warm = minimize_heuristic(cnf);
  Search search(cnf, primes, limits.max_nodes);
  const std::size_t lo = tau_lower_bound_heads(cnf);
  out.witness_tau = assemble(cnf, primes, search.min_cardinality(lo, warm.clause_count()));
  out.witness_lambda = assemble(cnf, primes, search.min_literals(warm.literal_count() + 1));
  out.tau = out.witness_tau.clause_count();
  out.lambda = out.witness_lambda.literal_count();
  out.nodes_explored = search.nodes();
  return out;
}

std::size_t tau_lower_bound_heads(const HornCnf& cnf) {
  ForwardChainer fc(cnf);
  std::size_t count = 0;
  std::vector<VarId> others;
  for (VarId v = 0; v < cnf.num_vars(); ++v) {
    others.clear();
    for (VarId w = 0; w < cnf.num_vars(); ++w) {
      if (w != v) others.push_back(w);
    }
    if (fc.derives(others, v)) ++count;
  }
  return count;
}

}  // namespace hornforge
