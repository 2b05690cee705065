#include "hornforge/horn.hpp"

#include <algorithm>
#include <bit>
#include <cctype>

#include "hornforge/errors.hpp"
#include "hornforge/small_fc.hpp"

namespace hornforge {

namespace {

void check_name(std::string_view name) {
  if (name.empty()) throw InputError("empty variable name");
  for (char ch : name) {
    if (std::isspace(static_cast<unsigned char>(ch)) || ch == '&' || ch == '#' || ch == ':') {
      throw InputError("variable name '" + std::string(name) + "' contains a reserved character");
    }
  }
  if (name.find("->") != std::string_view::npos) {
    throw InputError("variable name '" + std::string(name) + "' contains '->'");
  }
}

}  // namespace

VarSet make_varset(std::vector<VarId> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

// ---------------------------------------------------------------------------
// VarRegistry

VarId VarRegistry::intern(std::string_view name) {
  if (auto it = index_.find(std::string(name)); it != index_.end()) return it->second;
  return add(name);
}

VarId VarRegistry::add(std::string_view name) {
  check_name(name);
  std::string key(name);
  if (index_.count(key) != 0) throw InputError("duplicate variable name '" + key + "'");
  const auto id = static_cast<VarId>(names_.size());
  names_.push_back(key);
  index_.emplace(std::move(key), id);
  return id;
}

std::optional<VarId> VarRegistry::find(std::string_view name) const {
  if (auto it = index_.find(std::string(name)); it != index_.end()) return it->second;
  return std::nullopt;
}

VarId VarRegistry::id(std::string_view name) const {
  if (auto found = find(name)) return *found;
  throw InputError("unknown variable '" + std::string(name) + "'");
}

const std::string& VarRegistry::name(VarId id) const {
  if (id >= names_.size()) throw InputError("variable id " + std::to_string(id) + " out of range");
  return names_[id];
}

// ---------------------------------------------------------------------------
// Clause / HornCnf

Clause Clause::make(std::vector<VarId> body, VarId head) {
  Clause c{make_varset(std::move(body)), head};
  if (c.contains(head)) throw InputError("clause head occurs in its own body");
  return c;
}

bool Clause::contains(VarId v) const { return std::binary_search(body.begin(), body.end(), v); }

std::size_t ClauseHash::operator()(const Clause& c) const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL ^ c.head;
  for (VarId v : c.body) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

HornCnf::HornCnf(VarRegistry registry, bool allow_empty_bodies)
    : registry_(std::move(registry)), allow_empty_(allow_empty_bodies) {}

void HornCnf::validate(const Clause& c) const {
  const auto n = registry_.size();
  if (c.head >= n) throw InputError("clause head id out of range");
  for (VarId v : c.body) {
    if (v >= n) throw InputError("clause body id out of range");
  }
  if (!std::is_sorted(c.body.begin(), c.body.end()) ||
      std::adjacent_find(c.body.begin(), c.body.end()) != c.body.end()) {
    throw InputError("clause body is not normalized");
  }
  if (c.contains(c.head)) throw InputError("clause head occurs in its own body");
  if (c.body.empty() && !allow_empty_) {
    throw InputError("clause with empty body -> " + registry_.name(c.head) + " not allowed");
  }
}

void HornCnf::add(Clause c) {
  if (!try_add(c)) throw InputError("duplicate clause with head " + registry_.name(c.head));
}

bool HornCnf::try_add(Clause c) {
  validate(c);
  if (lookup_.count(c) != 0) return false;
  lookup_.insert(c);
  clauses_.push_back(std::move(c));
  return true;
}

std::size_t HornCnf::literal_count() const {
  std::size_t total = 0;
  for (const auto& c : clauses_) total += c.degree();
  return total;
}

VarSet HornCnf::used_vars() const {
  std::vector<char> seen(num_vars(), 0);
  for (const auto& c : clauses_) {
    seen[c.head] = 1;
    for (VarId v : c.body) seen[v] = 1;
  }
  VarSet out;
  for (VarId v = 0; v < seen.size(); ++v) {
    if (seen[v]) out.push_back(v);
  }
  return out;
}

HornCnf remap_to(const HornCnf& cnf, const VarRegistry& target) {
  if (cnf.registry() == target) {
    HornCnf out(target, cnf.allows_empty_bodies());
    for (const auto& c : cnf.clauses()) out.add(c);
    return out;
  }
  std::vector<VarId> map(cnf.num_vars());
  for (VarId v = 0; v < cnf.num_vars(); ++v) map[v] = target.id(cnf.name(v));
  HornCnf out(target, cnf.allows_empty_bodies());
  for (const auto& c : cnf.clauses()) {
    std::vector<VarId> body;
    body.reserve(c.body.size());
    for (VarId v : c.body) body.push_back(map[v]);
    out.add(Clause::make(std::move(body), map[c.head]));
  }
  return out;
}

// ---------------------------------------------------------------------------
// ForwardChainer

ForwardChainer::ForwardChainer(const HornCnf& cnf) : num_vars_(cnf.num_vars()) {
  const auto& clauses = cnf.clauses();
  const std::size_t m = clauses.size();
  heads_.resize(m);
  body_size_.resize(m);
  active_.assign(m, 1);
  occ_offset_.assign(num_vars_ + 1, 0);
  for (std::size_t i = 0; i < m; ++i) {
    heads_[i] = clauses[i].head;
    body_size_[i] = static_cast<std::uint32_t>(clauses[i].body.size());
    if (clauses[i].body.empty()) empty_body_.push_back(static_cast<std::uint32_t>(i));
    for (VarId v : clauses[i].body) ++occ_offset_[v + 1];
  }
  for (std::size_t v = 0; v < num_vars_; ++v) occ_offset_[v + 1] += occ_offset_[v];
  occ_.resize(occ_offset_[num_vars_]);
  std::vector<std::uint32_t> fill(occ_offset_.begin(), occ_offset_.end() - 1);
  for (std::size_t i = 0; i < m; ++i) {
    for (VarId v : clauses[i].body) occ_[fill[v]++] = static_cast<std::uint32_t>(i);
  }
  missing_ = body_size_;
  in_.assign(num_vars_, 0);
  queue_.reserve(num_vars_);
}

template <typename OnTrigger>
bool ForwardChainer::run(std::span<const VarId> query, std::optional<VarId> stop_at,
                         OnTrigger&& on_trigger) {
  queue_.clear();
  for (VarId q : query) {
    if (q >= num_vars_) throw InputError("query variable id out of range");
  }
  for (VarId q : query) {
    if (!in_[q]) {
      in_[q] = 1;
      queue_.push_back(q);
    }
  }
  std::sort(queue_.begin(), queue_.end());
  if (stop_at && in_[*stop_at]) return true;

  auto fire = [&](std::uint32_t c) {
    const VarId h = heads_[c];
    if (in_[h]) return false;
    in_[h] = 1;
    queue_.push_back(h);
    on_trigger(static_cast<std::size_t>(c), h);
    return stop_at && h == *stop_at;
  };

  for (std::uint32_t c : empty_body_) {
    if (active_[c] && fire(c)) return true;
  }
  for (std::size_t pos = 0; pos < queue_.size(); ++pos) {
    const VarId v = queue_[pos];
    for (std::uint32_t k = occ_offset_[v]; k < occ_offset_[v + 1]; ++k) {
      const std::uint32_t c = occ_[k];
      if (missing_[c] == body_size_[c]) touched_clauses_.push_back(c);
      if (--missing_[c] == 0 && active_[c] && fire(c)) return true;
    }
  }
  return false;
}

void ForwardChainer::closure(std::span<const VarId> query, std::vector<char>& in_closure) {
  run(query, std::nullopt, [](std::size_t, VarId) {});
  in_closure.assign(num_vars_, 0);
  for (VarId v : queue_) in_closure[v] = 1;
  for (VarId v : queue_) in_[v] = 0;
  for (std::uint32_t c : touched_clauses_) missing_[c] = body_size_[c];
  touched_clauses_.clear();
}

VarSet ForwardChainer::closure(std::span<const VarId> query) {
  return trace(query).closure;
}

FcTrace ForwardChainer::trace(std::span<const VarId> query) {
  FcTrace out;
  run(query, std::nullopt, [&](std::size_t c, VarId h) { out.triggered.emplace_back(c, h); });
  out.closure.assign(queue_.begin(), queue_.end());
  std::sort(out.closure.begin(), out.closure.end());
  for (VarId v : queue_) in_[v] = 0;
  for (std::uint32_t c : touched_clauses_) missing_[c] = body_size_[c];
  touched_clauses_.clear();
  return out;
}

bool ForwardChainer::derives(std::span<const VarId> query, VarId target) {
  if (target >= num_vars_) throw InputError("target variable id out of range");
  const bool hit = run(query, target, [](std::size_t, VarId) {});
  for (VarId v : queue_) in_[v] = 0;
  for (std::uint32_t c : touched_clauses_) missing_[c] = body_size_[c];
  touched_clauses_.clear();
  return hit;
}

// ---------------------------------------------------------------------------
// Operations

FcTrace forward_chain(const HornCnf& cnf, std::span<const VarId> query) {
  ForwardChainer fc(cnf);
  return fc.trace(query);
}

bool is_implicate(const HornCnf& cnf, const Clause& clause) {
  ForwardChainer fc(cnf);
  return fc.derives(clause.body, clause.head);
}

namespace {

HornCnf unify_registry(const HornCnf& phi, const HornCnf& psi) {
  if (phi.registry() == psi.registry()) return psi;
  if (phi.num_vars() != psi.num_vars()) {
    throw InputError("formulas are over different variable sets (" + std::to_string(phi.num_vars()) +
                     " vs " + std::to_string(psi.num_vars()) + " variables)");
  }
  return remap_to(psi, phi.registry());
}

bool all_derivable(const HornCnf& from, const HornCnf& to) {
  ForwardChainer fc(to);
  for (const auto& c : from.clauses()) {
    if (to.contains(c)) continue;
    if (!fc.derives(c.body, c.head)) return false;
  }
  return true;
}

}  // namespace

bool equivalent(const HornCnf& phi, const HornCnf& psi) {
  const HornCnf other = unify_registry(phi, psi);
  return all_derivable(phi, other) && all_derivable(other, phi);
}

bool equivalent_exhaustive(const HornCnf& phi, const HornCnf& psi, std::size_t max_vars) {
  const HornCnf other = unify_registry(phi, psi);
  const std::size_t n = phi.num_vars();
  if (n > max_vars || n > 24) {
    throw ResourceError("exhaustive equivalence limited to " + std::to_string(std::min<std::size_t>(max_vars, 24)) +
                        " variables, formula has " + std::to_string(n));
  }
  const auto a = to_mask_clauses(phi);
  const auto b = to_mask_clauses(other);
  const Mask subsets = Mask{1} << n;
  for (Mask u = 0; u < subsets; ++u) {
    if (mask_closure(a, u) != mask_closure(b, u)) return false;
  }
  return true;
}

std::optional<Clause> resolvent(const Clause& c1, const Clause& c2) {
  if (!c2.contains(c1.head)) return std::nullopt;
  if (c1.contains(c2.head)) return std::nullopt;  // second complementary pair
  std::vector<VarId> body = c1.body;
  for (VarId v : c2.body) {
    if (v != c1.head) body.push_back(v);
  }
  Clause r{make_varset(std::move(body)), c2.head};
  if (r.contains(r.head)) return std::nullopt;
  return r;
}

std::vector<Clause> resolution_closure(std::span<const Clause> clauses, std::size_t cap) {
  std::vector<Clause> all;
  std::unordered_set<Clause, ClauseHash> seen;
  auto push = [&](Clause c) {
    if (seen.count(c) != 0) return;
    if (all.size() >= cap) {
      throw ResourceError("resolution closure exceeded cap of " + std::to_string(cap) + " clauses");
    }
    seen.insert(c);
    all.push_back(std::move(c));
  };
  for (const auto& c : clauses) push(c);
  // all[0, done) is closed against itself; each new clause is resolved against
  // every clause before it in both directions.
  for (std::size_t next = 0; next < all.size(); ++next) {
    for (std::size_t k = 0; k <= next; ++k) {
      if (auto r = resolvent(all[k], all[next])) push(std::move(*r));
      if (auto r = resolvent(all[next], all[k])) push(std::move(*r));
    }
  }
  std::sort(all.begin(), all.end());
  return all;
}

namespace {

Clause prime_reduce_with(ForwardChainer& fc, const Clause& clause) {
  VarSet body = clause.body;
  const VarSet original = clause.body;
  for (VarId v : original) {
    VarSet trial;
    trial.reserve(body.size());
    for (VarId w : body) {
      if (w != v) trial.push_back(w);
    }
    if (fc.derives(trial, clause.head)) body = std::move(trial);
  }
  return Clause{std::move(body), clause.head};
}

}  // namespace

Clause prime_reduce_clause(const HornCnf& cnf, const Clause& clause) {
  ForwardChainer fc(cnf);
  if (!fc.derives(clause.body, clause.head)) {
    throw InputError("clause with head " + cnf.name(clause.head) + " is not an implicate");
  }
  return prime_reduce_with(fc, clause);
}

HornCnf irredundant_reduce(const HornCnf& cnf) {
  ForwardChainer fc(cnf);
  const auto& clauses = cnf.clauses();
  for (std::size_t i = 0; i < clauses.size(); ++i) {
    fc.set_active(i, false);
    if (!fc.derives(clauses[i].body, clauses[i].head)) fc.set_active(i, true);
  }
  HornCnf out = cnf.empty_like();
  for (std::size_t i = 0; i < clauses.size(); ++i) {
    if (fc.is_active(i)) out.add(clauses[i]);
  }
  return out;
}

HornCnf minimize_heuristic(const HornCnf& cnf) {
  ForwardChainer fc(cnf);
  HornCnf primed = cnf.empty_like();
  for (const auto& c : cnf.clauses()) primed.try_add(prime_reduce_with(fc, c));
  return irredundant_reduce(primed);
}

bool is_prime(const HornCnf& cnf, const Clause& clause) {
  ForwardChainer fc(cnf);
  if (!fc.derives(clause.body, clause.head)) return false;
  for (VarId v : clause.body) {
    VarSet trial;
    for (VarId w : clause.body) {
      if (w != v) trial.push_back(w);
    }
    if (fc.derives(trial, clause.head)) return false;
  }
  return true;
}

bool is_irredundant(const HornCnf& cnf) {
  ForwardChainer fc(cnf);
  const auto& clauses = cnf.clauses();
  for (std::size_t i = 0; i < clauses.size(); ++i) {
    fc.set_active(i, false);
    const bool redundant = fc.derives(clauses[i].body, clauses[i].head);
    fc.set_active(i, true);
    if (redundant) return false;
  }
  return true;
}

std::vector<Clause> enumerate_prime_implicates(const HornCnf& cnf, std::size_t max_vars) {
  const std::size_t n = cnf.num_vars();
  if (n > max_vars || n > 24) {
    throw ResourceError("prime implicate enumeration limited to " +
                        std::to_string(std::min<std::size_t>(max_vars, 24)) + " variables, formula has " +
                        std::to_string(n));
  }
  const auto clauses = to_mask_clauses(cnf);
  const auto table = closure_table(clauses, n);
  std::vector<Clause> out;
  for (Mask s = 0; s < table.size(); ++s) {
    // Implication is monotone in the body, so S -> h is prime iff h is lost
    // by every single-literal deletion.
    Mask heads = table[s] & ~s;
    for (Mask rest = s; rest != 0 && heads != 0; rest &= rest - 1) {
      heads &= ~table[s & ~(rest & -rest)];
    }
    for (; heads != 0; heads &= heads - 1) {
      out.push_back(Clause{from_mask(s), static_cast<VarId>(std::countr_zero(heads))});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_closed_under_fc(const HornCnf& cnf, std::span<const VarId> w) {
  const VarSet ws = make_varset({w.begin(), w.end()});
  return forward_chain(cnf, ws).closure == ws;
}

HornCnf exclusive_component(const HornCnf& cnf, std::span<const VarId> w) {
  if (!is_closed_under_fc(cnf, w)) throw InputError("variable set is not closed under forward chaining");
  std::vector<char> inside(cnf.num_vars(), 0);
  for (VarId v : w) inside[v] = 1;
  HornCnf out = cnf.empty_like();
  for (const auto& c : cnf.clauses()) {
    bool all_in = inside[c.head] != 0;
    for (VarId v : c.body) all_in = all_in && inside[v] != 0;
    if (all_in) out.add(c);
  }
  return out;
}

ExclusivityCheck verify_exclusive_family(const HornCnf& cnf, std::span<const VarId> w, std::size_t cap,
                                         std::size_t max_vars) {
  const auto primes = enumerate_prime_implicates(cnf, max_vars);
  const auto closure = resolution_closure(primes, cap);
  const Mask wm = to_mask(w);
  auto in_x = [&](const Clause& c) { return (to_mask(c.body) | bit(c.head) | wm) == wm; };

  ExclusivityCheck out;
  out.closure_size = closure.size();
  std::vector<char> member(closure.size());
  for (std::size_t i = 0; i < closure.size(); ++i) member[i] = in_x(closure[i]) ? 1 : 0;
  for (std::size_t i = 0; i < closure.size(); ++i) {
    for (std::size_t k = 0; k < closure.size(); ++k) {
      if (member[i] && member[k]) continue;
      auto r = resolvent(closure[i], closure[k]);
      if (r && in_x(*r)) {
        out.exclusive = false;
        out.counterexample = std::array<Clause, 3>{closure[i], closure[k], *r};
        return out;
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Mask helpers

Mask to_mask(std::span<const VarId> vars) {
  Mask m = 0;
  for (VarId v : vars) {
    if (v >= 64) throw ResourceError("bitmask chaining supports at most 64 variables");
    m |= bit(v);
  }
  return m;
}

VarSet from_mask(Mask m) {
  VarSet out;
  for (; m != 0; m &= m - 1) out.push_back(static_cast<VarId>(std::countr_zero(m)));
  return out;
}

MaskClause to_mask_clause(const Clause& c) { return MaskClause{to_mask(c.body), bit(c.head)}; }

std::vector<MaskClause> to_mask_clauses(const HornCnf& cnf) {
  if (cnf.num_vars() > 64) throw ResourceError("bitmask chaining supports at most 64 variables");
  std::vector<MaskClause> out;
  out.reserve(cnf.clause_count());
  for (const auto& c : cnf.clauses()) out.push_back(to_mask_clause(c));
  return out;
}

std::vector<Mask> closure_table(std::span<const MaskClause> clauses, std::size_t n) {
  if (n > 24) throw ResourceError("closure table limited to 24 variables");
  std::vector<Mask> table(std::size_t{1} << n);
  for (Mask u = 0; u < table.size(); ++u) table[u] = mask_closure(clauses, u);
  return table;
}

}  // namespace hornforge
