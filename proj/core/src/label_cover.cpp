#include "hornforge/label_cover.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <set>

#include "hornforge/errors.hpp"
#include "hornforge/rng.hpp"

namespace hornforge {

namespace {

bool bad_char(char c, bool allow_dot) {
  switch (c) {
    case ' ': case '\t': case '\r': case '\n': case ',': case '[': case ']': case ':': case '#': case '&':
      return true;
    case '.':
      return !allow_dot;
    default:
      return false;
  }
}

void check_name(const std::string& name, bool allow_dot, const char* what) {
  if (name.empty()) throw InputError(std::string("empty ") + what + " name");
  if (name.find("->") != std::string::npos ||
      std::any_of(name.begin(), name.end(), [&](char c) { return bad_char(c, allow_dot); })) {
    throw InputError(std::string("invalid ") + what + " name '" + name + "'");
  }
}

template <typename Map>
void index_names(const std::vector<std::string>& names, Map& index, bool allow_dot, const char* what) {
  for (std::uint32_t i = 0; i < names.size(); ++i) {
    check_name(names[i], allow_dot, what);
    if (!index.emplace(names[i], i).second) throw InputError(std::string("duplicate ") + what + " '" + names[i] + "'");
  }
}

std::vector<std::vector<LabelId>> owned_labels(const std::vector<VertexId>& owner, std::size_t vertices,
                                               std::size_t labels, const char* side) {
  if (owner.size() != labels) throw InputError(std::string("refined instance: every ") + side + "-label needs an owner");
  std::vector<std::vector<LabelId>> out(vertices);
  for (LabelId l = 0; l < labels; ++l) {
    if (owner[l] >= vertices) throw InputError(std::string("refined instance: ") + side + "-label owner out of range");
    out[owner[l]].push_back(l);
  }
  for (const auto& set : out) {
    if (set.size() != out[0].size()) {
      throw InputError(std::string("refined instance: all ") + side + "-vertices need the same number of labels");
    }
  }
  if (!out.empty() && out[0].empty()) throw InputError(std::string("refined instance: empty ") + side + "-label set");
  return out;
}

bool is_sorted_unique(const std::vector<LabelId>& v) {
  return std::adjacent_find(v.begin(), v.end(), std::greater_equal<>()) == v.end();
}

}  // namespace

LcInstance::LcInstance(LcSpec spec) : spec_(std::move(spec)) {
  const std::size_t r = spec_.x_names.size(), s = spec_.y_names.size();
  if (r == 0 || s == 0) throw InputError("instance needs at least one x-vertex and one y-vertex");
  if (spec_.x_labels.empty() || spec_.y_labels.empty()) throw InputError("instance needs non-empty label sets");
  index_names(spec_.x_names, x_index_, false, "vertex");
  index_names(spec_.y_names, y_index_, false, "vertex");
  for (const auto& [name, id] : y_index_) {
    if (x_index_.count(name) != 0) throw InputError("vertex '" + name + "' is on both sides");
  }
  index_names(spec_.x_labels, lx_index_, true, "label");
  index_names(spec_.y_labels, ly_index_, true, "label");
  for (const auto& [name, id] : ly_index_) {
    if (lx_index_.count(name) != 0) throw InputError("label '" + name + "' is on both sides");
  }

  if (spec_.refined) {
    x_allowed_ = owned_labels(spec_.x_label_owner, r, spec_.x_labels.size(), "x");
    y_allowed_ = owned_labels(spec_.y_label_owner, s, spec_.y_labels.size(), "y");
  } else {
    if (!spec_.x_label_owner.empty() || !spec_.y_label_owner.empty()) {
      throw InputError("label owners given for an unrefined instance");
    }
    std::vector<LabelId> all_x(spec_.x_labels.size()), all_y(spec_.y_labels.size());
    std::iota(all_x.begin(), all_x.end(), 0);
    std::iota(all_y.begin(), all_y.end(), 0);
    x_allowed_.assign(r, all_x);
    y_allowed_.assign(s, all_y);
  }

  if (spec_.constraints.size() != spec_.edges.size()) throw InputError("every edge needs a constraint");
  std::vector<std::size_t> order(spec_.edges.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return spec_.edges[a] < spec_.edges[b]; });
  std::vector<std::pair<VertexId, VertexId>> edges;
  std::vector<std::vector<LabelPair>> constraints;
  for (std::size_t k : order) {
    edges.push_back(spec_.edges[k]);
    constraints.push_back(std::move(spec_.constraints[k]));
  }
  spec_.edges = std::move(edges);
  spec_.constraints = std::move(constraints);

  x_edges_.assign(r, {});
  y_edges_.assign(s, {});
  for (EdgeId e = 0; e < spec_.edges.size(); ++e) {
    const auto [x, y] = spec_.edges[e];
    if (x >= r || y >= s) throw InputError("edge endpoint out of range");
    if (!edge_index_.emplace(spec_.edges[e], e).second) {
      throw InputError("duplicate edge (" + x_name(x) + ", " + y_name(y) + ")");
    }
    auto& pi = spec_.constraints[e];
    std::sort(pi.begin(), pi.end());
    pi.erase(std::unique(pi.begin(), pi.end()), pi.end());
    if (pi.empty()) throw InputError("edge (" + x_name(x) + ", " + y_name(y) + ") has an empty constraint");
    for (const LabelPair& p : pi) {
      const auto& ax = x_allowed_[x];
      const auto& ay = y_allowed_[y];
      if (!std::binary_search(ax.begin(), ax.end(), p.x) || !std::binary_search(ay.begin(), ay.end(), p.y)) {
        throw InputError("edge (" + x_name(x) + ", " + y_name(y) + ") uses a label its endpoints do not carry");
      }
    }
    x_edges_[x].push_back(e);
    y_edges_[y].push_back(e);
  }
  for (VertexId x = 0; x < r; ++x) {
    if (x_edges_[x].empty()) throw InputError("isolated vertex '" + x_name(x) + "'");
  }
  for (VertexId y = 0; y < s; ++y) {
    if (y_edges_[y].empty()) throw InputError("isolated vertex '" + y_name(y) + "'");
  }
}

std::optional<EdgeId> LcInstance::find_edge(VertexId x, VertexId y) const {
  auto it = edge_index_.find({x, y});
  if (it == edge_index_.end()) return std::nullopt;
  return it->second;
}

const std::vector<LabelId>& LcInstance::labels_of_x(VertexId x) const { return x_allowed_[x]; }
const std::vector<LabelId>& LcInstance::labels_of_y(VertexId y) const { return y_allowed_[y]; }

std::vector<VertexId> LcInstance::neighbors_of_y(VertexId y) const {
  std::vector<VertexId> out;
  for (EdgeId e : y_edges_[y]) out.push_back(spec_.edges[e].first);
  std::sort(out.begin(), out.end());
  return out;
}

bool LcInstance::admissible(EdgeId e, LabelId lx, LabelId ly) const {
  const auto& pi = spec_.constraints[e];
  return std::binary_search(pi.begin(), pi.end(), LabelPair{lx, ly});
}

LcSizes LcInstance::sizes() const {
  LcSizes z;
  z.r = num_x();
  z.s = num_y();
  z.m = num_edges();
  z.lambda = x_allowed_[0].size();
  z.lambda_prime = y_allowed_[0].size();
  for (const auto& pi : spec_.constraints) z.pi += pi.size();
  return z;
}

std::size_t LcInstance::size() const {
  const LcSizes z = sizes();
  return z.r + z.s + z.m + num_x_labels() + num_y_labels() + z.pi;
}

bool LcInstance::biregular() const {
  auto uniform = [](const std::vector<std::vector<EdgeId>>& adj) {
    return std::all_of(adj.begin(), adj.end(), [&](const auto& a) { return a.size() == adj[0].size(); });
  };
  return uniform(x_edges_) && uniform(y_edges_);
}

bool LcInstance::feasible() const {
  for (VertexId y = 0; y < num_y(); ++y) {
    const bool some = std::any_of(y_allowed_[y].begin(), y_allowed_[y].end(), [&](LabelId ly) {
      return std::all_of(y_edges_[y].begin(), y_edges_[y].end(), [&](EdgeId e) {
        const auto& pi = spec_.constraints[e];
        return std::any_of(pi.begin(), pi.end(), [&](const LabelPair& p) { return p.y == ly; });
      });
    });
    if (!some) return false;
  }
  return true;
}

std::optional<LabelId> LcInstance::find_x_label(const std::string& name) const {
  auto it = lx_index_.find(name);
  return it == lx_index_.end() ? std::nullopt : std::optional<LabelId>(it->second);
}
std::optional<LabelId> LcInstance::find_y_label(const std::string& name) const {
  auto it = ly_index_.find(name);
  return it == ly_index_.end() ? std::nullopt : std::optional<LabelId>(it->second);
}
std::optional<VertexId> LcInstance::find_x(const std::string& name) const {
  auto it = x_index_.find(name);
  return it == x_index_.end() ? std::nullopt : std::optional<VertexId>(it->second);
}
std::optional<VertexId> LcInstance::find_y(const std::string& name) const {
  auto it = y_index_.find(name);
  return it == y_index_.end() ? std::nullopt : std::optional<VertexId>(it->second);
}

void validate_labeling(const LcInstance& inst, const Labeling& f) {
  if (f.x.size() != inst.num_x() || f.y.size() != inst.num_y()) throw InputError("labeling shape does not match instance");
  auto check = [](const std::vector<LabelId>& set, const std::vector<LabelId>& allowed, const std::string& vertex) {
    if (!is_sorted_unique(set)) throw InputError("label set of '" + vertex + "' is not sorted and duplicate-free");
    for (LabelId l : set) {
      if (!std::binary_search(allowed.begin(), allowed.end(), l)) {
        throw InputError("vertex '" + vertex + "' cannot carry label " + std::to_string(l));
      }
    }
  };
  for (VertexId x = 0; x < inst.num_x(); ++x) check(f.x[x], inst.labels_of_x(x), inst.x_name(x));
  for (VertexId y = 0; y < inst.num_y(); ++y) check(f.y[y], inst.labels_of_y(y), inst.y_name(y));
}

bool covers_edge(const LcInstance& inst, const Labeling& f, EdgeId e) {
  const auto [x, y] = inst.edge(e);
  if (f.y[y].empty()) return false;
  for (LabelId ly : f.y[y]) {
    const bool supported =
        std::any_of(f.x[x].begin(), f.x[x].end(), [&](LabelId lx) { return inst.admissible(e, lx, ly); });
    if (!supported) return false;
  }
  return true;
}

CoverReport check_cover(const LcInstance& inst, const Labeling& f) {
  validate_labeling(inst, f);
  CoverReport rep;
  for (EdgeId e = 0; e < inst.num_edges(); ++e) {
    if (!covers_edge(inst, f, e)) rep.uncovered_edges.push_back(e);
  }
  rep.is_total = rep.uncovered_edges.empty();
  for (const auto& s : f.x) rep.fx_total += s.size();
  for (const auto& s : f.y) rep.fy_total += s.size();
  rep.tight = std::all_of(f.y.begin(), f.y.end(), [](const auto& s) { return s.size() == 1; });
  rep.kappa = Rational(static_cast<std::int64_t>(rep.fx_total), static_cast<std::int64_t>(inst.num_x()));
  return rep;
}

Labeling tighten(const LcInstance& inst, const Labeling& f) {
  if (!check_cover(inst, f).is_total) throw InputError("tighten needs a total cover");
  Labeling g = f;
  for (auto& set : g.y) set.resize(1);
  return g;
}

LcInstance refine(const LcInstance& inst) {
  if (inst.refined()) throw InputError("instance is already refined");
  const LcSpec& in = inst.spec();
  const LabelId lam = static_cast<LabelId>(in.x_labels.size());
  const LabelId lamp = static_cast<LabelId>(in.y_labels.size());
  LcSpec out;
  out.refined = true;
  out.x_names = in.x_names;
  out.y_names = in.y_names;
  for (VertexId x = 0; x < in.x_names.size(); ++x) {
    for (LabelId l = 0; l < lam; ++l) {
      out.x_labels.push_back(in.x_names[x] + "." + in.x_labels[l]);
      out.x_label_owner.push_back(x);
    }
  }
  for (VertexId y = 0; y < in.y_names.size(); ++y) {
    for (LabelId l = 0; l < lamp; ++l) {
      out.y_labels.push_back(in.y_names[y] + "." + in.y_labels[l]);
      out.y_label_owner.push_back(y);
    }
  }
  out.edges = in.edges;
  for (EdgeId e = 0; e < in.edges.size(); ++e) {
    const auto [x, y] = in.edges[e];
    std::vector<LabelPair> pi;
    for (const LabelPair& p : in.constraints[e]) pi.push_back({x * lam + p.x, y * lamp + p.y});
    out.constraints.push_back(std::move(pi));
  }
  return LcInstance(std::move(out));
}

Labeling lift(const LcInstance& original, const Labeling& f0) {
  validate_labeling(original, f0);
  const LabelId lam = static_cast<LabelId>(original.num_x_labels());
  const LabelId lamp = static_cast<LabelId>(original.num_y_labels());
  Labeling f{f0.x, f0.y};
  for (VertexId x = 0; x < f.x.size(); ++x) {
    for (LabelId& l : f.x[x]) l += x * lam;
  }
  for (VertexId y = 0; y < f.y.size(); ++y) {
    for (LabelId& l : f.y[y]) l += y * lamp;
  }
  return f;
}

Labeling project(const LcInstance& original, const Labeling& f) {
  if (original.refined()) throw InputError("project expects the unrefined instance");
  const LabelId lam = static_cast<LabelId>(original.num_x_labels());
  const LabelId lamp = static_cast<LabelId>(original.num_y_labels());
  if (f.x.size() != original.num_x() || f.y.size() != original.num_y()) {
    throw InputError("labeling shape does not match instance");
  }
  Labeling f0{f.x, f.y};
  for (VertexId x = 0; x < f0.x.size(); ++x) {
    for (LabelId& l : f0.x[x]) {
      if (l / lam != x) throw InputError("label of another vertex on '" + original.x_name(x) + "'");
      l %= lam;
    }
  }
  for (VertexId y = 0; y < f0.y.size(); ++y) {
    for (LabelId& l : f0.y[y]) {
      if (l / lamp != y) throw InputError("label of another vertex on '" + original.y_name(y) + "'");
      l %= lamp;
    }
  }
  validate_labeling(original, f0);
  return f0;
}

namespace {

// Odometer over one label per y, lexicographic in (y0, y1, ...).
class YAssignments {
 public:
  YAssignments(const LcInstance& inst, std::uint64_t budget) : inst_(inst), pos_(inst.num_y(), 0) {
    std::uint64_t count = 1;
    for (VertexId y = 0; y < inst.num_y(); ++y) {
      const std::uint64_t k = inst.labels_of_y(y).size();
      if (count > budget / k) throw ResourceError("tight y-assignments exceed the search budget");
      count *= k;
    }
  }

  LabelId label(VertexId y) const { return inst_.labels_of_y(y)[pos_[y]]; }

  bool advance() {
    for (std::size_t y = pos_.size(); y-- > 0;) {
      if (++pos_[y] < inst_.labels_of_y(static_cast<VertexId>(y)).size()) return true;
      pos_[y] = 0;
    }
    return false;
  }

  std::vector<std::vector<LabelId>> current() const {
    std::vector<std::vector<LabelId>> out(pos_.size());
    for (VertexId y = 0; y < pos_.size(); ++y) out[y] = {label(y)};
    return out;
  }

 private:
  const LcInstance& inst_;
  std::vector<std::size_t> pos_;
};

using LocalMask = std::uint64_t;

// For x under a fixed y-assignment: per incident edge, the local indices of
// x's labels supporting that edge's y-label.
std::vector<LocalMask> requirements(const LcInstance& inst, const YAssignments& ya, VertexId x) {
  const auto& labels = inst.labels_of_x(x);
  std::vector<LocalMask> req;
  for (EdgeId e : inst.edges_of_x(x)) {
    const LabelId ly = ya.label(inst.edge(e).second);
    LocalMask m = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (inst.admissible(e, labels[i], ly)) m |= LocalMask{1} << i;
    }
    req.push_back(m);
  }
  return req;
}

// Smallest label set hitting every requirement, lexicographically first among
// equal sizes. Returns nullopt if some requirement is unsatisfiable or no set
// of size < limit exists.
std::optional<LocalMask> min_hitting_set(const std::vector<LocalMask>& req, std::size_t n, std::size_t limit,
                                         std::uint64_t& nodes, std::uint64_t budget) {
  if (std::any_of(req.begin(), req.end(), [](LocalMask m) { return m == 0; })) return std::nullopt;
  for (std::size_t k = 1; k <= n && k < limit; ++k) {
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      if (++nodes > budget) throw ResourceError("exact cover search exceeded its node budget");
      LocalMask pick = 0;
      for (std::size_t i : idx) pick |= LocalMask{1} << i;
      if (std::all_of(req.begin(), req.end(), [&](LocalMask m) { return (m & pick) != 0; })) return pick;
      std::size_t i = k;
      while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return std::nullopt;
}

}  // namespace

ExactCover solve_exact_cover(const LcInstance& inst, std::uint64_t budget) {
  for (VertexId x = 0; x < inst.num_x(); ++x) {
    if (inst.labels_of_x(x).size() > 64) throw ResourceError("more than 64 labels on one vertex");
  }
  YAssignments ya(inst, budget);
  ExactCover best;
  std::size_t best_cost = std::numeric_limits<std::size_t>::max();
  std::uint64_t nodes = 0;
  do {
    if (++nodes > budget) throw ResourceError("exact cover search exceeded its node budget");
    std::size_t cost = 0;
    std::vector<std::vector<LabelId>> fx(inst.num_x());
    bool ok = true;
    for (VertexId x = 0; x < inst.num_x() && ok; ++x) {
      const auto& labels = inst.labels_of_x(x);
      // Every later x needs at least one label and the total must beat best.
      std::size_t limit = labels.size() + 1;
      if (best_cost != std::numeric_limits<std::size_t>::max()) {
        const std::size_t later = inst.num_x() - x - 1;
        if (cost + later >= best_cost) {
          ok = false;
          break;
        }
        limit = std::min(limit, best_cost - cost - later);
      }
      auto pick = min_hitting_set(requirements(inst, ya, x), labels.size(), limit, nodes, budget);
      if (!pick) {
        ok = false;
        break;
      }
      for (LocalMask m = *pick; m != 0; m &= m - 1) fx[x].push_back(labels[std::countr_zero(m)]);
      cost += fx[x].size();
    }
    if (ok && cost < best_cost) {
      best_cost = cost;
      best.labeling = Labeling{std::move(fx), ya.current()};
    }
  } while (ya.advance());
  if (best_cost == std::numeric_limits<std::size_t>::max()) throw InputError("instance admits no total cover");
  best.kappa = Rational(static_cast<std::int64_t>(best_cost), static_cast<std::int64_t>(inst.num_x()));
  best.nodes = nodes;
  return best;
}

ExactPacking solve_exact_packing(const LcInstance& inst, std::uint64_t budget) {
  YAssignments ya(inst, budget);
  ExactPacking best;
  std::size_t best_covered = 0;
  bool have = false;
  do {
    std::size_t covered = 0;
    std::vector<std::vector<LabelId>> fx(inst.num_x());
    for (VertexId x = 0; x < inst.num_x(); ++x) {
      std::size_t top = 0;
      LabelId arg = inst.labels_of_x(x)[0];
      for (LabelId lx : inst.labels_of_x(x)) {
        std::size_t c = 0;
        for (EdgeId e : inst.edges_of_x(x)) c += inst.admissible(e, lx, ya.label(inst.edge(e).second)) ? 1 : 0;
        if (c > top) {
          top = c;
          arg = lx;
        }
      }
      fx[x] = {arg};
      covered += top;
    }
    if (!have || covered > best_covered) {
      have = true;
      best_covered = covered;
      best.labeling = Labeling{std::move(fx), ya.current()};
    }
  } while (ya.advance());
  best.mu = Rational(static_cast<std::int64_t>(best_covered), static_cast<std::int64_t>(inst.num_edges()));
  return best;
}

Rational packing_value(const LcInstance& inst, const Labeling& f) {
  validate_labeling(inst, f);
  auto single = [](const auto& sets) { return std::all_of(sets.begin(), sets.end(), [](const auto& s) { return s.size() == 1; }); };
  if (!single(f.x) || !single(f.y)) throw InputError("packing labelings carry exactly one label per vertex");
  std::int64_t covered = 0;
  for (EdgeId e = 0; e < inst.num_edges(); ++e) covered += covers_edge(inst, f, e) ? 1 : 0;
  return Rational(covered, static_cast<std::int64_t>(inst.num_edges()));
}

namespace {

void require_tight_total(const LcInstance& inst, const Labeling& f) {
  const CoverReport rep = check_cover(inst, f);
  if (!rep.is_total || !rep.tight) throw InputError("rounding needs a tight total cover");
}

}  // namespace

Rounding round_cover_to_packing(const LcInstance& inst, const Labeling& f, std::uint64_t seed) {
  require_tight_total(inst, f);
  Rounding out;
  out.regular = inst.biregular();
  out.packing.y = f.y;
  out.packing.x.resize(inst.num_x());
  for (VertexId x = 0; x < inst.num_x(); ++x) {
    SplitMix64 rng = SplitMix64::stream(seed, x);
    out.packing.x[x] = {f.x[x][rng.below(f.x[x].size())]};
  }
  return out;
}

Rational rounding_expectation(const LcInstance& inst, const Labeling& f) {
  require_tight_total(inst, f);
  Rational sum = 0;
  for (EdgeId e = 0; e < inst.num_edges(); ++e) {
    const auto [x, y] = inst.edge(e);
    const LabelId ly = f.y[y][0];
    const auto good = std::count_if(f.x[x].begin(), f.x[x].end(), [&](LabelId lx) { return inst.admissible(e, lx, ly); });
    sum += Rational(good, static_cast<std::int64_t>(f.x[x].size()));
  }
  return sum / static_cast<std::int64_t>(inst.num_edges());
}

LcInstance sat_to_lc(const std::vector<std::vector<int>>& clauses) {
  if (clauses.empty()) throw InputError("empty formula");
  const std::size_t k = clauses[0].size();
  if (k == 0 || k > 16) throw InputError("clause width must be between 1 and 16");
  for (std::size_t j = 0; j < clauses.size(); ++j) {
    if (clauses[j].size() != k) throw InputError("clause " + std::to_string(j + 1) + " breaks k-uniformity");
    std::set<int> vars;
    for (int lit : clauses[j]) {
      if (lit == 0) throw InputError("literal 0 in clause " + std::to_string(j + 1));
      if (!vars.insert(lit < 0 ? -lit : lit).second) {
        throw InputError("clause " + std::to_string(j + 1) + " repeats a variable");
      }
    }
  }

  LcSpec spec;
  spec.x_labels = {"a0", "a1"};
  for (std::uint32_t bits = 0; bits < (1U << k); ++bits) {
    std::string name = "w";
    for (std::size_t i = 0; i < k; ++i) name += ((bits >> i) & 1U) ? '1' : '0';
    spec.y_labels.push_back(std::move(name));
  }
  // Occurrence vertices o<j>_<i>, grouped by variable.
  std::map<int, std::vector<VertexId>> occurrences;
  for (std::size_t j = 0; j < clauses.size(); ++j) {
    spec.y_names.push_back("c" + std::to_string(j + 1));
    for (std::size_t i = 0; i < k; ++i) {
      occurrences[std::abs(clauses[j][i])].push_back(static_cast<VertexId>(spec.x_names.size()));
      spec.x_names.push_back("o" + std::to_string(j + 1) + "_" + std::to_string(i + 1));
    }
  }
  for (std::size_t j = 0; j < clauses.size(); ++j) {
    for (std::size_t i = 0; i < k; ++i) {
      const int u = std::abs(clauses[j][i]);
      std::vector<LabelPair> pi;
      for (std::uint32_t bits = 0; bits < (1U << k); ++bits) {
        bool sat = false;
        for (std::size_t q = 0; q < k; ++q) {
          const bool value = (bits >> q) & 1U;
          sat = sat || (clauses[j][q] > 0 ? value : !value);
        }
        if (sat) pi.push_back({(bits >> i) & 1U, bits});
      }
      for (VertexId x : occurrences[u]) {
        spec.edges.emplace_back(x, static_cast<VertexId>(j));
        spec.constraints.push_back(pi);
      }
    }
  }
  return LcInstance(std::move(spec));
}

LcInstance claw_instance() {
  LcSpec spec;
  spec.x_names = {"x1", "x2", "x3"};
  spec.y_names = {"y"};
  spec.x_labels = {"l1", "l2"};
  spec.y_labels = {"l1'", "l2'"};
  spec.edges = {{0, 0}, {1, 0}, {2, 0}};
  spec.constraints = {{{0, 0}, {0, 1}}, {{0, 1}}, {{1, 0}, {1, 1}}};
  return LcInstance(std::move(spec));
}

namespace {

void name_vertices_and_labels(LcSpec& spec, std::size_t r, std::size_t s, std::size_t lambda, std::size_t lambda_prime) {
  for (std::size_t i = 1; i <= r; ++i) spec.x_names.push_back("x" + std::to_string(i));
  for (std::size_t i = 1; i <= s; ++i) spec.y_names.push_back("y" + std::to_string(i));
  for (std::size_t i = 1; i <= lambda; ++i) spec.x_labels.push_back("l" + std::to_string(i));
  for (std::size_t i = 1; i <= lambda_prime; ++i) spec.y_labels.push_back("l" + std::to_string(i) + "'");
}

// Random pairs plus one pair supporting the planted y-label.
std::vector<LabelPair> planted_constraint(SplitMix64& rng, std::size_t lambda, std::size_t lambda_prime, double p,
                                          LabelId planted) {
  std::vector<LabelPair> pi;
  bool has_planted = false;
  for (LabelId a = 0; a < lambda; ++a) {
    for (LabelId b = 0; b < lambda_prime; ++b) {
      if (rng.uniform() < p) {
        pi.push_back({a, b});
        has_planted = has_planted || b == planted;
      }
    }
  }
  if (!has_planted) pi.push_back({static_cast<LabelId>(rng.below(lambda)), planted});
  return pi;
}

void check_shape(std::size_t r, std::size_t s, std::size_t lambda, std::size_t lambda_prime) {
  if (r == 0 || s == 0 || lambda == 0 || lambda_prime == 0) throw InputError("generator sizes must be positive");
}

}  // namespace

LcInstance random_instance(const RandomLcParams& params, std::uint64_t seed) {
  check_shape(params.r, params.s, params.lambda, params.lambda_prime);
  SplitMix64 rng(seed);
  LcSpec spec;
  name_vertices_and_labels(spec, params.r, params.s, params.lambda, params.lambda_prime);
  std::vector<LabelId> planted(params.s);
  for (auto& l : planted) l = static_cast<LabelId>(rng.below(params.lambda_prime));

  std::set<std::pair<VertexId, VertexId>> edges;
  for (VertexId x = 0; x < params.r; ++x) {
    for (VertexId y = 0; y < params.s; ++y) {
      if (rng.uniform() < params.edge_probability) edges.emplace(x, y);
    }
  }
  std::vector<char> x_seen(params.r, 0), y_seen(params.s, 0);
  for (const auto& [x, y] : edges) x_seen[x] = y_seen[y] = 1;
  for (VertexId x = 0; x < params.r; ++x) {
    if (!x_seen[x]) {
      const auto y = static_cast<VertexId>(rng.below(params.s));
      edges.emplace(x, y);
      y_seen[y] = 1;
    }
  }
  for (VertexId y = 0; y < params.s; ++y) {
    if (!y_seen[y]) edges.emplace(static_cast<VertexId>(rng.below(params.r)), y);
  }
  for (const auto& e : edges) {
    spec.edges.push_back(e);
    spec.constraints.push_back(
        planted_constraint(rng, params.lambda, params.lambda_prime, params.pair_probability, planted[e.second]));
  }
  return LcInstance(std::move(spec));
}

LcInstance random_biregular_instance(std::size_t r, std::size_t dx, std::size_t s, std::size_t lambda,
                                     std::size_t lambda_prime, double pair_probability, std::uint64_t seed) {
  check_shape(r, s, lambda, lambda_prime);
  if (dx == 0 || dx > s || (r * dx) % s != 0) throw InputError("no bi-regular graph with these degrees");
  SplitMix64 rng(seed);
  LcSpec spec;
  name_vertices_and_labels(spec, r, s, lambda, lambda_prime);
  std::vector<LabelId> planted(s);
  for (auto& l : planted) l = static_cast<LabelId>(rng.below(lambda_prime));
  for (VertexId x = 0; x < r; ++x) {
    for (std::size_t k = 0; k < dx; ++k) {
      const auto y = static_cast<VertexId>((x * dx + k) % s);
      spec.edges.emplace_back(x, y);
      spec.constraints.push_back(planted_constraint(rng, lambda, lambda_prime, pair_probability, planted[y]));
    }
  }
  return LcInstance(std::move(spec));
}

}  // namespace hornforge
