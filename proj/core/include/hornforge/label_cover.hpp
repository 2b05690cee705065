#pragma once

// Label Cover instances (minimization flavor), labelings and their costs,
// tightening, refinement, exact small-scale solvers for both the covering
// and the packing flavor, and randomized rounding between them.

#include <boost/rational.hpp>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hornforge {

using Rational = boost::rational<std::int64_t>;
using VertexId = std::uint32_t;
using LabelId = std::uint32_t;
using EdgeId = std::uint32_t;

struct LabelPair {
  LabelId x;
  LabelId y;
  auto operator<=>(const LabelPair&) const = default;
};

// Plain description of an instance, as read from a file or assembled by a
// generator. LcInstance validates and indexes it.
struct LcSpec {
  std::vector<std::string> x_names;
  std::vector<std::string> y_names;
  std::vector<std::string> x_labels;  // L0, or the union L of private sets
  std::vector<std::string> y_labels;  // L0', or L'
  // Refined instances only: owning vertex of each label.
  std::vector<VertexId> x_label_owner;
  std::vector<VertexId> y_label_owner;
  bool refined = false;
  std::vector<std::pair<VertexId, VertexId>> edges;  // (x, y)
  std::vector<std::vector<LabelPair>> constraints;   // parallel to edges
};

// r = |X|, s = |Y|, m = |E|, lambda / lambda_prime = per-vertex label counts,
// pi = total number of admissible pairs.
struct LcSizes {
  std::size_t r = 0, s = 0, m = 0, lambda = 0, lambda_prime = 0, pi = 0;
  std::size_t total_labels() const { return r * lambda + s * lambda_prime; }
};

class LcInstance {
 public:
  // Throws InputError unless: names are unique and well formed, the label
  // sets are disjoint, every edge is unique and has a non-empty constraint
  // over labels available at its endpoints, and no vertex is isolated. A
  // refined instance must give every vertex the same number of private labels.
  explicit LcInstance(LcSpec spec);

  const LcSpec& spec() const { return spec_; }
  bool refined() const { return spec_.refined; }

  std::size_t num_x() const { return spec_.x_names.size(); }
  std::size_t num_y() const { return spec_.y_names.size(); }
  std::size_t num_edges() const { return spec_.edges.size(); }
  const std::string& x_name(VertexId x) const { return spec_.x_names[x]; }
  const std::string& y_name(VertexId y) const { return spec_.y_names[y]; }
  const std::string& x_label(LabelId l) const { return spec_.x_labels[l]; }
  const std::string& y_label(LabelId l) const { return spec_.y_labels[l]; }
  std::size_t num_x_labels() const { return spec_.x_labels.size(); }
  std::size_t num_y_labels() const { return spec_.y_labels.size(); }

  std::pair<VertexId, VertexId> edge(EdgeId e) const { return spec_.edges[e]; }
  const std::vector<LabelPair>& constraint(EdgeId e) const { return spec_.constraints[e]; }
  std::optional<EdgeId> find_edge(VertexId x, VertexId y) const;

  // Labels a vertex may carry: all of L0 / L0' when unrefined, its private
  // set when refined. Ascending.
  const std::vector<LabelId>& labels_of_x(VertexId x) const;
  const std::vector<LabelId>& labels_of_y(VertexId y) const;

  // Incident edges in ascending edge order (edges are sorted by (x, y)).
  const std::vector<EdgeId>& edges_of_x(VertexId x) const { return x_edges_[x]; }
  const std::vector<EdgeId>& edges_of_y(VertexId y) const { return y_edges_[y]; }
  // N(y) in ascending vertex order.
  std::vector<VertexId> neighbors_of_y(VertexId y) const;
  std::size_t degree_y(VertexId y) const { return y_edges_[y].size(); }

  bool admissible(EdgeId e, LabelId lx, LabelId ly) const;

  LcSizes sizes() const;
  // |X| + |Y| + |E| + |L| + |L'| + |Pi|
  std::size_t size() const;
  // Every x has the same degree and every y has the same degree.
  bool biregular() const;
  // Some labeling covers every edge (equivalently, with all labels on X,
  // every y has a label supported on all its edges).
  bool feasible() const;

  std::optional<LabelId> find_x_label(const std::string& name) const;
  std::optional<LabelId> find_y_label(const std::string& name) const;
  std::optional<VertexId> find_x(const std::string& name) const;
  std::optional<VertexId> find_y(const std::string& name) const;

 private:
  LcSpec spec_;
  std::vector<std::vector<LabelId>> x_allowed_, y_allowed_;
  std::vector<std::vector<EdgeId>> x_edges_, y_edges_;
  std::map<std::pair<VertexId, VertexId>, EdgeId> edge_index_;
  std::map<std::string, std::uint32_t, std::less<>> x_index_, y_index_, lx_index_, ly_index_;
};

// Sets are sorted ascending. x sets may be empty; an empty y set leaves all
// its edges uncovered (extraction from a representation can produce one).
struct Labeling {
  std::vector<std::vector<LabelId>> x;
  std::vector<std::vector<LabelId>> y;
  bool operator==(const Labeling&) const = default;
};

struct CoverReport {
  bool is_total = false;
  std::vector<EdgeId> uncovered_edges;
  Rational kappa;  // f(X) / |X|
  bool tight = false;
  std::size_t fx_total = 0;
  std::size_t fy_total = 0;
};

// Throws InputError for wrong shapes, unsorted sets, or labels a vertex may
// not carry.
void validate_labeling(const LcInstance& inst, const Labeling& f);

bool covers_edge(const LcInstance& inst, const Labeling& f, EdgeId e);
CoverReport check_cover(const LcInstance& inst, const Labeling& f);

// Keeps the lowest-id label on every y. Throws InputError when f is not a
// total cover.
Labeling tighten(const LcInstance& inst, const Labeling& f);

// Private copies (x, l) named "<x>.<l>", ids x*|L0| + l; likewise for Y.
LcInstance refine(const LcInstance& inst);
Labeling lift(const LcInstance& original, const Labeling& f0);
Labeling project(const LcInstance& original, const Labeling& f);

struct ExactCover {
  Labeling labeling;
  Rational kappa;
  std::uint64_t nodes = 0;
};

// Optimal tight total cover by enumerating tight y-assignments and solving a
// minimum set cover per x. Ties go to the lexicographically first
// y-assignment and lowest-id label sets. Throws ResourceError when the
// y-assignment count or the search nodes exceed `budget`, InputError when the
// instance admits no total cover.
ExactCover solve_exact_cover(const LcInstance& inst, std::uint64_t budget = 10'000'000);

struct ExactPacking {
  Labeling labeling;
  Rational mu;
};

// Optimal packing labeling (one label per vertex) maximizing the covered edge
// fraction. Same budget semantics.
ExactPacking solve_exact_packing(const LcInstance& inst, std::uint64_t budget = 10'000'000);

// Fraction of edges covered; throws InputError unless |f(z)| = 1 everywhere.
Rational packing_value(const LcInstance& inst, const Labeling& f);

struct Rounding {
  Labeling packing;
  bool regular = true;  // false: the weak-duality argument does not apply
};

// For every x keeps one label of f(x), drawn uniformly from the stream
// SplitMix64::stream(seed, x). Throws InputError unless f is a tight total
// cover.
Rounding round_cover_to_packing(const LcInstance& inst, const Labeling& f, std::uint64_t seed);

// Exact expected covered fraction of round_cover_to_packing.
Rational rounding_expectation(const LcInstance& inst, const Labeling& f);

// SAT-to-Label-Cover: X has a vertex per variable occurrence, Y a vertex per
// clause, and each clause vertex is joined to every occurrence of every
// variable it mentions. Clauses are DIMACS literal lists that must all mention
// exactly k distinct variables. Throws InputError otherwise or when empty.
LcInstance sat_to_lc(const std::vector<std::vector<int>>& clauses);

// Three x-vertices around one y-vertex with two labels per side.
LcInstance claw_instance();

struct RandomLcParams {
  std::size_t r = 4, s = 3;
  std::size_t lambda = 2, lambda_prime = 2;
  double edge_probability = 0.5;
  double pair_probability = 0.4;
};

// Random feasible unrefined instance: planted y-labels guarantee a total
// cover; every vertex gets at least one edge.
LcInstance random_instance(const RandomLcParams& params, std::uint64_t seed);

// Random bi-regular instance: x-degree dx, y-degree dy with r*dx == s*dy and
// dx <= s. Throws InputError for impossible shapes.
LcInstance random_biregular_instance(std::size_t r, std::size_t dx, std::size_t s, std::size_t lambda,
                                     std::size_t lambda_prime, double pair_probability, std::uint64_t seed);

}  // namespace hornforge
