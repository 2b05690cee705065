#pragma once

// Label Cover -> pure Horn CNF. For a refined instance with r, s, m, lambda,
// lambda', pi (see LcSizes) and parameters d, t the canonical formula Phi has
//
//   (a)  u(l) & u(l') -> e(x,y,l',i)            (x,y) in E, (l,l') in Pi_(x,y), i in [d]
//   (b)  AND_{z in N(y)} e(z,y,l',i) -> e(x,y,i) (x,y) in E, l' in L'_y, i in [d]
//   (c)  e(x,y,i) -> e(x,y,l',i)                 (x,y) in E, l' in L'_y, i in [d]
//   (d)  AND_{i,(x,y)} e(x,y,i) -> u(l)          l in L u L'
//   (e)  v(j) -> u(l)                            j in [t], l in L u L'
//
// and Psi is (a)-(d). Clauses are emitted family by family, each family in
// ascending (edge, label, i) order. Variables are created as u(l) (x-labels,
// then y-labels), e(x,y,i), e(x,y,l',i), then v(j), so Psi's registry is a
// prefix of Phi's. Names: u[x1.l1], e[x1,y,3], e[x1,y,y.l2',3], v[7].

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hornforge/horn.hpp"
#include "hornforge/label_cover.hpp"

namespace hornforge {

enum class Family : std::uint8_t { a, b, b1, b2, b3, b4, c, d, d1, d2, e, e_prime };
const char* family_tag(Family f);

enum class Construction : std::uint8_t { cnf, cnf3 };

struct ReductionParams {
  std::size_t d = 1;
  std::size_t t = 1;
  bool d_overridden = false;
};

// 1 + r*lambda + s*lambda'
std::size_t default_d(const LcInstance& inst);

// d defaults to default_d(inst); any other value needs allow_override.
// Throws InputError on t == 0, d == 0 or an unflagged override.
ReductionParams make_params(const LcInstance& inst, std::size_t t, std::optional<std::size_t> d = std::nullopt,
                            bool allow_override = false);

enum class RoleKind : std::uint8_t { u_x, u_y, edge, edge_label, list_node, tree_node, v };

// u_x / u_y: a = label. edge: a = edge. edge_label: a = edge, b = y-label.
// list_node: a = beta, b = edge, c = y-label. tree_node: a = k. v: i = j.
// Indices i (and j) are 1-based.
struct Role {
  RoleKind kind = RoleKind::v;
  std::uint32_t a = 0, b = 0, c = 0, i = 0;
  auto operator<=>(const Role&) const = default;
};

std::string role_name(const LcInstance& inst, const Role& role);

class GadgetVarMap {
 public:
  VarId add(VarRegistry& registry, const LcInstance& inst, const Role& role);
  // Leaves of a tree share the variable of their edge.
  void alias(const Role& role, VarId id) { index_[role] = id; }

  std::optional<VarId> find(const Role& role) const;
  VarId at(const Role& role) const;
  const Role& role(VarId id) const { return roles_[id]; }
  std::size_t size() const { return roles_.size(); }

  VarId u_x(LabelId l) const { return at({RoleKind::u_x, l}); }
  VarId u_y(LabelId l) const { return at({RoleKind::u_y, l}); }
  VarId edge(EdgeId e, std::uint32_t i) const { return at({RoleKind::edge, e, 0, 0, i}); }
  VarId edge_label(EdgeId e, LabelId ly, std::uint32_t i) const { return at({RoleKind::edge_label, e, ly, 0, i}); }
  VarId v(std::uint32_t j) const { return at({RoleKind::v, 0, 0, 0, j}); }

  // V_g: every variable except the v(j).
  VarSet core_vars() const;
  VarSet v_vars() const;

 private:
  std::vector<Role> roles_;
  std::map<Role, VarId> index_;
};

struct ClauseTag {
  Family family = Family::a;
  std::uint32_t i = 0;  // gadget copy, 0 when not indexed
  std::uint32_t j = 0;  // v(j) copy, 0 when not indexed
};

struct ReductionArtifact {
  Construction construction = Construction::cnf;
  LcInstance inst;
  ReductionParams params;
  HornCnf phi{};
  HornCnf psi{};
  GadgetVarMap varmap{};
  std::vector<ClauseTag> tags{};  // parallel to phi.clauses()
  std::map<std::string, std::size_t> family_counts{};
  // 3-CNF only: N(y) order per y, and the label chain (side 0 = x, 1 = y).
  std::vector<std::vector<VertexId>> neighbor_order{};
  std::vector<std::pair<int, LabelId>> label_chain{};
};

// Throws InputError for unrefined instances or inconsistent params.
ReductionArtifact build_cnf(const LcInstance& inst, const ReductionParams& params);

struct CnfSizes {
  std::size_t phi_c = 0, phi_v = 0, psi_c = 0, psi_v = 0;
  std::map<std::string, std::size_t> family_counts;
};

// Closed-form counts for build_cnf.
CnfSizes cnf_size_formulas(const LcInstance& inst, const ReductionParams& params);

// Psi plus v(j) -> u(l) for every j and every label of f, no cover checks.
HornCnf phi_with_labels(const ReductionArtifact& art, const Labeling& f);
// Same, but f must be a tight total cover of art.inst (InputError otherwise).
HornCnf build_phi_f(const ReductionArtifact& art, const Labeling& f);

struct ExtractedCover {
  std::uint32_t j = 0;
  Labeling labeling;
  CoverReport report;
  bool y_at_most_one = true;  // |f_j(y)| <= 1 for every y
};

struct Extraction {
  std::vector<ExtractedCover> covers;  // one per j in [t]
  // Clauses involving some v(j) that are not of the form v(j) -> u(l).
  std::vector<std::string> warnings;
};

// S_j = {l : v(j) -> u(l) in rep}; f_j(z) = S_j restricted to z's labels. rep is
// matched to the artifact by variable name (InputError on unknown names).
Extraction extract_covers(const ReductionArtifact& art, const HornCnf& rep);

struct SandwichReport {
  Rational lower;        // |Psi|_c / (lambda + lambda')
  Rational middle;       // |rep|_c - t(kappa r + s)
  Rational upper;        // |Psi|_c
  bool lower_ok = false;
  std::optional<bool> upper_ok;  // only checked for clause-minimum reps
  std::string note;
};

SandwichReport verify_sandwich(const ReductionArtifact& art, const HornCnf& rep, const Rational& kappa,
                               bool rep_is_minimum);

}  // namespace hornforge
