#include "hornforge/reduction_cnf.hpp"

#include <algorithm>

#include "hornforge/errors.hpp"
#include "hornforge/horn_io.hpp"

namespace hornforge {

const char* family_tag(Family f) {
  switch (f) {
    case Family::a: return "a";
    case Family::b: return "b";
    case Family::b1: return "b1";
    case Family::b2: return "b2";
    case Family::b3: return "b3";
    case Family::b4: return "b4";
    case Family::c: return "c";
    case Family::d: return "d";
    case Family::d1: return "d1";
    case Family::d2: return "d2";
    case Family::e: return "e";
    case Family::e_prime: return "e'";
  }
  return "?";
}

std::size_t default_d(const LcInstance& inst) { return 1 + inst.num_x_labels() + inst.num_y_labels(); }

ReductionParams make_params(const LcInstance& inst, std::size_t t, std::optional<std::size_t> d, bool allow_override) {
  if (t == 0) throw InputError("t must be positive");
  ReductionParams p;
  p.t = t;
  p.d = d.value_or(default_d(inst));
  if (p.d == 0) throw InputError("d must be positive");
  p.d_overridden = p.d != default_d(inst);
  if (p.d_overridden && !allow_override) {
    throw InputError("d = " + std::to_string(p.d) + " differs from the default " + std::to_string(default_d(inst)) +
                     "; pass the override flag to allow it");
  }
  return p;
}

std::string role_name(const LcInstance& inst, const Role& r) {
  auto edge_part = [&](std::uint32_t e) {
    const auto [x, y] = inst.edge(e);
    return inst.x_name(x) + "," + inst.y_name(y);
  };
  const std::string i = std::to_string(r.i);
  switch (r.kind) {
    case RoleKind::u_x: return "u[" + inst.x_label(r.a) + "]";
    case RoleKind::u_y: return "u[" + inst.y_label(r.a) + "]";
    case RoleKind::edge: return "e[" + edge_part(r.a) + "," + i + "]";
    case RoleKind::edge_label: return "e[" + edge_part(r.a) + "," + inst.y_label(r.b) + "," + i + "]";
    case RoleKind::list_node:
      return "e[" + std::to_string(r.a) + "," + edge_part(r.b) + "," + inst.y_label(r.c) + "," + i + "]";
    case RoleKind::tree_node: return "e[" + std::to_string(r.a) + "," + i + "]";
    case RoleKind::v: return "v[" + i + "]";
  }
  return "?";
}

VarId GadgetVarMap::add(VarRegistry& registry, const LcInstance& inst, const Role& role) {
  const VarId id = registry.add(role_name(inst, role));
  if (id != roles_.size()) throw InvariantError("gadget map out of sync with registry");
  roles_.push_back(role);
  index_.emplace(role, id);
  return id;
}

std::optional<VarId> GadgetVarMap::find(const Role& role) const {
  auto it = index_.find(role);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

VarId GadgetVarMap::at(const Role& role) const {
  auto id = find(role);
  if (!id) throw InvariantError("unknown gadget role");
  return *id;
}

VarSet GadgetVarMap::core_vars() const {
  VarSet out;
  for (VarId v = 0; v < roles_.size(); ++v) {
    if (roles_[v].kind != RoleKind::v) out.push_back(v);
  }
  return out;
}

VarSet GadgetVarMap::v_vars() const {
  VarSet out;
  for (VarId v = 0; v < roles_.size(); ++v) {
    if (roles_[v].kind == RoleKind::v) out.push_back(v);
  }
  return out;
}

namespace {

void check_instance(const LcInstance& inst, const ReductionParams& params) {
  if (!inst.refined()) throw InputError("the reduction needs a refined instance (run lc-refine first)");
  if (params.t == 0 || params.d == 0) throw InputError("d and t must be positive");
  if ((params.d != default_d(inst)) != params.d_overridden) {
    throw InputError("d differs from its default without the override flag");
  }
}

}  // namespace

ReductionArtifact build_cnf(const LcInstance& inst, const ReductionParams& params) {
  check_instance(inst, params);
  ReductionArtifact art{Construction::cnf, inst, params};
  const auto d = static_cast<std::uint32_t>(params.d);
  const auto t = static_cast<std::uint32_t>(params.t);

  VarRegistry reg;
  GadgetVarMap& vm = art.varmap;
  for (LabelId l = 0; l < inst.num_x_labels(); ++l) vm.add(reg, inst, {RoleKind::u_x, l});
  for (LabelId l = 0; l < inst.num_y_labels(); ++l) vm.add(reg, inst, {RoleKind::u_y, l});
  for (EdgeId e = 0; e < inst.num_edges(); ++e) {
    for (std::uint32_t i = 1; i <= d; ++i) vm.add(reg, inst, {RoleKind::edge, e, 0, 0, i});
  }
  for (EdgeId e = 0; e < inst.num_edges(); ++e) {
    for (LabelId ly : inst.labels_of_y(inst.edge(e).second)) {
      for (std::uint32_t i = 1; i <= d; ++i) vm.add(reg, inst, {RoleKind::edge_label, e, ly, 0, i});
    }
  }
  VarRegistry core = reg;
  for (std::uint32_t j = 1; j <= t; ++j) vm.add(reg, inst, {RoleKind::v, 0, 0, 0, j});

  art.phi = HornCnf(reg);
  auto emit = [&](std::vector<VarId> body, VarId head, ClauseTag tag) {
    art.phi.add(Clause::make(std::move(body), head));
    art.tags.push_back(tag);
    ++art.family_counts[family_tag(tag.family)];
  };

  for (EdgeId e = 0; e < inst.num_edges(); ++e) {
    for (const LabelPair& p : inst.constraint(e)) {
      for (std::uint32_t i = 1; i <= d; ++i) {
        emit({vm.u_x(p.x), vm.u_y(p.y)}, vm.edge_label(e, p.y, i), {Family::a, i});
      }
    }
  }
  for (EdgeId e = 0; e < inst.num_edges(); ++e) {
    const VertexId y = inst.edge(e).second;
    for (LabelId ly : inst.labels_of_y(y)) {
      for (std::uint32_t i = 1; i <= d; ++i) {
        std::vector<VarId> body;
        for (EdgeId f : inst.edges_of_y(y)) body.push_back(vm.edge_label(f, ly, i));
        emit(std::move(body), vm.edge(e, i), {Family::b, i});
      }
    }
  }
  for (EdgeId e = 0; e < inst.num_edges(); ++e) {
    for (LabelId ly : inst.labels_of_y(inst.edge(e).second)) {
      for (std::uint32_t i = 1; i <= d; ++i) emit({vm.edge(e, i)}, vm.edge_label(e, ly, i), {Family::c, i});
    }
  }
  std::vector<VarId> all_edges;
  for (EdgeId e = 0; e < inst.num_edges(); ++e) {
    for (std::uint32_t i = 1; i <= d; ++i) all_edges.push_back(vm.edge(e, i));
  }
  for (LabelId l = 0; l < inst.num_x_labels(); ++l) emit(all_edges, vm.u_x(l), {Family::d});
  for (LabelId l = 0; l < inst.num_y_labels(); ++l) emit(all_edges, vm.u_y(l), {Family::d});

  art.psi = HornCnf(core);
  for (const Clause& c : art.phi.clauses()) art.psi.add(c);

  for (std::uint32_t j = 1; j <= t; ++j) {
    for (LabelId l = 0; l < inst.num_x_labels(); ++l) emit({vm.v(j)}, vm.u_x(l), {Family::e, 0, j});
    for (LabelId l = 0; l < inst.num_y_labels(); ++l) emit({vm.v(j)}, vm.u_y(l), {Family::e, 0, j});
  }
  return art;
}

CnfSizes cnf_size_formulas(const LcInstance& inst, const ReductionParams& params) {
  const LcSizes z = inst.sizes();
  const std::size_t d = params.d, t = params.t;
  const std::size_t labels = z.r * z.lambda + z.s * z.lambda_prime;
  CnfSizes out;
  out.family_counts = {{"a", d * z.pi},
                       {"b", d * z.m * z.lambda_prime},
                       {"c", d * z.m * z.lambda_prime},
                       {"d", labels},
                       {"e", t * labels}};
  out.phi_c = (t + 1) * labels + d * (z.pi + 2 * z.m * z.lambda_prime);
  out.phi_v = t + d * z.m * (z.lambda_prime + 1) + labels;
  out.psi_c = labels + d * (z.pi + 2 * z.m * z.lambda_prime);
  out.psi_v = d * z.m * (z.lambda_prime + 1) + labels;
  return out;
}

HornCnf phi_with_labels(const ReductionArtifact& art, const Labeling& f) {
  validate_labeling(art.inst, f);
  HornCnf out = art.phi.empty_like();
  for (const Clause& c : art.psi.clauses()) out.add(c);
  for (std::uint32_t j = 1; j <= art.params.t; ++j) {
    const VarId v = art.varmap.v(j);
    for (const auto& set : f.x) {
      for (LabelId l : set) out.add({v}, art.varmap.u_x(l));
    }
    for (const auto& set : f.y) {
      for (LabelId l : set) out.add({v}, art.varmap.u_y(l));
    }
  }
  return out;
}

HornCnf build_phi_f(const ReductionArtifact& art, const Labeling& f) {
  const CoverReport rep = check_cover(art.inst, f);
  if (!rep.is_total || !rep.tight) throw InputError("build_phi_f needs a tight total cover");
  return phi_with_labels(art, f);
}

Extraction extract_covers(const ReductionArtifact& art, const HornCnf& rep_in) {
  const HornCnf rep = remap_to(rep_in, art.phi.registry());
  const GadgetVarMap& vm = art.varmap;
  Extraction out;
  for (std::uint32_t j = 1; j <= art.params.t; ++j) {
    ExtractedCover ec;
    ec.j = j;
    ec.labeling.x.assign(art.inst.num_x(), {});
    ec.labeling.y.assign(art.inst.num_y(), {});
    out.covers.push_back(std::move(ec));
  }
  for (const Clause& c : rep.clauses()) {
    const bool v_in_body = std::any_of(c.body.begin(), c.body.end(),
                                       [&](VarId b) { return vm.role(b).kind == RoleKind::v; });
    const RoleKind hk = vm.role(c.head).kind;
    if (!v_in_body && hk != RoleKind::v) continue;
    if (c.body.size() == 1 && vm.role(c.body[0]).kind == RoleKind::v && (hk == RoleKind::u_x || hk == RoleKind::u_y)) {
      auto& lab = out.covers[vm.role(c.body[0]).i - 1].labeling;
      const LabelId l = vm.role(c.head).a;
      if (hk == RoleKind::u_x) {
        lab.x[art.inst.spec().x_label_owner[l]].push_back(l);
      } else {
        lab.y[art.inst.spec().y_label_owner[l]].push_back(l);
      }
      continue;
    }
    out.warnings.push_back("clause '" + format_clause(rep, c) + "' involves a v-variable but is not v(j) -> u(l)");
  }
  for (auto& ec : out.covers) {
    for (auto* side : {&ec.labeling.x, &ec.labeling.y}) {
      for (auto& set : *side) std::sort(set.begin(), set.end());
    }
    ec.report = check_cover(art.inst, ec.labeling);
    ec.y_at_most_one =
        std::all_of(ec.labeling.y.begin(), ec.labeling.y.end(), [](const auto& s) { return s.size() <= 1; });
  }
  return out;
}

SandwichReport verify_sandwich(const ReductionArtifact& art, const HornCnf& rep, const Rational& kappa,
                               bool rep_is_minimum) {
  const LcSizes z = art.inst.sizes();
  const auto psi_c = static_cast<std::int64_t>(art.psi.clause_count());
  const Rational amplified = Rational(static_cast<std::int64_t>(art.params.t)) *
                             (kappa * static_cast<std::int64_t>(z.r) + static_cast<std::int64_t>(z.s));
  SandwichReport out;
  out.lower = Rational(psi_c, static_cast<std::int64_t>(z.lambda + z.lambda_prime));
  out.middle = Rational(static_cast<std::int64_t>(rep.clause_count())) - amplified;
  out.upper = Rational(psi_c);
  out.lower_ok = out.lower <= out.middle;
  if (rep_is_minimum) {
    out.upper_ok = out.middle <= out.upper;
  } else {
    out.note = "upper bound skipped: representation is not known to be clause-minimum";
  }
  return out;
}

}  // namespace hornforge
