#include "hornforge/reduction_3cnf.hpp"

#include <algorithm>

#include "hornforge/errors.hpp"

namespace hornforge {

ReductionArtifact build_3cnf(const LcInstance& inst, std::size_t t_count) {
  const ReductionParams params = make_params(inst, t_count);
  if (!inst.refined()) throw InputError("the reduction needs a refined instance (run lc-refine first)");
  ReductionArtifact art{Construction::cnf3, inst, params};
  const auto d = static_cast<std::uint32_t>(params.d);
  const auto t = static_cast<std::uint32_t>(params.t);
  const auto m = static_cast<std::uint32_t>(inst.num_edges());
  const LcSpec& spec = inst.spec();

  for (VertexId y = 0; y < inst.num_y(); ++y) art.neighbor_order.push_back(inst.neighbors_of_y(y));
  {
    std::vector<LabelId> xs(inst.num_x_labels()), ys(inst.num_y_labels());
    for (LabelId l = 0; l < xs.size(); ++l) xs[l] = l;
    for (LabelId l = 0; l < ys.size(); ++l) ys[l] = l;
    std::stable_sort(xs.begin(), xs.end(), [&](LabelId a, LabelId b) { return spec.x_label_owner[a] < spec.x_label_owner[b]; });
    std::stable_sort(ys.begin(), ys.end(), [&](LabelId a, LabelId b) { return spec.y_label_owner[a] < spec.y_label_owner[b]; });
    for (LabelId l : xs) art.label_chain.emplace_back(0, l);
    for (LabelId l : ys) art.label_chain.emplace_back(1, l);
  }

  VarRegistry reg;
  GadgetVarMap& vm = art.varmap;
  for (LabelId l = 0; l < inst.num_x_labels(); ++l) vm.add(reg, inst, {RoleKind::u_x, l});
  for (LabelId l = 0; l < inst.num_y_labels(); ++l) vm.add(reg, inst, {RoleKind::u_y, l});
  for (EdgeId e = 0; e < m; ++e) {
    for (std::uint32_t i = 1; i <= d; ++i) vm.add(reg, inst, {RoleKind::edge, e, 0, 0, i});
  }
  for (EdgeId e = 0; e < m; ++e) {
    for (LabelId ly : inst.labels_of_y(inst.edge(e).second)) {
      for (std::uint32_t i = 1; i <= d; ++i) vm.add(reg, inst, {RoleKind::edge_label, e, ly, 0, i});
    }
  }
  for (EdgeId e = 0; e < m; ++e) {
    const VertexId y = inst.edge(e).second;
    const auto dg = static_cast<std::uint32_t>(inst.degree_y(y));
    if (dg < 3) continue;
    for (LabelId ly : inst.labels_of_y(y)) {
      for (std::uint32_t i = 1; i <= d; ++i) {
        for (std::uint32_t beta = 1; beta <= dg - 2; ++beta) vm.add(reg, inst, {RoleKind::list_node, beta, e, ly, i});
      }
    }
  }
  for (std::uint32_t i = 1; i <= d; ++i) {
    for (std::uint32_t k = 1; k < m; ++k) vm.add(reg, inst, {RoleKind::tree_node, k, 0, 0, i});
    for (std::uint32_t k = m; k <= 2 * m - 1; ++k) vm.alias({RoleKind::tree_node, k, 0, 0, i}, vm.edge(k - m, i));
  }
  VarRegistry core = reg;
  for (std::uint32_t j = 1; j <= t; ++j) vm.add(reg, inst, {RoleKind::v, 0, 0, 0, j});

  art.phi = HornCnf(reg);
  auto emit = [&](std::vector<VarId> body, VarId head, ClauseTag tag) {
    art.phi.add(Clause::make(std::move(body), head));
    art.tags.push_back(tag);
    ++art.family_counts[family_tag(tag.family)];
  };
  auto tree = [&](std::uint32_t k, std::uint32_t i) { return vm.at({RoleKind::tree_node, k, 0, 0, i}); };
  auto list = [&](std::uint32_t beta, EdgeId e, LabelId ly, std::uint32_t i) {
    return vm.at({RoleKind::list_node, beta, e, ly, i});
  };

  for (EdgeId e = 0; e < m; ++e) {
    for (const LabelPair& p : inst.constraint(e)) {
      for (std::uint32_t i = 1; i <= d; ++i) emit({vm.u_x(p.x), vm.u_y(p.y)}, vm.edge_label(e, p.y, i), {Family::a, i});
    }
  }
  // Neighbor edges of y in N(y) order: edges_of_y is sorted by (x, y), i.e. by x.
  for (Family fam : {Family::b1, Family::b2, Family::b3, Family::b4}) {
    for (EdgeId e = 0; e < m; ++e) {
      const VertexId y = inst.edge(e).second;
      const auto& nbr = inst.edges_of_y(y);
      const auto dg = static_cast<std::uint32_t>(nbr.size());
      if ((fam == Family::b1) != (dg <= 2)) continue;
      for (LabelId ly : inst.labels_of_y(y)) {
        for (std::uint32_t i = 1; i <= d; ++i) {
          auto z = [&](std::uint32_t q) { return vm.edge_label(nbr[q - 1], ly, i); };
          switch (fam) {
            case Family::b1: {
              std::vector<VarId> body;
              for (std::uint32_t q = 1; q <= dg; ++q) body.push_back(z(q));
              emit(std::move(body), vm.edge(e, i), {fam, i});
              break;
            }
            case Family::b2:
              emit({z(1), z(2)}, list(1, e, ly, i), {fam, i});
              break;
            case Family::b3:
              for (std::uint32_t beta = 1; beta + 3 <= dg; ++beta) {
                emit({z(beta + 2), list(beta, e, ly, i)}, list(beta + 1, e, ly, i), {fam, i});
              }
              break;
            default:
              emit({z(dg), list(dg - 2, e, ly, i)}, vm.edge(e, i), {fam, i});
              break;
          }
        }
      }
    }
  }
  for (EdgeId e = 0; e < m; ++e) {
    for (LabelId ly : inst.labels_of_y(inst.edge(e).second)) {
      for (std::uint32_t i = 1; i <= d; ++i) emit({vm.edge(e, i)}, vm.edge_label(e, ly, i), {Family::c, i});
    }
  }
  for (std::uint32_t i = 1; i <= d; ++i) {
    for (std::uint32_t k = 1; k < m; ++k) emit({tree(2 * k, i), tree(2 * k + 1, i)}, tree(k, i), {Family::d1, i});
  }
  for (std::uint32_t a = 1; a < d; ++a) {
    const auto [side, l] = art.label_chain[a - 1];
    emit({tree(1, a), tree(1, a + 1)}, side == 0 ? vm.u_x(l) : vm.u_y(l), {Family::d2, a});
  }

  art.psi = HornCnf(core);
  for (const Clause& c : art.phi.clauses()) art.psi.add(c);

  for (std::uint32_t j = 1; j <= t; ++j) {
    for (LabelId l = 0; l < inst.num_x_labels(); ++l) emit({vm.v(j)}, vm.u_x(l), {Family::e, 0, j});
    for (LabelId l = 0; l < inst.num_y_labels(); ++l) emit({vm.v(j)}, vm.u_y(l), {Family::e, 0, j});
  }
  return art;
}

std::map<std::size_t, std::size_t> degree_histogram(const HornCnf& cnf) {
  std::map<std::size_t, std::size_t> h;
  for (const Clause& c : cnf.clauses()) ++h[c.degree()];
  return h;
}

LiteralRelation literal_count_relation(const HornCnf& cnf) {
  LiteralRelation out;
  out.clauses = cnf.clause_count();
  out.literals = cnf.literal_count();
  if (out.literals < 2 * out.clauses || out.literals > 3 * out.clauses) {
    throw InvariantError("literal count " + std::to_string(out.literals) + " outside [2, 3] x " +
                         std::to_string(out.clauses) + " clauses");
  }
  out.ratio = out.clauses == 0 ? Rational(0)
                               : Rational(static_cast<std::int64_t>(out.literals), static_cast<std::int64_t>(out.clauses));
  return out;
}

Cnf3Sizes cnf3_exact_sizes(const LcInstance& inst, std::size_t t) {
  const LcSizes z = inst.sizes();
  const std::size_t d = default_d(inst);
  const std::size_t labels = z.r * z.lambda + z.s * z.lambda_prime;
  std::size_t b1 = 0, b2 = 0, b3 = 0, b4 = 0, list_nodes = 0;
  for (EdgeId e = 0; e < z.m; ++e) {
    const std::size_t dg = inst.degree_y(inst.edge(e).second);
    const std::size_t per = d * z.lambda_prime;
    if (dg <= 2) {
      b1 += per;
    } else {
      b2 += per;
      b3 += per * (dg - 3);
      b4 += per;
      list_nodes += per * (dg - 2);
    }
  }
  Cnf3Sizes out;
  out.family_counts = {{"a", d * z.pi}, {"c", d * z.m * z.lambda_prime}, {"d1", d * (z.m - 1)}, {"d2", d - 1},
                       {"e", t * labels}};
  for (auto [tag, n] : {std::pair<const char*, std::size_t>{"b1", b1}, {"b2", b2}, {"b3", b3}, {"b4", b4}}) {
    if (n != 0) out.family_counts[tag] = n;
  }
  if (z.m == 1) out.family_counts.erase("d1");
  if (d == 1) out.family_counts.erase("d2");
  out.b_tilde = b1 + b2 + b3 + b4;
  out.d_tilde = d * (z.m - 1) + d - 1;
  out.psi_c = d * z.pi + out.b_tilde + d * z.m * z.lambda_prime + out.d_tilde;
  out.phi_c = out.psi_c + t * labels;
  out.psi_v = labels + d * z.m * (z.lambda_prime + 1) + list_nodes + d * (z.m - 1);
  out.phi_v = out.psi_v + t;
  return out;
}

Cnf3StatedBounds cnf3_stated_bounds(const LcInstance& inst, std::size_t t) {
  const LcSizes z = inst.sizes();
  const std::size_t d = default_d(inst);
  Cnf3StatedBounds b;
  b.clause_lower = d * (z.pi + 2 * z.m * z.lambda_prime + 2 * z.m - 1) - 1;
  b.clause_upper = d * (z.pi + z.m * z.m * z.lambda_prime + 4 * z.m);
  b.phi_v_lower = t;
  b.phi_v_upper = t + d * z.m * (z.lambda_prime + 2) + z.m * z.m * z.lambda_prime;
  b.psi_v_upper = d * z.m * (z.lambda_prime + 2) + z.m * z.m * z.lambda_prime;
  return b;
}

std::size_t cnf3_corrected_var_bound(const LcInstance& inst, std::size_t t) {
  const LcSizes z = inst.sizes();
  const std::size_t d = default_d(inst);
  return t + d * z.m * (z.lambda_prime + 2) + d * z.m * z.m * z.lambda_prime;
}

Extraction extract_covers_3cnf(const ReductionArtifact& art, const HornCnf& rep) {
  if (art.construction != Construction::cnf3) throw InputError("artifact is not a 3-CNF reduction");
  return extract_covers(art, rep);
}

}  // namespace hornforge
