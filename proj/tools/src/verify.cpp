#include "hornforge_cli/verify.hpp"

#include <algorithm>
#include <sstream>

#include "hornforge/errors.hpp"
#include "hornforge/exact_oracle.hpp"
#include "hornforge/horn_io.hpp"
#include "hornforge/lc_io.hpp"
#include "hornforge/reduction_3cnf.hpp"

namespace hornforge::cli {

const char* status_name(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::skip: return "skip";
    case Status::deviation: return "deviation";
    case Status::warn: return "warn";
  }
  return "?";
}

bool VerificationReport::ok() const { return count(Status::fail) == 0; }

std::size_t VerificationReport::count(Status s) const {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [&](const Check& c) { return c.status == s; }));
}

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const Check& c : checks) {
    nlohmann::json j = {{"name", c.name},
                        {"status", status_name(c.status)},
                        {"provenance", c.provenance},
                        {"measured", c.measured},
                        {"expected", c.expected}};
    if (!c.note.empty()) j["note"] = c.note;
    if (!c.counterexample.is_null()) j["counterexample"] = c.counterexample;
    arr.push_back(std::move(j));
  }
  nlohmann::json summary = nlohmann::json::object();
  for (Status s : {Status::pass, Status::fail, Status::skip, Status::deviation, Status::warn}) summary[status_name(s)] = count(s);
  return {{"checks", arr}, {"summary", summary}, {"ok", ok()}};
}

namespace {

std::string rat(const Rational& r) {
  return r.denominator() == 1 ? std::to_string(r.numerator())
                              : std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

nlohmann::json names(const HornCnf& cnf, const VarSet& vars) {
  nlohmann::json out = nlohmann::json::array();
  for (VarId v : vars) out.push_back(cnf.name(v));
  return out;
}

Extraction extract(const ReductionArtifact& art, const HornCnf& rep) {
  return art.construction == Construction::cnf3 ? extract_covers_3cnf(art, rep) : extract_covers(art, rep);
}

class Suite {
 public:
  Suite(const VerifyRequest& req, const Limits& limits) : req_(req), limits_(limits) {}

  VerificationReport run() {
    const LcInstance& original = *req_.instance;
    refined_ = original.refined() ? std::optional<LcInstance>() : std::optional<LcInstance>(refine(original));
    instance_checks(original);
    if (!req_.construction || *req_.construction == Construction::cnf) construction_checks(Construction::cnf);
    if (!req_.construction || *req_.construction == Construction::cnf3) construction_checks(Construction::cnf3);
    return std::move(report_);
  }

 private:
  const LcInstance& refined() const { return refined_ ? *refined_ : *req_.instance; }

  Check& add(std::string name, Status s, std::string provenance) {
    report_.checks.push_back(Check{std::move(name), s, std::move(provenance), nullptr, nullptr, {}, nullptr});
    return report_.checks.back();
  }

  void instance_checks(const LcInstance& inst) {
    Check& feas = add("lc.feasible", inst.feasible() ? Status::pass : Status::fail, "property");
    feas.measured = inst.feasible();
    feas.expected = true;
    if (!inst.feasible()) {
      feas.note = "no labeling covers every edge; cover-based checks are skipped";
      return;
    }

    try {
      const ExactCover ec = solve_exact_cover(inst, limits_.max_nodes);
      opt_ = ec;
      Check& c = add("lc.exact_cover", Status::pass, "exact-solver");
      c.measured = {{"kappa", rat(ec.kappa)}, {"nodes", ec.nodes}, {"labeling", labeling_to_json(inst, ec.labeling)}};
      const CoverReport rep = check_cover(inst, ec.labeling);
      std::size_t widest = 1;
      for (VertexId x = 0; x < inst.num_x(); ++x) widest = std::max(widest, inst.labels_of_x(x).size());
      const Rational hi(static_cast<std::int64_t>(widest));
      c.expected = {{"total", true}, {"tight", true}, {"kappa_range", {"1", rat(hi)}}};
      if (!rep.is_total || !rep.tight || ec.kappa < 1 || ec.kappa > hi) c.status = Status::fail;
    } catch (const ResourceError& err) {
      add("lc.exact_cover", Status::skip, "exact-solver").note = err.what();
    }

    // All x-labels and every y-label supported on all incident edges.
    Labeling full;
    full.x.resize(inst.num_x());
    full.y.resize(inst.num_y());
    for (VertexId x = 0; x < inst.num_x(); ++x) full.x[x] = inst.labels_of_x(x);
    for (VertexId y = 0; y < inst.num_y(); ++y) {
      for (LabelId ly : inst.labels_of_y(y)) {
        bool all = true;
        for (EdgeId e : inst.edges_of_y(y)) {
          const auto& pi = inst.constraint(e);
          all = all && std::any_of(pi.begin(), pi.end(), [&](const LabelPair& p) { return p.y == ly; });
        }
        if (all) full.y[y].push_back(ly);
      }
    }
    {
      const CoverReport before = check_cover(inst, full);
      const Labeling g = tighten(inst, full);
      const CoverReport after = check_cover(inst, g);
      Check& c = add("lc.tightening", Status::pass, "property");
      c.measured = {{"total", after.is_total}, {"tight", after.tight}, {"kappa_before", rat(before.kappa)},
                    {"kappa_after", rat(after.kappa)}};
      c.expected = {{"total", true}, {"tight", true}, {"kappa_equal", true}};
      if (!after.is_total || !after.tight || after.kappa != before.kappa) {
        c.status = Status::fail;
        c.counterexample = labeling_to_json(inst, full);
      }
    }

    if (!opt_) return;
    if (!inst.refined()) {
      const Labeling lifted = lift(inst, opt_->labeling);
      const CoverReport rep = check_cover(refined(), lifted);
      const bool round_trip = project(inst, lifted) == opt_->labeling;
      Check& c = add("lc.refinement", Status::pass, "property");
      c.measured = {{"total", rep.is_total}, {"kappa", rat(rep.kappa)}, {"round_trip", round_trip}};
      c.expected = {{"total", true}, {"kappa", rat(opt_->kappa)}, {"round_trip", true}};
      if (!rep.is_total || rep.kappa != opt_->kappa || !round_trip) c.status = Status::fail;
    }

    try {
      const ExactPacking pk = solve_exact_packing(inst, limits_.max_nodes);
      Check& c = add("lc.weak_duality", Status::pass, "exact-solver");
      const Rational bound = Rational(1) / opt_->kappa;
      c.measured = {{"mu", rat(pk.mu)}};
      c.expected = {{"mu_at_least", rat(bound)}};
      if (pk.mu < bound) {
        c.status = Status::fail;
        c.counterexample = labeling_to_json(inst, pk.labeling);
      }
    } catch (const ResourceError& err) {
      add("lc.weak_duality", Status::skip, "exact-solver").note = err.what();
    }

    {
      const Rational ex = rounding_expectation(inst, opt_->labeling);
      const Rational bound = Rational(1) / opt_->kappa;
      Check& c = add("lc.rounding_expectation", Status::pass, "closed-form");
      c.measured = {{"expectation", rat(ex)}, {"biregular", inst.biregular()}};
      c.expected = {{"at_least", rat(bound)}};
      if (ex < bound) c.status = inst.biregular() ? Status::fail : Status::warn;
      if (!inst.biregular()) c.note = "graph is not bi-regular; the bound is only guaranteed for regular graphs";
    }
  }

  void construction_checks(Construction kind) {
    const std::string pre = kind == Construction::cnf ? "cnf." : "3cnf.";
    const LcInstance& inst = refined();
    ReductionArtifact art = kind == Construction::cnf
                                ? build_cnf(inst, make_params(inst, req_.t, req_.d_override, true))
                                : build_3cnf(inst, req_.t);
    const HornCnf& phi = art.phi;

    if (req_.formula && req_.construction == kind) {
      Check& c = add(pre + "rebuild_matches", Status::pass, "construction");
      const HornCnf& given = *req_.formula;
      c.measured = {{"clauses", given.clause_count()}, {"vars", given.num_vars()}};
      c.expected = {{"clauses", phi.clause_count()}, {"vars", phi.num_vars()}};
      if (!(given.registry() == phi.registry()) || given.clauses() != phi.clauses()) {
        c.status = Status::fail;
        const std::size_t n = std::min(given.clause_count(), phi.clause_count());
        for (std::size_t k = 0; k < n; ++k) {
          if (format_clause(given, given.clauses()[k]) != format_clause(phi, phi.clauses()[k])) {
            c.counterexample = {{"index", k}, {"given", format_clause(given, given.clauses()[k])},
                                {"rebuilt", format_clause(phi, phi.clauses()[k])}};
            break;
          }
        }
      }
    }

    if (kind == Construction::cnf) {
      const CnfSizes f = cnf_size_formulas(inst, art.params);
      Check& c = add(pre + "size_identities", Status::pass, "closed-form");
      c.measured = {{"phi_c", phi.clause_count()}, {"phi_v", phi.num_vars()}, {"psi_c", art.psi.clause_count()},
                    {"psi_v", art.psi.num_vars()}, {"families", art.family_counts}};
      c.expected = {{"phi_c", f.phi_c}, {"phi_v", f.phi_v}, {"psi_c", f.psi_c}, {"psi_v", f.psi_v},
                    {"families", f.family_counts}};
      if (c.measured != c.expected) c.status = Status::fail;
    } else {
      size_checks_3cnf(pre, art);
    }

    closure_checks(pre, art);
    if (kind == Construction::cnf) {
      head_multiplicity(pre, art);
      index_symmetry(pre, art);
    }
    if (opt_) cover_checks(pre, art);
  }

  void size_checks_3cnf(const std::string& pre, const ReductionArtifact& art) {
    const LcInstance& inst = art.inst;
    const HornCnf& phi = art.phi;
    const Cnf3Sizes ex = cnf3_exact_sizes(inst, req_.t);
    {
      Check& c = add(pre + "construction_counts", Status::pass, "construction");
      c.measured = {{"phi_c", phi.clause_count()}, {"phi_v", phi.num_vars()}, {"psi_c", art.psi.clause_count()},
                    {"psi_v", art.psi.num_vars()}, {"families", art.family_counts}};
      c.expected = {{"phi_c", ex.phi_c}, {"phi_v", ex.phi_v}, {"psi_c", ex.psi_c}, {"psi_v", ex.psi_v},
                    {"families", ex.family_counts}};
      if (c.measured != c.expected) c.status = Status::fail;
    }
    {
      const auto hist = degree_histogram(phi);
      Check& c = add(pre + "degree_bound", Status::pass, "property");
      nlohmann::json h = nlohmann::json::object();
      for (auto [deg, n] : hist) h[std::to_string(deg)] = n;
      c.measured = h;
      c.expected = {{"degrees", {2, 3}}};
      for (auto [deg, n] : hist) {
        if (deg < 2 || deg > 3) c.status = Status::fail;
      }
    }
    {
      Check& c = add(pre + "literal_ratio", Status::pass, "property");
      c.measured = {{"clauses", phi.clause_count()}, {"literals", phi.literal_count()}};
      c.expected = {{"literals_between", {2 * phi.clause_count(), 3 * phi.clause_count()}}};
      if (phi.literal_count() < 2 * phi.clause_count() || phi.literal_count() > 3 * phi.clause_count()) {
        c.status = Status::fail;
      }
    }
    const Cnf3StatedBounds b = cnf3_stated_bounds(inst, req_.t);
    const LcSizes z = inst.sizes();
    const std::size_t labels = z.r * z.lambda + z.s * z.lambda_prime;
    {
      const std::size_t mid = phi.clause_count() - req_.t * labels;
      Check& c = add(pre + "published_clause_bounds", Status::pass, "published-bound");
      c.measured = {{"phi_c_minus_e", mid}, {"psi_c", art.psi.clause_count()}};
      c.expected = {{"lower", b.clause_lower}, {"upper", b.clause_upper}};
      if (mid < b.clause_lower || mid > b.clause_upper || art.psi.clause_count() < b.clause_lower ||
          art.psi.clause_count() > b.clause_upper) {
        c.status = Status::deviation;
        c.note = "the lower bound assumes d(2m-1)-1 tree clauses and 2m lambda' list clauses; the construction emits "
                 "d(m-1)+d-1 and d lambda' sum(dg(y)-1), see construction_counts";
      }
    }
    {
      Check& c = add(pre + "published_var_bounds", Status::pass, "published-bound");
      c.measured = {{"phi_v", phi.num_vars()}, {"psi_v", art.psi.num_vars()}};
      c.expected = {{"phi_v", {b.phi_v_lower, b.phi_v_upper}}, {"psi_v_upper", b.psi_v_upper}};
      if (phi.num_vars() < b.phi_v_lower || phi.num_vars() > b.phi_v_upper || art.psi.num_vars() > b.psi_v_upper) {
        c.status = Status::deviation;
        c.note = "the m^2 lambda' term counts list nodes of one gadget copy; with d copies it is d m^2 lambda', see "
                 "corrected_var_bound";
      }
    }
    {
      const std::size_t ub = cnf3_corrected_var_bound(inst, req_.t);
      Check& c = add(pre + "corrected_var_bound", Status::pass, "closed-form");
      c.measured = {{"phi_v", phi.num_vars()}};
      c.expected = {{"at_most", ub}};
      if (phi.num_vars() > ub) c.status = Status::fail;
    }
  }

  void closure_checks(const std::string& pre, const ReductionArtifact& art) {
    const HornCnf& phi = art.phi;
    const VarSet core = art.varmap.core_vars();
    ForwardChainer fc(phi);
    {
      Check& c = add(pre + "closure_from_v", Status::pass, "forward-chaining");
      nlohmann::json sizes = nlohmann::json::array();
      for (std::uint32_t j = 1; j <= art.params.t; ++j) {
        const VarId v = art.varmap.v(j);
        const VarId q[] = {v};
        const VarSet got = fc.closure(q);
        VarSet want = core;
        want.insert(std::upper_bound(want.begin(), want.end(), v), v);
        sizes.push_back(got.size());
        if (got != want && c.status == Status::pass) {
          c.status = Status::fail;
          VarSet missing;
          std::set_difference(want.begin(), want.end(), got.begin(), got.end(), std::back_inserter(missing));
          c.counterexample = {{"j", j}, {"missing", names(phi, missing)}};
        }
      }
      c.measured = {{"closure_sizes", sizes}};
      c.expected = {{"closure_size", core.size() + 1}};
    }
    {
      Check& c = add(pre + "vg_closed", is_closed_under_fc(phi, core) ? Status::pass : Status::fail, "forward-chaining");
      c.measured = c.status == Status::pass;
      c.expected = true;
    }
    {
      const HornCnf comp = exclusive_component(phi, core);
      Check& c = add(pre + "exclusive_component", Status::pass, "construction");
      c.measured = {{"clauses", comp.clause_count()}};
      c.expected = {{"clauses", art.psi.clause_count()}};
      if (comp.clauses() != art.psi.clauses()) c.status = Status::fail;
    }
    if (phi.num_vars() <= limits_.fc_subset_cutoff) {
      try {
        const ExclusivityCheck ex = verify_exclusive_family(phi, core, 100000, limits_.fc_subset_cutoff);
        Check& c = add(pre + "exclusivity_bruteforce", ex.exclusive ? Status::pass : Status::fail, "brute-force");
        c.measured = {{"exclusive", ex.exclusive}, {"closure_size", ex.closure_size}};
        c.expected = {{"exclusive", true}};
        if (ex.counterexample) {
          c.counterexample = {format_clause(phi, (*ex.counterexample)[0]), format_clause(phi, (*ex.counterexample)[1]),
                              format_clause(phi, (*ex.counterexample)[2])};
        }
      } catch (const ResourceError& err) {
        add(pre + "exclusivity_bruteforce", Status::skip, "brute-force").note = err.what();
      }
    } else {
      add(pre + "exclusivity_bruteforce", Status::skip, "brute-force").note =
          std::to_string(phi.num_vars()) + " variables exceed fc_subset_cutoff = " + std::to_string(limits_.fc_subset_cutoff);
    }
  }

  void head_multiplicity(const std::string& pre, const ReductionArtifact& art) {
    const LcSizes z = art.inst.sizes();
    std::vector<std::size_t> heads(art.psi.num_vars(), 0);
    for (const Clause& c : art.psi.clauses()) ++heads[c.head];
    const auto top = std::max_element(heads.begin(), heads.end());
    Check& c = add(pre + "head_multiplicity", Status::pass, "property");
    c.measured = {{"max_heads", *top}};
    c.expected = {{"at_most", z.lambda + z.lambda_prime}};
    if (*top > z.lambda + z.lambda_prime) {
      c.status = Status::fail;
      c.counterexample = {{"variable", art.psi.name(static_cast<VarId>(top - heads.begin()))}};
    }
  }

  // FC from {v(1)} over copy i alone (families a-c of copy i plus the v(1)
  // clauses) reaches the same edges for every i.
  void index_symmetry(const std::string& pre, const ReductionArtifact& art) {
    ForwardChainer fc(art.phi);
    const VarId q[] = {art.varmap.v(1)};
    std::vector<char> reference;
    Check& c = add(pre + "index_symmetry", Status::pass, "forward-chaining");
    for (std::uint32_t i = 1; i <= art.params.d; ++i) {
      for (std::size_t k = 0; k < art.tags.size(); ++k) {
        const ClauseTag& tag = art.tags[k];
        const bool on = (tag.family == Family::e && tag.j == 1) ||
                        ((tag.family == Family::a || tag.family == Family::b || tag.family == Family::c) && tag.i == i);
        fc.set_active(k, on);
      }
      std::vector<char> in;
      fc.closure(q, in);
      std::vector<char> reached;
      for (EdgeId e = 0; e < art.inst.num_edges(); ++e) reached.push_back(in[art.varmap.edge(e, i)]);
      if (i == 1) {
        reference = reached;
      } else if (reached != reference && c.status == Status::pass) {
        c.status = Status::fail;
        c.counterexample = {{"i", i}};
      }
    }
    std::size_t covered = static_cast<std::size_t>(std::count(reference.begin(), reference.end(), 1));
    c.measured = {{"edges_reached_per_copy", covered}};
    c.expected = {{"same_for_every_copy", true}};
  }

  void cover_checks(const std::string& pre, const ReductionArtifact& art) {
    const LcInstance& inst = art.inst;
    const Labeling f = req_.instance->refined() ? opt_->labeling : lift(*req_.instance, opt_->labeling);
    {
      const HornCnf phi_f = build_phi_f(art, f);
      const bool eq = equivalent(phi_f, art.phi);
      Check& c = add(pre + "phi_f_equivalence", eq ? Status::pass : Status::fail, "forward-chaining");
      c.measured = {{"equivalent", eq}, {"clauses", phi_f.clause_count()}};
      const std::size_t t = art.params.t;
      const auto fx = static_cast<std::size_t>(boost::rational_cast<double>(opt_->kappa * static_cast<std::int64_t>(inst.num_x())) + 0.5);
      c.expected = {{"equivalent", true}, {"clauses", art.psi.clause_count() + t * (fx + inst.num_y())}};
      if (phi_f.clause_count() != art.psi.clause_count() + t * (fx + inst.num_y())) c.status = Status::fail;

      Labeling broken = f;
      for (auto& set : broken.x) {
        if (!set.empty()) {
          set.erase(set.begin());
          break;
        }
      }
      const bool broken_eq = equivalent(phi_with_labels(art, broken), art.phi);
      Check& b = add(pre + "phi_f_corrupted_differs", broken_eq ? Status::fail : Status::pass, "forward-chaining");
      b.measured = {{"equivalent", broken_eq}};
      b.expected = {{"equivalent", false}};
    }

    const bool overridden = art.params.d_overridden;
    const HornCnf heur = minimize_heuristic(art.phi);
    const Extraction ex = extract(art, heur);
    {
      Check& c = add(pre + "heuristic_extraction", Status::pass, "heuristic");
      nlohmann::json per = nlohmann::json::array();
      bool all_total = true, all_le_one = true;
      for (const ExtractedCover& ec : ex.covers) {
        per.push_back({{"j", ec.j}, {"total", ec.report.is_total}, {"tight", ec.report.tight},
                       {"kappa", rat(ec.report.kappa)}, {"y_at_most_one", ec.y_at_most_one}});
        all_total = all_total && ec.report.is_total;
        all_le_one = all_le_one && ec.y_at_most_one;
      }
      c.measured = {{"covers", per}, {"warnings", ex.warnings}, {"clauses", heur.clause_count()}};
      c.expected = {{"y_at_most_one", true}, {"total", true}, {"warnings", 0}};
      if (!ex.warnings.empty()) {
        c.status = overridden ? Status::warn : Status::fail;
        c.note = overridden ? "d is overridden: shortcut implicates through v(j) are expected" : "";
        c.counterexample = ex.warnings;
      } else if (!all_le_one) {
        c.status = Status::fail;
      } else if (!all_total) {
        c.status = Status::warn;
        c.note = "heuristic representation yields a non-total cover";
      }
    }
    {
      bool quadratic = true;
      nlohmann::json bad = nullptr;
      for (const Clause& cl : heur.clauses()) {
        const bool has_v = art.varmap.role(cl.head).kind == RoleKind::v ||
                           std::any_of(cl.body.begin(), cl.body.end(),
                                       [&](VarId b) { return art.varmap.role(b).kind == RoleKind::v; });
        if (has_v && cl.degree() != 2) {
          quadratic = false;
          bad = format_clause(heur, cl);
          break;
        }
      }
      Check& c = add(pre + "v_clauses_quadratic", quadratic ? Status::pass : (overridden ? Status::warn : Status::fail),
                     "heuristic");
      c.measured = quadratic;
      c.expected = true;
      c.counterexample = bad;
    }
    {
      const SandwichReport s = verify_sandwich(art, heur, opt_->kappa, false);
      Check& c = add(pre + "sandwich_heuristic", s.lower_ok ? Status::pass : Status::fail, "closed-form");
      c.measured = {{"middle", rat(s.middle)}};
      c.expected = {{"lower", rat(s.lower)}};
      c.note = s.note;
    }

    if (art.phi.num_vars() > limits_.max_vars) {
      add(pre + "oracle_minimum", Status::skip, "exact-oracle").note =
          std::to_string(art.phi.num_vars()) + " variables exceed max_vars = " + std::to_string(limits_.max_vars) +
          "; heuristic_extraction is the downgraded check";
      return;
    }
    try {
      const MinimizationResult m = minimize_exact(art.phi, limits_.exact());
      const Extraction mx = extract(art, m.witness_tau);
      Check& c = add(pre + "oracle_minimum", Status::pass, "exact-oracle");
      nlohmann::json per = nlohmann::json::array();
      bool good = mx.warnings.empty() && m.tau <= heur.clause_count();
      for (const ExtractedCover& ec : mx.covers) {
        per.push_back({{"j", ec.j}, {"total", ec.report.is_total}, {"tight", ec.report.tight},
                       {"kappa", rat(ec.report.kappa)}});
        good = good && ec.report.is_total && ec.report.tight && ec.report.kappa == opt_->kappa;
      }
      const SandwichReport s = verify_sandwich(art, m.witness_tau, opt_->kappa, true);
      good = good && s.lower_ok && s.upper_ok.value_or(false);
      c.measured = {{"tau", m.tau}, {"lambda", m.lambda}, {"covers", per}, {"warnings", mx.warnings},
                    {"sandwich", {rat(s.lower), rat(s.middle), rat(s.upper)}}, {"nodes", m.nodes_explored}};
      c.expected = {{"tight_total_covers_of_kappa", rat(opt_->kappa)}, {"sandwich", "lower <= middle <= upper"}};
      if (!good) {
        c.status = overridden ? Status::warn : Status::fail;
        if (overridden) c.note = "d is overridden: the minimum may use shortcut implicates";
        c.counterexample = print_horn(m.witness_tau);
      }
    } catch (const ResourceError& err) {
      add(pre + "oracle_minimum", Status::skip, "exact-oracle").note = err.what();
    }
  }

  const VerifyRequest& req_;
  const Limits& limits_;
  std::optional<LcInstance> refined_;
  std::optional<ExactCover> opt_;
  VerificationReport report_;
};

}  // namespace

VerificationReport run_verification(const VerifyRequest& req, const Limits& limits) {
  if (!req.instance) throw InputError("verification needs a Label Cover instance");
  return Suite(req, limits).run();
}

}  // namespace hornforge::cli
