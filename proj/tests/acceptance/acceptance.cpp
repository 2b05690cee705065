// Acceptance suite: one line per criterion, "PASS" or "FAIL" plus the
// measured evidence. Exit status is 0 when the set of failing criteria equals
// the set passed with --expect-fail (default: none), so a known, documented
// failure keeps ctest green while a new failure or an unexpected fix does not.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "hornforge/errors.hpp"
#include "hornforge/exact_oracle.hpp"
#include "hornforge/horn_io.hpp"
#include "hornforge/lc_io.hpp"
#include "hornforge/reduction_3cnf.hpp"
#include "hornforge/rng.hpp"
#include "hornforge_cli/cli.hpp"
#include "oracles.hpp"

using namespace hornforge;

namespace {

// Pinned tolerances and budgets.
constexpr double kSizeBudgetSeconds = 10.0;
constexpr double kBoundsBudgetSeconds = 30.0;
constexpr std::size_t kCorpusSize = 50;
constexpr std::size_t kEquivalencePairs = 200;
constexpr std::size_t kLabelings = 100;
constexpr std::size_t kRoundingSeeds = 1000;
constexpr double kSigmaFactor = 3.0;
constexpr double kFloatSlack = 1e-12;
constexpr std::size_t kOracleVars = 12;
constexpr std::size_t kExclusivityVars = 10;
constexpr std::size_t kResolutionCap = 100000;
constexpr std::size_t kSwapClauses = 1500;

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Item {
  std::string label;
  LcInstance original;  // may be unrefined
  LcInstance refined;
  std::size_t t;
};

std::vector<Item> corpus() {
  std::vector<Item> out;
  const LcInstance claw = claw_instance();
  out.push_back({"claw", claw, refine(claw), 1});
  for (std::uint64_t seed = 1; seed <= kCorpusSize; ++seed) {
    SplitMix64 rng(seed);
    RandomLcParams p;
    p.r = 1 + rng.below(6);
    p.s = 1 + rng.below(6);
    p.lambda = 1 + rng.below(3);
    p.lambda_prime = 1 + rng.below(3);
    p.edge_probability = 0.3 + 0.4 * rng.uniform();
    p.pair_probability = 0.3 + 0.4 * rng.uniform();
    const LcInstance inst = random_instance(p, seed);
    out.push_back({"random#" + std::to_string(seed), inst, refine(inst), 1 + seed % 2});
  }
  return out;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Closed forms written out independently of the library.
struct Counts {
  std::size_t phi_c, phi_v, psi_c, psi_v;
};

Counts cnf_closed_form(const LcInstance& inst, std::size_t d, std::size_t t) {
  const LcSizes z = inst.sizes();
  const std::size_t labels = z.r * z.lambda + z.s * z.lambda_prime;
  Counts c;
  c.phi_c = (t + 1) * labels + d * (z.pi + 2 * z.m * z.lambda_prime);
  c.phi_v = t + d * z.m * (z.lambda_prime + 1) + labels;
  c.psi_c = labels + d * (z.pi + 2 * z.m * z.lambda_prime);
  c.psi_v = d * z.m * (z.lambda_prime + 1) + labels;
  return c;
}

Outcome criterion_sizes(const std::vector<Item>& items) {
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t bad = 0;
  std::string first;
  for (const Item& it : items) {
    const LcSizes z = it.refined.sizes();
    const std::size_t d = 1 + z.r * z.lambda + z.s * z.lambda_prime;
    const ReductionArtifact art = build_cnf(it.refined, make_params(it.refined, it.t));
    const Counts want = cnf_closed_form(it.refined, d, it.t);
    const std::map<std::string, std::size_t> fam = {{"a", d * z.pi},
                                                    {"b", d * z.m * z.lambda_prime},
                                                    {"c", d * z.m * z.lambda_prime},
                                                    {"d", z.r * z.lambda + z.s * z.lambda_prime},
                                                    {"e", it.t * (z.r * z.lambda + z.s * z.lambda_prime)}};
    const bool ok = art.params.d == d && art.phi.clause_count() == want.phi_c && art.phi.num_vars() == want.phi_v &&
                    art.psi.clause_count() == want.psi_c && art.psi.num_vars() == want.psi_v &&
                    art.family_counts == fam;
    if (!ok && bad++ == 0) first = it.label;
  }
  const double secs = seconds_since(t0);
  Outcome o;
  o.pass = bad == 0 && secs < kSizeBudgetSeconds;
  std::ostringstream s;
  s << items.size() << " instances, " << bad << " mismatches" << (bad ? " (first " + first + ")" : "") << ", "
    << secs << " s (budget " << kSizeBudgetSeconds << " s)";
  o.detail = s.str();
  return o;
}

Outcome criterion_bounds(const std::vector<Item>& items) {
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t clause_lo = 0, clause_hi = 0, var_phi = 0, var_psi = 0, degree = 0, literal = 0;
  std::string first_var;
  for (const Item& it : items) {
    const LcSizes z = it.refined.sizes();
    const std::size_t d = 1 + z.r * z.lambda + z.s * z.lambda_prime;
    const std::size_t labels = z.r * z.lambda + z.s * z.lambda_prime;
    const ReductionArtifact art = build_3cnf(it.refined, it.t);
    const std::size_t lo = d * (z.pi + 2 * z.m * z.lambda_prime + 2 * z.m - 1) - 1;
    const std::size_t hi = d * (z.pi + z.m * z.m * z.lambda_prime + 4 * z.m);
    const std::size_t vhi = d * z.m * (z.lambda_prime + 2) + z.m * z.m * z.lambda_prime;
    const std::size_t reduced = art.phi.clause_count() - it.t * labels;
    for (std::size_t c : {reduced, art.psi.clause_count()}) {
      clause_lo += c < lo;
      clause_hi += c > hi;
    }
    if (art.phi.num_vars() < it.t || art.phi.num_vars() > it.t + vhi) {
      if (var_phi++ == 0) {
        first_var = it.label + ": |Phi|_v = " + std::to_string(art.phi.num_vars()) + " > " + std::to_string(it.t + vhi);
      }
    }
    var_psi += art.psi.num_vars() > vhi;
    for (const Clause& c : art.phi.clauses()) degree += c.degree() < 2 || c.degree() > 3;
    const std::size_t lits = art.phi.literal_count();
    literal += lits < 2 * art.phi.clause_count() || lits > 3 * art.phi.clause_count();
  }
  const double secs = seconds_since(t0);
  Outcome o;
  o.pass = clause_lo + clause_hi + var_phi + var_psi + degree + literal == 0 && secs < kBoundsBudgetSeconds;
  std::ostringstream s;
  s << "violations over " << items.size() << " instances: clause lower " << clause_lo << ", clause upper "
    << clause_hi << ", Phi vars " << var_phi << ", Psi vars " << var_psi << ", degree " << degree
    << ", literal ratio " << literal << "; " << secs << " s";
  if (!first_var.empty()) s << "; e.g. " << first_var;
  o.detail = s.str();
  return o;
}

Outcome criterion_closure(const std::vector<Item>& items) {
  std::size_t checked = 0, bad = 0;
  for (const Item& it : items) {
    const LcSizes z = it.refined.sizes();
    const ReductionArtifact arts[] = {build_cnf(it.refined, make_params(it.refined, it.t)),
                                      build_3cnf(it.refined, it.t)};
    (void)z;
    for (const ReductionArtifact& art : arts) {
      const VarSet core = art.varmap.core_vars();
      for (std::uint32_t j = 1; j <= it.t; ++j) {
        VarSet want = core;
        const VarId v = art.varmap.v(j);
        want.insert(std::upper_bound(want.begin(), want.end(), v), v);
        ++checked;
        bad += testing::naive_closure(art.phi, {v}) != want;
      }
    }
  }
  return {bad == 0, std::to_string(checked) + " closures F({v(j)}) compared by exact set equality, " +
                        std::to_string(bad) + " mismatches"};
}

// 1-2 edges, 1-2 labels per side.
std::vector<std::pair<std::string, LcInstance>> micro_instances() {
  const char* texts[][2] = {
      {"one-edge", "X: a\nY: b\nLX: p\nLY: q\nE: a b\nPI a b: p q\n"},
      {"one-edge-two-x-labels", "X: a\nY: b\nLX: p1 p2\nLY: q\nE: a b\nPI a b: p1 q\n"},
      {"one-edge-two-x-labels-both", "X: a\nY: b\nLX: p1 p2\nLY: q\nE: a b\nPI a b: p1 q p2 q\n"},
      {"one-edge-two-y-labels", "X: a\nY: b\nLX: p\nLY: q1 q2\nE: a b\nPI a b: p q1\n"},
      {"two-x", "X: a c\nY: b\nLX: p\nLY: q\nE: a b c b\nPI a b: p q\nPI c b: p q\n"},
      {"two-y", "X: a\nY: b c\nLX: p\nLY: q\nE: a b a c\nPI a b: p q\nPI a c: p q\n"},
      {"two-x-two-labels", "X: a c\nY: b\nLX: p1 p2\nLY: q\nE: a b c b\nPI a b: p1 q\nPI c b: p2 q\n"},
  };
  std::vector<std::pair<std::string, LcInstance>> out;
  for (auto& [name, text] : texts) out.emplace_back(name, refine(parse_lc(text)));
  return out;
}

Outcome criterion_exclusive(const std::vector<Item>& items) {
  std::size_t closed = 0, component = 0, swapped = 0, swap_bad = 0, brute = 0, brute_bad = 0;
  for (const Item& it : items) {
    const ReductionArtifact arts[] = {build_cnf(it.refined, make_params(it.refined, it.t)),
                                      build_3cnf(it.refined, it.t)};
    for (const ReductionArtifact& art : arts) {
      const VarSet core = art.varmap.core_vars();
      closed += !is_closed_under_fc(art.phi, core);
      component += exclusive_component(art.phi, core).clauses() != art.psi.clauses();
      // Swap Psi for an equivalent representation; the whole must stay equivalent.
      if (art.psi.clause_count() <= kSwapClauses) {
        ++swapped;
        HornCnf mixed = art.phi.empty_like();
        const HornCnf small = remap_to(minimize_heuristic(art.psi), art.phi.registry());
        for (const Clause& c : small.clauses()) mixed.add(c);
        for (std::size_t k = art.psi.clause_count(); k < art.phi.clause_count(); ++k) mixed.add(art.phi.clauses()[k]);
        swap_bad += !equivalent(mixed, art.phi);
      }
    }
  }
  for (const auto& [name, inst] : micro_instances()) {
    for (std::size_t t : {1, 2}) {
      for (std::size_t d : {1, 2, 3}) {
        const ReductionArtifact art = build_cnf(inst, make_params(inst, t, d, true));
        if (art.phi.num_vars() > kExclusivityVars) continue;
        ++brute;
        brute_bad += !verify_exclusive_family(art.phi, art.varmap.core_vars(), kResolutionCap, kExclusivityVars).exclusive;
      }
      const ReductionArtifact art3 = build_3cnf(inst, t);
      if (art3.phi.num_vars() <= kExclusivityVars) {
        ++brute;
        brute_bad += !verify_exclusive_family(art3.phi, art3.varmap.core_vars(), kResolutionCap, kExclusivityVars).exclusive;
      }
    }
  }
  std::ostringstream s;
  s << 2 * items.size() << " formulas: " << closed << " not FC-closed, " << component
    << " with Phi restricted to V_g != Psi; " << swap_bad << "/" << swapped
    << " component swaps not equivalent; brute-force exclusivity on " << brute << " formulas (<= "
    << kExclusivityVars << " vars, cap " << kResolutionCap << "): " << brute_bad << " violations";
  return {closed + component + swap_bad + brute_bad == 0 && brute > 0 && swapped > 0, s.str()};
}

Outcome criterion_equivalence() {
  std::size_t disagree = 0, equal = 0;
  for (std::uint64_t seed = 0; seed < kEquivalencePairs; ++seed) {
    const std::size_t n = 4 + seed % 9;
    const HornCnf a = testing::random_horn(n, n + seed % 7, 3, 7000 + seed);
    HornCnf b = a.empty_like();
    switch (seed % 4) {
      case 0: b = minimize_heuristic(a); break;
      case 1: b = testing::random_horn(n, n + seed % 7, 3, 9000 + seed); break;
      case 2: {
        b = a;
        const HornCnf extra = testing::random_horn(n, 1, 2, 11000 + seed);
        for (const Clause& c : extra.clauses()) b.try_add(c);
        break;
      }
      default: {
        for (std::size_t k = 1; k < a.clause_count(); ++k) b.add(a.clauses()[k]);
        break;
      }
    }
    const bool fast = equivalent(a, b);
    const bool slow = equivalent_exhaustive(a, b, 12);
    const bool truth = testing::truth_table_equivalent(a, b);
    disagree += fast != slow || fast != truth;
    equal += truth;
  }
  std::ostringstream s;
  s << kEquivalencePairs << " pairs (n <= 12, " << equal << " equivalent): " << disagree
    << " disagreements between the polynomial check, all-subsets FC and truth tables";
  return {disagree == 0 && equal > 0 && equal < kEquivalencePairs, s.str()};
}

Outcome criterion_phi_f(const std::vector<Item>& items) {
  std::size_t checked = 0, bad = 0, corrupted_bad = 0;
  for (const Item& it : items) {
    const ExactCover ec = solve_exact_cover(it.original);
    const Labeling f = lift(it.original, ec.labeling);
    const ReductionArtifact arts[] = {build_cnf(it.refined, make_params(it.refined, it.t)),
                                      build_3cnf(it.refined, it.t)};
    for (const ReductionArtifact& art : arts) {
      ++checked;
      bad += !equivalent(build_phi_f(art, f), art.phi);
      Labeling broken = f;
      for (auto& set : broken.x) {
        if (!set.empty()) {
          set.erase(set.begin());
          break;
        }
      }
      corrupted_bad += equivalent(phi_with_labels(art, broken), art.phi);
    }
  }
  std::ostringstream s;
  s << checked << " (instance, construction) pairs: " << bad << " optimal covers not equivalent, " << corrupted_bad
    << " corrupted covers equivalent";
  return {bad + corrupted_bad == 0, s.str()};
}

Outcome criterion_tighten_refine(const std::vector<Item>& items) {
  std::size_t tighten_bad = 0, refine_bad = 0, tightened = 0;
  for (std::size_t k = 0; k < kLabelings; ++k) {
    const Item& it = items[1 + k % (items.size() - 1)];
    const LcInstance& inst = it.original;
    SplitMix64 rng(500 + k);
    const Labeling opt = solve_exact_cover(inst).labeling;
    Labeling f = opt;
    for (VertexId x = 0; x < inst.num_x(); ++x) {
      for (LabelId l : inst.labels_of_x(x)) {
        if (rng.uniform() < 0.4) f.x[x].push_back(l);
      }
      std::sort(f.x[x].begin(), f.x[x].end());
      f.x[x].erase(std::unique(f.x[x].begin(), f.x[x].end()), f.x[x].end());
    }
    for (VertexId y = 0; y < inst.num_y(); ++y) {
      for (LabelId l : inst.labels_of_y(y)) {
        if (rng.uniform() < 0.3) f.y[y].push_back(l);
      }
      std::sort(f.y[y].begin(), f.y[y].end());
      f.y[y].erase(std::unique(f.y[y].begin(), f.y[y].end()), f.y[y].end());
    }
    const CoverReport before = check_cover(inst, f);
    if (before.is_total) {
      ++tightened;
      const CoverReport after = check_cover(inst, tighten(inst, f));
      tighten_bad += !after.is_total || !after.tight || after.kappa != before.kappa;
    }
    const Labeling lifted = lift(inst, f);
    const CoverReport lifted_rep = check_cover(it.refined, lifted);
    refine_bad += project(inst, lifted) != f || lifted_rep.kappa != before.kappa ||
                  lifted_rep.is_total != before.is_total;
  }
  std::ostringstream s;
  s << kLabelings << " labelings (" << tightened << " total): " << tighten_bad << " tightening failures, "
    << refine_bad << " lift/project failures (exact rationals)";
  return {tighten_bad + refine_bad == 0 && tightened > 0, s.str()};
}

Outcome criterion_weak_duality() {
  struct Shape {
    std::size_t r, dx, s;
  };
  const Shape shapes[] = {{2, 2, 2}, {3, 2, 2}, {4, 1, 2}, {4, 2, 4}, {6, 1, 3}, {3, 3, 3}, {4, 3, 4}, {6, 2, 4}};
  std::size_t count = 0, duality_bad = 0, solver_bad = 0, mc_bad = 0;
  double worst_margin = 1e9;
  for (std::size_t k = 0; k < 32; ++k) {
    const Shape& sh = shapes[k % 8];
    const std::size_t lambda = 2 + (k / 8) % 2, lambda_prime = 2 + (k / 16) % 2;
    const LcInstance inst = random_biregular_instance(sh.r, sh.dx, sh.s, lambda, lambda_prime, 0.4, 100 + k);
    ++count;
    const ExactCover ec = solve_exact_cover(inst);
    const ExactPacking pk = solve_exact_packing(inst);
    solver_bad += ec.kappa != testing::naive_min_kappa(inst) || pk.mu != testing::naive_max_mu(inst);
    const Rational bound = Rational(1) / ec.kappa;
    duality_bad += pk.mu < bound;
    double sum = 0, sq = 0;
    for (std::uint64_t seed = 0; seed < kRoundingSeeds; ++seed) {
      const double v = boost::rational_cast<double>(packing_value(inst, round_cover_to_packing(inst, ec.labeling, seed).packing));
      sum += v;
      sq += v * v;
    }
    const double n = static_cast<double>(kRoundingSeeds);
    const double mean = sum / n;
    const double sd = std::sqrt(std::max(0.0, sq / n - mean * mean));
    const double sigma = sd / std::sqrt(n);
    const double margin = mean - (boost::rational_cast<double>(bound) - kSigmaFactor * sigma);
    worst_margin = std::min(worst_margin, margin);
    mc_bad += margin < -kFloatSlack;
  }
  std::ostringstream s;
  s << count << " bi-regular instances: " << duality_bad << " with mu < 1/kappa, " << solver_bad
    << " solver/brute-force disagreements, " << mc_bad << " Monte-Carlo means below 1/kappa - "
    << kSigmaFactor << " sigma (" << kRoundingSeeds << " seeds; worst margin " << worst_margin << ")";
  return {duality_bad + solver_bad + mc_bad == 0 && count >= 30, s.str()};
}

// d just above the cost of an optimal tight cover: kappa r + s + 1.
std::size_t micro_d(const LcInstance& inst, const Rational& kappa) {
  const Rational cost = kappa * static_cast<std::int64_t>(inst.num_x()) + static_cast<std::int64_t>(inst.num_y());
  return static_cast<std::size_t>(boost::rational_cast<std::int64_t>(cost)) + 1;
}

Outcome criterion_oracle() {
  std::size_t exact = 0, exact_bad = 0, downgraded = 0, downgraded_bad = 0, default_d_exact = 0;
  std::string first_bad;
  for (const auto& [name, inst] : micro_instances()) {
    const Rational kappa = solve_exact_cover(inst).kappa;
    for (std::size_t t : {1, 2}) {
      std::vector<ReductionArtifact> arts;
      arts.push_back(build_cnf(inst, make_params(inst, t)));
      const std::size_t md = micro_d(inst, kappa);
      if (md != default_d(inst)) arts.push_back(build_cnf(inst, make_params(inst, t, md, true)));
      arts.push_back(build_3cnf(inst, t));
      for (const ReductionArtifact& art : arts) {
        const std::string tag = name + "/t=" + std::to_string(t) + "/d=" + std::to_string(art.params.d) +
                                (art.construction == Construction::cnf3 ? "/3cnf" : "/cnf");
        if (art.phi.num_vars() <= kOracleVars) {
          ++exact;
          default_d_exact += !art.params.d_overridden;
          const MinimizationResult m = minimize_exact(art.phi);
          const Extraction ex = extract_covers(art, m.witness_tau);
          bool ok = ex.warnings.empty() && ex.covers.size() == t;
          for (const ExtractedCover& c : ex.covers) {
            ok = ok && c.report.is_total && c.report.tight && c.report.kappa == kappa;
          }
          const SandwichReport s = verify_sandwich(art, m.witness_tau, kappa, true);
          ok = ok && s.lower_ok && s.upper_ok.value_or(false);
          if (!ok && exact_bad++ == 0) first_bad = tag;
        } else {
          ++downgraded;
          const Extraction ex = extract_covers(art, minimize_heuristic(art.phi));
          bool ok = ex.warnings.empty();
          for (const ExtractedCover& c : ex.covers) ok = ok && c.y_at_most_one && c.report.is_total;
          if (!ok && downgraded_bad++ == 0) first_bad = tag;
        }
      }
    }
  }
  std::ostringstream s;
  s << exact << " exact-oracle builds (" << default_d_exact << " with default d; micro d = kappa r + s + 1): "
    << exact_bad << " failures; " << downgraded << " builds above " << kOracleVars
    << " vars downgraded to the heuristic check: " << downgraded_bad << " failures";
  if (!first_bad.empty()) s << "; first " << first_bad;
  return {exact_bad + downgraded_bad == 0 && exact > 0 && default_d_exact > 0, s.str()};
}

Outcome criterion_shortcut() {
  const LcInstance inst = micro_instances().front().second;
  const Rational kappa = solve_exact_cover(inst).kappa;
  const ReductionArtifact art = build_cnf(inst, make_params(inst, 1, 1, true));
  const bool arrangement = art.params.d * inst.num_edges() <
                           static_cast<std::size_t>(boost::rational_cast<std::int64_t>(kappa * static_cast<std::int64_t>(inst.num_x()))) + inst.num_y();
  const MinimizationResult m = minimize_exact(art.phi);
  const Extraction ex = extract_covers(art, m.witness_tau);
  const ReductionArtifact good = build_cnf(inst, make_params(inst, 1));
  const Extraction ok = extract_covers(good, minimize_exact(good.phi).witness_tau);
  std::ostringstream s;
  s << "d = 1, |E| = " << inst.num_edges() << ": tau = " << m.tau << ", structural warnings "
    << ex.warnings.size();
  if (!ex.warnings.empty()) s << " (" << ex.warnings.front() << ")";
  s << "; default d = " << good.params.d << ": warnings " << ok.warnings.size();
  return {arrangement && !ex.warnings.empty() && ok.warnings.empty(), s.str()};
}

std::string cli(const std::vector<std::string>& args, const std::string& input) {
  std::istringstream in(input);
  std::ostringstream out, err;
  if (cli::run_cli(args, in, out, err) != 0) throw std::runtime_error(err.str());
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

Outcome criterion_golden(const std::string& golden_dir) {
  const std::string lc = cli({"lc-gen", "claw"}, "");
  const std::string cnf3 = cli({"reduce-3cnf", "--t", "1"}, lc);
  const bool byte_exact = lc == read_file(golden_dir + "/claw.lc") &&
                          cnf3 == read_file(golden_dir + "/claw_3cnf_t1.horn") &&
                          cli({"reduce-cnf"}, lc) == read_file(golden_dir + "/claw_cnf_t1.horn");
  const LcInstance ref = refine(claw_instance());
  const ReductionArtifact art = build_3cnf(ref, 1);
  std::set<std::string> clauses;
  for (const Clause& c : art.phi.clauses()) clauses.insert(format_clause(art.phi, c));
  std::size_t missing = 0;
  for (std::uint32_t i = 1; i <= 9; ++i) {
    const std::string k = std::to_string(i);
    missing += !clauses.count("e[x2,y," + k + "] & e[x3,y," + k + "] -> e[2," + k + "]");
    missing += !clauses.count("e[x1,y," + k + "] & e[2," + k + "] -> e[1," + k + "]");
  }
  missing += !clauses.count("e[1,1] & e[1,2] -> u[x1.l1]");
  missing += !clauses.count("e[1,2] & e[1,3] -> u[x1.l2]");
  const std::size_t tree = art.family_counts.at("d1");
  std::ostringstream s;
  s << "byte-exact goldens " << (byte_exact ? "match" : "DIFFER") << ", d = " << art.params.d << ", refined labels "
    << ref.sizes().total_labels() << ", tree clauses " << tree << ", missing expected clauses " << missing;
  return {byte_exact && art.params.d == 9 && ref.sizes().total_labels() == 8 && tree == 18 && missing == 0, s.str()};
}

Outcome criterion_determinism(const std::string& golden_dir) {
  const std::string lc = read_file(golden_dir + "/claw.lc");
  const std::string cnf = read_file(golden_dir + "/claw_cnf_t1.horn");
  const std::string micro = "X: a\nY: b\nLX: p\nLY: q\nE: a b\nPI a b: p q\n";
  const std::string micro_cnf = cli({"reduce-cnf"}, micro);
  const std::vector<std::pair<std::vector<std::string>, std::string>> cases = {
      {{"lc-gen", "claw"}, ""},
      {{"lc-gen", "random", "--seed", "11"}, ""},
      {{"lc-gen", "random", "--seed", "11", "--x-degree", "2", "--r", "4", "--s", "4"}, ""},
      {{"lc-gen", "sat2lc"}, "1 -2 0\n2 3 0\n"},
      {{"lc-refine"}, lc},
      {{"lc-solve"}, lc},
      {{"lc-solve", "--packing"}, lc},
      {{"reduce-cnf", "--t", "2"}, lc},
      {{"reduce-3cnf", "--t", "2"}, lc},
      {{"fc", "--query", "v[1]"}, cnf},
      {{"minimize"}, cnf},
      {{"minimize-exact"}, micro_cnf},
      {{"extract-cover"}, cnf},
      {{"verify"}, micro},
      {{"stats"}, lc},
  };
  std::size_t differ = 0;
  for (const auto& [args, input] : cases) differ += cli(args, input) != cli(args, input);
  return {differ == 0, std::to_string(cases.size()) + " commands run twice, " + std::to_string(differ) +
                           " byte differences"};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> expected;
  std::string golden_dir = HORNFORGE_GOLDEN_DIR;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--expect-fail" && i + 1 < argc) {
      std::istringstream list(argv[++i]);
      for (std::string item; std::getline(list, item, ',');) expected.insert(std::stoi(item));
    } else if (arg == "--golden" && i + 1 < argc) {
      golden_dir = argv[++i];
    }
  }

  const std::vector<Item> items = corpus();
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"size identities (canonical CNF)", [&] { return criterion_sizes(items); }},
      {"size bounds (3-CNF)", [&] { return criterion_bounds(items); }},
      {"closure from v(j)", [&] { return criterion_closure(items); }},
      {"exclusive component", [&] { return criterion_exclusive(items); }},
      {"equivalence oracle", [] { return criterion_equivalence(); }},
      {"Phi_f equivalence", [&] { return criterion_phi_f(items); }},
      {"tightening and refinement", [&] { return criterion_tighten_refine(items); }},
      {"weak duality", [] { return criterion_weak_duality(); }},
      {"oracle-gated minimum representations", [] { return criterion_oracle(); }},
      {"shortcut implicates at d = 1", [] { return criterion_shortcut(); }},
      {"claw golden files", [&] { return criterion_golden(golden_dir); }},
      {"determinism", [&] { return criterion_determinism(golden_dir); }},
  };

  std::set<int> failed;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const int id = static_cast<int>(k + 1);
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) failed.insert(id);
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << id << ". " << criteria[k].first << ": " << o.detail;
    if (!o.pass && expected.count(id)) std::cout << " [known failure]";
    std::cout << "\n" << std::flush;
  }
  std::cout << (criteria.size() - failed.size()) << "/" << criteria.size() << " criteria pass\n";
  if (failed != expected) {
    std::cout << "failing set differs from the expected set\n";
    return 1;
  }
  return 0;
}
