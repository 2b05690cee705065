#include <doctest.h>

#include <cmath>

#include "hornforge/errors.hpp"
#include "hornforge/label_cover.hpp"
#include "hornforge/lc_io.hpp"
#include "oracles.hpp"

using namespace hornforge;

namespace {

const char* kTwoEdges =
    "X: a b\n"
    "Y: c\n"
    "LX: p q\n"
    "LY: r s\n"
    "E: a c b c\n"
    "PI a c: p r q s\n"
    "PI b c: q r\n";

}  // namespace

TEST_CASE("claw instance shape") {
  const LcInstance claw = claw_instance();
  const LcSizes z = claw.sizes();
  CHECK(z.r == 3);
  CHECK(z.s == 1);
  CHECK(z.m == 3);
  CHECK(z.lambda == 2);
  CHECK(z.lambda_prime == 2);
  CHECK(z.pi == 5);
  CHECK_FALSE(claw.refined());
  CHECK(claw.feasible());
  CHECK(claw.biregular());
  CHECK(claw.degree_y(0) == 3);
}

TEST_CASE("claw optimum") {
  const LcInstance claw = claw_instance();
  const ExactCover ec = solve_exact_cover(claw);
  CHECK(ec.kappa == Rational(1));
  const CoverReport rep = check_cover(claw, ec.labeling);
  CHECK(rep.is_total);
  CHECK(rep.tight);
  CHECK(ec.kappa == testing::naive_min_kappa(claw));
}

TEST_CASE("cover semantics: every y-label needs support") {
  const LcInstance inst = parse_lc(kTwoEdges);
  Labeling f{{{0}, {1}}, {{0}}};  // a:p b:q c:r
  CHECK(check_cover(inst, f).is_total);
  f.y[0] = {0, 1};  // s needs q on a
  CoverReport rep = check_cover(inst, f);
  CHECK_FALSE(rep.is_total);
  f.x[0] = {0, 1};
  rep = check_cover(inst, f);
  CHECK_FALSE(rep.is_total);  // b cannot support s
  CHECK(rep.uncovered_edges == std::vector<EdgeId>{1});
  f.y[0] = {};
  CHECK(check_cover(inst, f).uncovered_edges.size() == 2);
}

TEST_CASE("validate_labeling rejects foreign and unsorted labels") {
  const LcInstance inst = parse_lc(kTwoEdges);
  CHECK_THROWS_AS(validate_labeling(inst, Labeling{{{1, 0}, {0}}, {{0}}}), InputError);
  CHECK_THROWS_AS(validate_labeling(inst, Labeling{{{0}}, {{0}}}), InputError);
  CHECK_THROWS_AS(validate_labeling(inst, Labeling{{{0}, {7}}, {{0}}}), InputError);
}

TEST_CASE("tighten keeps totality and cost") {
  const LcInstance inst = parse_lc(kTwoEdges);
  const Labeling f{{{0, 1}, {1}}, {{0}}};
  const Labeling g = tighten(inst, f);
  CHECK(g.y[0].size() == 1);
  CHECK(check_cover(inst, g).tight);
  CHECK(check_cover(inst, g).kappa == check_cover(inst, f).kappa);
  CHECK_THROWS_AS(tighten(inst, Labeling{{{0}, {0}}, {{0}}}), InputError);
}

TEST_CASE("refinement names, ids and round trip") {
  const LcInstance claw = claw_instance();
  const LcInstance ref = refine(claw);
  CHECK(ref.refined());
  CHECK(ref.sizes().total_labels() == 8);
  CHECK(ref.x_label(1 * 2 + 1) == "x2.l2");
  CHECK(ref.y_label(0) == "y.l1'");
  const Labeling f0 = solve_exact_cover(claw).labeling;
  const Labeling f = lift(claw, f0);
  CHECK(project(claw, f) == f0);
  CHECK(check_cover(ref, f).kappa == check_cover(claw, f0).kappa);
  CHECK(solve_exact_cover(ref).kappa == Rational(1));
}

TEST_CASE("exact cover matches brute force on random instances") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    RandomLcParams p;
    p.r = 3 + seed % 3;
    p.s = 2 + seed % 2;
    p.lambda = 2 + seed % 2;
    p.lambda_prime = 2;
    const LcInstance inst = random_instance(p, seed);
    REQUIRE(inst.feasible());
    const ExactCover ec = solve_exact_cover(inst);
    CHECK(ec.kappa == testing::naive_min_kappa(inst));
    CHECK(check_cover(inst, ec.labeling).tight);
    const ExactPacking pk = solve_exact_packing(inst);
    CHECK(pk.mu == testing::naive_max_mu(inst));
    CHECK(packing_value(inst, pk.labeling) == pk.mu);
  }
}

TEST_CASE("exact solvers respect the budget") {
  RandomLcParams p;
  p.r = 6;
  p.s = 6;
  p.lambda = 3;
  p.lambda_prime = 3;
  p.edge_probability = 1.0;
  const LcInstance inst = random_instance(p, 5);
  CHECK_THROWS_AS(solve_exact_cover(inst, 10), ResourceError);
  CHECK_THROWS_AS(solve_exact_packing(inst, 10), ResourceError);
}

TEST_CASE("rounding keeps one label per x and is seeded") {
  const LcInstance claw = claw_instance();
  const Labeling f{{{0, 1}, {0}, {1}}, {{1}}};
  REQUIRE(check_cover(claw, f).is_total);
  const Rounding a = round_cover_to_packing(claw, f, 42);
  const Rounding b = round_cover_to_packing(claw, f, 42);
  CHECK(a.packing == b.packing);
  CHECK(a.regular);
  for (const auto& set : a.packing.x) CHECK(set.size() == 1);
  // x1 keeps l1 (covers) or l2 (does not): expectation (1/2 + 1 + 1) / 3.
  CHECK(rounding_expectation(claw, f) == Rational(5, 6));
}

TEST_CASE("rounding expectation matches the Monte-Carlo mean") {
  const LcInstance claw = claw_instance();
  const Labeling f{{{0, 1}, {0}, {0, 1}}, {{1}}};
  double sum = 0;
  const int runs = 4000;
  for (int s = 0; s < runs; ++s) {
    sum += boost::rational_cast<double>(packing_value(claw, round_cover_to_packing(claw, f, s).packing));
  }
  const double expect = boost::rational_cast<double>(rounding_expectation(claw, f));
  CHECK(std::abs(sum / runs - expect) < 0.03);
}

TEST_CASE("sat_to_lc") {
  // (x1 or not x2) and (x2 or x3)
  const LcInstance inst = sat_to_lc({{1, -2}, {2, 3}});
  CHECK(inst.num_y() == 2);
  CHECK(inst.num_x() == 4);  // occurrences o1_1 o2_1 o2_2 o3_2
  CHECK(inst.feasible());
  CHECK(inst.x_name(0) == "o1_1");
  CHECK(inst.y_name(1) == "c2");
  CHECK(inst.num_edges() == 6);
  CHECK(solve_exact_cover(inst).kappa == Rational(1));
  CHECK_THROWS_AS(sat_to_lc({{1, 2}, {3}}), InputError);
  CHECK_THROWS_AS(sat_to_lc({{1, -1}}), InputError);
  CHECK_THROWS_AS(sat_to_lc({}), InputError);
}

TEST_CASE("an unsatisfiable formula costs more than one label per x") {
  const LcInstance inst = sat_to_lc({{1}, {-1}});
  CHECK(inst.num_edges() == 4);
  CHECK(inst.feasible());
  CHECK(solve_exact_cover(inst).kappa == Rational(2));
}

TEST_CASE("random generators are deterministic and feasible") {
  const RandomLcParams p;
  CHECK(print_lc(random_instance(p, 9)) == print_lc(random_instance(p, 9)));
  CHECK(random_instance(p, 9).feasible());
  const LcInstance bi = random_biregular_instance(4, 2, 4, 2, 2, 0.4, 3);
  CHECK(bi.biregular());
  CHECK(bi.num_edges() == 8);
  CHECK(bi.feasible());
  CHECK_THROWS_AS(random_biregular_instance(3, 2, 4, 2, 2, 0.4, 3), InputError);
}

TEST_CASE("text format round trip") {
  const LcInstance claw = claw_instance();
  const std::string text = print_lc(claw);
  CHECK(print_lc(parse_lc(text)) == text);
  const LcInstance ref = refine(claw);
  CHECK(print_lc(parse_lc(print_lc(ref))) == print_lc(ref));
}

TEST_CASE("json round trip") {
  for (const LcInstance& inst : {claw_instance(), refine(claw_instance()), parse_lc(kTwoEdges)}) {
    CHECK(print_lc(lc_from_json(lc_to_json(inst))) == print_lc(inst));
  }
  const LcInstance claw = claw_instance();
  const Labeling f = solve_exact_cover(claw).labeling;
  CHECK(labeling_from_json(claw, labeling_to_json(claw, f)) == f);
}

TEST_CASE("parse diagnostics") {
  auto message = [](const std::string& text) {
    try {
      parse_lc(text);
    } catch (const InputError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(message("Y: c\n").rfind("line 1, column 1", 0) == 0);
  CHECK(message("X: a\nY: c\nLX: p\nLY: r\nE: a d\nPI a d: p r\n").rfind("line 5", 0) == 0);
  CHECK(message("X: a\nY: c\nLX: p\nLY: r\nE: a c\n").find("line") == 0);
  CHECK(message("X: a.b\nY: c\nLX: p\nLY: r\nE: a.b c\nPI a.b c: p r\n").rfind("line 1", 0) == 0);
  CHECK(message("X: a\nY: a\nLX: p\nLY: r\nE: a a\nPI a a: p r\n").find("line") == 0);
}
