#include <doctest.h>

#include "hornforge/errors.hpp"
#include "hornforge/exact_oracle.hpp"
#include "hornforge/horn_io.hpp"
#include "oracles.hpp"

using namespace hornforge;

TEST_CASE("transitive triangle") {
  const HornCnf cnf = parse_horn("vars: 3\nnames: a b c\na -> b\nb -> c\na -> c\n").cnf;
  const MinimizationResult r = minimize_exact(cnf);
  CHECK(r.tau == 2);
  CHECK(r.lambda == 4);
  CHECK(r.prime_implicate_count == 3);
  CHECK(print_horn(r.witness_tau) == "vars: 3\nnames: a b c\na -> b\nb -> c\n");
  CHECK(tau_lower_bound_heads(cnf) == 2);
}

TEST_CASE("clause and literal minima can need different witnesses") {
  // a&b->c, c->a, c->b: both a,b derive c; tau = 3, lambda = 7.
  const HornCnf cnf = parse_horn("vars: 3\nnames: a b c\na & b -> c\nc -> a\nc -> b\n").cnf;
  const MinimizationResult r = minimize_exact(cnf);
  CHECK(r.tau == 3);
  CHECK(r.lambda == 7);
  CHECK(equivalent(r.witness_tau, cnf));
  CHECK(equivalent(r.witness_lambda, cnf));
}

TEST_CASE("tau matches subset enumeration over prime implicates") {
  std::size_t checked = 0;
  for (std::uint64_t seed = 0; seed < 80 && checked < 40; ++seed) {
    const HornCnf cnf = testing::random_horn(6, 7, 3, seed);
    if (testing::naive_prime_implicates(cnf).size() > 18) continue;
    ++checked;
    const MinimizationResult r = minimize_exact(cnf);
    CHECK(r.tau == testing::naive_tau(cnf));
    CHECK(testing::truth_table_equivalent(r.witness_tau, cnf));
    CHECK(testing::truth_table_equivalent(r.witness_lambda, cnf));
    CHECK(r.witness_lambda.literal_count() == r.lambda);
    CHECK(r.lambda <= minimize_heuristic(cnf).literal_count());
    CHECK(r.tau >= tau_lower_bound_heads(cnf));
  }
  CHECK(checked >= 30);
}

TEST_CASE("limits") {
  const HornCnf big = testing::random_horn(13, 20, 3, 3);
  CHECK_THROWS_AS(minimize_exact(big), ResourceError);
  const HornCnf cnf = testing::random_horn(10, 18, 3, 4);
  ExactLimits tight;
  tight.max_nodes = 1;
  CHECK_THROWS_AS(minimize_exact(cnf, tight), ResourceError);
  tight = ExactLimits{};
  tight.max_pi = 1;
  CHECK_THROWS_AS(minimize_exact(cnf, tight), ResourceError);
}

TEST_CASE("witness is deterministic") {
  const HornCnf cnf = testing::random_horn(8, 12, 3, 11);
  CHECK(print_horn(minimize_exact(cnf).witness_tau) == print_horn(minimize_exact(cnf).witness_tau));
}

TEST_CASE("non-prime implicates never beat the prime-restricted minima") {
  std::size_t checked = 0;
  for (std::uint64_t seed = 0; seed < 200 && checked < 30; ++seed) {
    const HornCnf cnf = testing::random_horn(3 + seed % 3, 3 + seed % 4, 2, 300 + seed);
    std::pair<std::size_t, std::size_t> naive;
    try {
      naive = testing::naive_minima_any_implicates(cnf);
    } catch (const std::invalid_argument&) {
      continue;
    }
    ++checked;
    const MinimizationResult r = minimize_exact(cnf);
    CHECK(r.tau == naive.first);
    CHECK(r.lambda == naive.second);
  }
  CHECK(checked >= 20);
}
