#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "test_support.hpp"

using namespace svtest;

TEST_CASE("ballot construction validates its invariants") {
  CHECK_THROWS_AS(Ballot::approval(3, {0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(Ballot::approval(3, {3}), std::out_of_range);
  CHECK_THROWS_AS(Ballot::ranking({1, 1, 3}), std::invalid_argument);
  CHECK_THROWS_AS(Ballot::ranking({0, 1, 2}), std::invalid_argument);
  CHECK_NOTHROW(Ballot::ranking({2, 1, 3}));
  CHECK_THROWS_AS(Ballot::value({}), std::invalid_argument);
}

TEST_CASE("sincere utility on approval ballots is overlap") {
  // objects 0..2 as a, b, c
  const Ballot b = Ballot::approval(3, {0, 2});
  CHECK(sincere_utility(b, {0, 1}) == Rational(1));
  CHECK(sincere_utility(b, {}) == Rational(0));
  CHECK(sincere_utility(b, {0, 2}) == Rational(2));
  CHECK_THROWS_AS(sincere_utility(b, {5}), std::out_of_range);
}

TEST_CASE("sincere utility on the max-min counterexample instance") {
  const ElectionInstance instance = load_election_fixture("prop_p14.election.json");
  // voter 1's ballot {a, e, g} evaluated on the sincere winning set {a, e, g}
  const std::vector<int> aeg = {0, 4, 6};
  CHECK(sincere_utility(instance.profile.ballots[0], aeg) == Rational(3));
  CHECK(sincere_utility(instance.profile.ballots[1], aeg) == Rational(1));
  CHECK(sincere_utility(instance.profile.ballots[4], aeg) == Rational(1));
}

TEST_CASE("weighted utility sums weights over the overlap") {
  WeightMap w1;
  w1.weights = {Rational(5)};
  CHECK(weighted_utility(Ballot::approval(1, {0}), {0}, w1) == Rational(5));

  WeightMap w3 = WeightMap::unitary(3);
  CHECK(weighted_utility(Ballot::approval(3, {0, 1}), {2}, w3) == Rational(0));

  // weights of a, e, g from the counterexample instance
  const ElectionInstance instance = load_election_fixture("prop_p14.election.json");
  CHECK(weighted_utility(instance.profile.ballots[0], {0, 4, 6}, instance.weights) ==
        Rational(60));

  CHECK_THROWS_AS(weighted_utility(Ballot::ranking({1, 2, 3}), {0}, w3),
                  std::invalid_argument);
}

TEST_CASE("utility monotonicity and additivity") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = static_cast<int>(rand_int(rng, 1, 6));
    std::vector<Rational> values;
    for (int o = 0; o < m; ++o) values.push_back(rand_rational(rng, 5, 3));
    const Ballot b = Ballot::value(values);

    std::vector<int> subset, rest;
    for (int o = 0; o < m; ++o) (rand_below(rng, 2) ? subset : rest).push_back(o);

    // additive over disjoint subsets
    CHECK(sincere_utility(b, subset) + sincere_utility(b, rest) ==
          sincere_utility(b, subset_from_mask((SubsetMask{1} << m) - 1, m)));

    // adding a non-negative-valued object never decreases the utility
    for (int o : rest) {
      if (b.value_of(o) < 0) continue;
      std::vector<int> grown = subset;
      grown.push_back(o);
      CHECK(sincere_utility(b, grown) >= sincere_utility(b, subset));
    }
  }
}

TEST_CASE("approval utility is bounded by both set sizes") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = static_cast<int>(rand_int(rng, 1, 7));
    std::vector<int> approved, subset;
    for (int o = 0; o < m; ++o) {
      if (rand_below(rng, 2)) approved.push_back(o);
      if (rand_below(rng, 2)) subset.push_back(o);
    }
    const Rational u = sincere_utility(Ballot::approval(m, approved), subset);
    CHECK(u >= 0);
    CHECK(u <= Rational(static_cast<long long>(std::min(approved.size(), subset.size()))));
  }
}

TEST_CASE("profile and election validation") {
  Profile p;
  p.num_objects = 2;
  p.kind = BallotKind::Approval;
  p.ballots.push_back(Ballot::approval(2, {0}));
  p.ballots.push_back(Ballot::ranking({1, 2}));
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);

  ElectionInstance instance = load_election_fixture("prop_p14.election.json");
  CHECK(instance.feasible({0, 4, 6}));        // weight 60 == budget
  CHECK_FALSE(instance.feasible({0, 3, 4, 6}));  // adding d exceeds it
  instance.weights.weights[0] = Rational(-1);
  CHECK_THROWS_AS(instance.validate(), std::invalid_argument);
}

TEST_CASE("election JSON round-trips") {
  for (const char* name :
       {"sec5_example.election.json", "prop_p14.election.json", "prop936.election.json",
        "theorem3_construction.election.json"}) {
    const ElectionInstance instance = load_election_fixture(name);
    const ElectionInstance reparsed = election_from_json(election_to_json(instance, true));
    CHECK(reparsed == instance);
  }
}

TEST_CASE("matrix CSV round-trips") {
  for (const char* name : {"sec5_example.matrix.csv", "prop936.matrix.csv",
                           "delta_not_total_3x3.matrix.csv"}) {
    const ScoreMatrix matrix = load_matrix_fixture(name);
    CHECK(matrix_from_csv(matrix_to_csv(matrix)) == matrix);
  }
  CHECK(matrix_from_csv("1/2,1\n-3,0\n").at(0, 0) == Rational(1, 2));
  CHECK_THROWS_AS(matrix_from_csv("1,2\n3\n"), std::invalid_argument);
}

TEST_CASE("tie-break JSON round-trips") {
  const std::vector<std::string> names = {"a", "b", "c"};
  const TieBreak tb = tiebreak_from_json("[\"c\",\"a\",\"b\"]", names);
  CHECK(tb.order() == std::vector<int>{2, 0, 1});
  CHECK(tb.beats(2, 0));
  CHECK_FALSE(tb.beats(1, 0));
  const TieBreak reparsed = tiebreak_from_json(tiebreak_to_json(tb, names), names);
  CHECK(reparsed == tb);
  CHECK_THROWS_AS(tiebreak_from_json("[\"a\",\"a\",\"b\"]", names), std::invalid_argument);
}

TEST_CASE("value ballots accept arbitrary rationals") {
  const ElectionInstance instance = load_election_fixture("theorem3_construction.election.json");
  CHECK(instance.profile.kind == BallotKind::Value);
  CHECK(sincere_utility(instance.profile.ballots[0], {0}) == Rational(2));
  const Ballot negative = Ballot::value({Rational(-7, 3), Rational(1000000)});
  CHECK(sincere_utility(negative, {0, 1}) == Rational(2999993, 3));
}
