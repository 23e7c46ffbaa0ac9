#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "scorevote/errors.hpp"
#include "scorevote/oracle.hpp"
#include "scorevote/properties.hpp"
#include "test_support.hpp"

using namespace svtest;

namespace {

Mechanism prop936_mechanism() {
  return Mechanism::score_voting(
      ScoreFunction{load_matrix_fixture("prop936.matrix.csv"), TieBreak::natural(4)},
      {"a", "b", "c", "d"});
}

}  // namespace

TEST_CASE("knapsack voting admits no witness within small bounds") {
  for (int m = 1; m <= 3; ++m) {
    const Mechanism mech = Mechanism::score_voting(knapsack_matrix(m));
    OracleBounds bounds;
    bounds.max_voters = 3;
    CHECK_FALSE(find_manipulation(mech, bounds));
  }
}

TEST_CASE("the four-object matrix yields the known two-voter witness") {
  const Mechanism mech = prop936_mechanism();
  OracleBounds bounds;
  bounds.max_voters = 2;
  bounds.budgets = {2};
  const auto witness = find_manipulation(mech, bounds);
  REQUIRE(witness);
  // voter 1 with sincere {a,d} lies {b,d}; the outcome moves {a,c} -> {a,d}
  CHECK(witness->voter == 0);
  CHECK(witness->sincere_ballot == Ballot::approval(4, {0, 3}));
  CHECK(witness->deviant_ballot == Ballot::approval(4, {1, 3}));
  CHECK(witness->outcome_sincere == std::vector<int>{0, 2});
  CHECK(witness->outcome_deviant == std::vector<int>{0, 3});
  CHECK(witness->utility_sincere == Rational(1));
  CHECK(witness->utility_deviant == Rational(2));
  // the other voter holds the paper's {a,c}
  CHECK(witness->instance.profile.ballots[1] == Ballot::approval(4, {0, 2}));
  CHECK(verify_witness(mech, *witness));
}

TEST_CASE("witness search is independent of the worker count") {
  const Mechanism mech = prop936_mechanism();
  OracleBounds bounds;
  bounds.max_voters = 2;
  bounds.budgets = {2};
  const auto a = find_manipulation(mech, bounds, 1);
  const auto b = find_manipulation(mech, bounds, 4);
  REQUIRE(a);
  REQUIRE(b);
  CHECK(*a == *b);
}

TEST_CASE("verify_witness rejects tampered records") {
  const Mechanism mech = prop936_mechanism();
  OracleBounds bounds;
  bounds.max_voters = 2;
  bounds.budgets = {2};
  auto witness = find_manipulation(mech, bounds);
  REQUIRE(witness);
  REQUIRE(verify_witness(mech, *witness));

  ManipulationWitness swapped = *witness;
  std::swap(swapped.utility_sincere, swapped.utility_deviant);
  CHECK_FALSE(verify_witness(mech, swapped));

  ManipulationWitness perturbed = *witness;
  perturbed.outcome_deviant = {1, 2};
  CHECK_FALSE(verify_witness(mech, perturbed));

  ManipulationWitness wrong_voter = *witness;
  wrong_voter.voter = 1;
  CHECK_FALSE(verify_witness(mech, wrong_voter));
}

TEST_CASE("witness JSON round-trips and still verifies") {
  const Mechanism mech = prop936_mechanism();
  OracleBounds bounds;
  bounds.max_voters = 2;
  bounds.budgets = {2};
  const auto witness = find_manipulation(mech, bounds);
  REQUIRE(witness);
  const ManipulationWitness reparsed = witness_from_json(witness_to_json(*witness, true));
  CHECK(reparsed == *witness);
  CHECK(verify_witness(mech, reparsed));
}

TEST_CASE("the max-min mechanism is manipulable from the six-voter profile") {
  const ElectionInstance instance = load_election_fixture("prop_p14.election.json");
  const Mechanism mech =
      Mechanism::welfare(MechanismKind::FairExact, instance.weights, instance.object_names);
  OracleBounds bounds;
  bounds.budget = instance.budget;
  bounds.fixed_profile = instance.profile;
  const auto witness = find_manipulation(mech, bounds);
  REQUIRE(witness);
  CHECK(witness->voter == 4);  // the {b,c,f,g} voter is the one who can gain
  CHECK(witness->utility_sincere == Rational(1));
  CHECK(witness->utility_deviant > Rational(1));
  CHECK(verify_witness(mech, *witness));
}

TEST_CASE("the two-voter unitary instance also hides a max-min witness") {
  const ElectionInstance instance = load_election_fixture("prop_p8.election.json");
  const Mechanism mech =
      Mechanism::welfare(MechanismKind::FairExact, instance.weights, instance.object_names);
  OracleBounds bounds;
  bounds.budget = instance.budget;
  bounds.fixed_profile = instance.profile;
  const auto witness = find_manipulation(mech, bounds);
  REQUIRE(witness);
  CHECK(verify_witness(mech, *witness));
  // the deviator herself gains strictly
  CHECK(witness->utility_deviant > witness->utility_sincere);
}

TEST_CASE("fuzzing the identity finds nothing") {
  const Mechanism mech = Mechanism::score_voting(knapsack_matrix(4));
  FuzzShape shape;
  shape.num_voters = 3;
  shape.budget = Rational(2);
  CHECK_FALSE(fuzz_manipulation(mech, 1, 10'000, shape));
}

TEST_CASE("fuzzing the four-object matrix finds a verified witness") {
  const Mechanism mech = prop936_mechanism();
  FuzzShape shape;
  shape.num_voters = 2;
  shape.budget = Rational(2);
  const auto witness = fuzz_manipulation(mech, 0, 10'000, shape);
  REQUIRE(witness);
  CHECK(verify_witness(mech, *witness));
}

TEST_CASE("fuzzing the unitary max-min mechanism finds a witness") {
  const Mechanism mech = Mechanism::welfare(MechanismKind::FairExact, WeightMap::unitary(4));
  FuzzShape shape;
  shape.num_voters = 2;
  shape.budget = Rational(2);
  const auto witness = fuzz_manipulation(mech, 0, 20'000, shape);
  REQUIRE(witness);
  CHECK(verify_witness(mech, *witness));
  CHECK(witness->utility_deviant > witness->utility_sincere);
}

TEST_CASE("bounded CCP implies no witness on matching bounds") {
  std::mt19937_64 rng(113);
  int exercised = 0;
  for (int trial = 0; trial < 25; ++trial) {
    ScoreMatrix matrix(3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) matrix.at(i, j) = rand_rational(rng, 5, 2);
    const ScoreFunction sf{matrix, TieBreak::natural(3)};
    if (!check_ccp(sf, CcpBounds{3, {}}).holds_on_bounds) continue;
    const Mechanism mech = Mechanism::score_voting(sf);
    OracleBounds bounds;
    bounds.max_voters = 3;
    CHECK_FALSE(find_manipulation(mech, bounds));
    ++exercised;
  }
  CHECK(exercised > 3);
}

TEST_CASE("oversized searches are rejected up front") {
  const Mechanism mech = Mechanism::score_voting(knapsack_matrix(5));
  OracleBounds bounds;
  bounds.max_voters = 8;
  bounds.max_explored = 1000;
  CHECK_THROWS_AS(find_manipulation(mech, bounds), ResourceLimitError);
}

TEST_CASE("the unitary utilitarian mechanism resists single-swap deviations") {
  const Mechanism mech =
      Mechanism::welfare(MechanismKind::UtilitarianUnitary, WeightMap::unitary(3));
  OracleBounds bounds;
  bounds.max_voters = 2;
  bounds.budget = Rational(2);
  CHECK_FALSE(find_manipulation(mech, bounds));
}
