#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "scorevote/model.hpp"
#include "scorevote/score.hpp"
#include "scorevote/welfare.hpp"

namespace scorevote {

enum class MechanismKind { UtilitarianUnitary, UtilitarianWeighted, FairExact, Score };

std::string to_string(MechanismKind kind);
MechanismKind mechanism_kind_from_string(const std::string& text);

// An executable social choice function: same profile and budget in, same
// winning set out, always.
struct Mechanism {
  MechanismKind kind = MechanismKind::Score;
  std::optional<ScoreFunction> score;   // Score only
  std::vector<std::string> object_names;
  WeightMap weights;

  static Mechanism score_voting(ScoreFunction sf,
                                std::vector<std::string> names = {});
  static Mechanism welfare(MechanismKind kind, WeightMap weights,
                           std::vector<std::string> names = {});

  int num_objects() const { return static_cast<int>(weights.weights.size()); }
  void validate() const;

  // For Score the budget must be an integer W in [0, m].
  std::vector<int> run(const Profile& profile, const Rational& budget) const;
};

// A concrete proof of manipulability: voter `voter` submits deviant_ballot
// instead of her sincere one and strictly gains, both utilities measured
// against the sincere ballot.
struct ManipulationWitness {
  ElectionInstance instance;  // sincere profile plus weights and budget
  int voter = 0;
  Ballot sincere_ballot;
  Ballot deviant_ballot;
  std::vector<int> outcome_sincere;
  std::vector<int> outcome_deviant;
  Rational utility_sincere;
  Rational utility_deviant;

  bool operator==(const ManipulationWitness&) const = default;
};

struct OracleBounds {
  int max_voters = 3;
  // Score mechanisms: the budgets W to sweep (ballots are W-subsets); empty
  // means every W in [0, m]. Welfare mechanisms use `budget` instead and
  // ballots range over all budget-feasible subsets.
  std::vector<int> budgets;
  std::optional<Rational> budget;
  // When set, only single-voter deviations from this profile are explored.
  std::optional<Profile> fixed_profile;
  bool use_weighted_utility = false;
  long long max_explored = 50'000'000;
};

// Exhaustive manipulation search. Returns the first witness in lexicographic
// (n, W, voter, profile, deviant-ballot) order, with profiles and ballots
// ordered by their sorted index sequences, or nullopt when no witness exists
// within the bounds. Throws ResourceLimitError when the space estimate
// exceeds bounds.max_explored. The result does not depend on `jobs`.
std::optional<ManipulationWitness> find_manipulation(const Mechanism& mech,
                                                     const OracleBounds& bounds,
                                                     int jobs = 1);

// Replays both runs and re-derives both utilities; true iff everything
// matches and the gain is strict.
bool verify_witness(const Mechanism& mech, const ManipulationWitness& witness);

struct FuzzShape {
  int num_voters = 2;
  Rational budget;  // W for score mechanisms
  bool use_weighted_utility = false;
};

// Samples random sincere profiles and single-voter deviations; returns the
// first verified witness. Reproducible for a fixed seed.
std::optional<ManipulationWitness> fuzz_manipulation(const Mechanism& mech,
                                                     std::uint64_t seed,
                                                     long long iterations,
                                                     const FuzzShape& shape);

}  // namespace scorevote
