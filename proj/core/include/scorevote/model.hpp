#pragma once

#include <string>
#include <vector>

#include "scorevote/rational.hpp"

namespace scorevote {

enum class BallotKind { Approval, Ranking, Value };

std::string to_string(BallotKind kind);
BallotKind ballot_kind_from_string(const std::string& text);

// One voter's answer. All three kinds are stored as a per-object value vector:
// approval ballots hold 0/1, ranking ballots hold the rank (m = most
// preferred), value ballots hold arbitrary rationals.
class Ballot {
 public:
  Ballot() = default;

  static Ballot approval(int num_objects, const std::vector<int>& approved);
  static Ballot ranking(const std::vector<int>& ranks);
  static Ballot value(std::vector<Rational> values);

  BallotKind kind() const { return kind_; }
  int num_objects() const { return static_cast<int>(values_.size()); }
  const Rational& value_of(int object) const;
  const std::vector<Rational>& values() const { return values_; }

  bool approves(int object) const;         // Approval only
  std::vector<int> approved_set() const;   // Approval only

  bool operator==(const Ballot&) const = default;

 private:
  Ballot(BallotKind kind, std::vector<Rational> values)
      : kind_(kind), values_(std::move(values)) {}

  BallotKind kind_ = BallotKind::Approval;
  std::vector<Rational> values_;
};

// Ordered list of ballots, one per voter. Voters are identified by position.
struct Profile {
  std::vector<Ballot> ballots;
  int num_objects = 0;
  BallotKind kind = BallotKind::Approval;

  int num_voters() const { return static_cast<int>(ballots.size()); }
  static Profile of(std::vector<Ballot> ballots, int num_objects, BallotKind kind);
  void validate() const;  // uniform kind and object universe

  bool operator==(const Profile&) const = default;
};

struct WeightMap {
  std::vector<Rational> weights;

  static WeightMap unitary(int num_objects);
  bool is_unitary() const;
  void validate() const;  // all weights > 0

  bool operator==(const WeightMap&) const = default;
};

// Full input to a mechanism: objects with weights, budget, and a profile.
// A subset is feasible iff its total weight does not exceed the budget.
struct ElectionInstance {
  std::vector<std::string> object_names;
  WeightMap weights;
  Rational budget;
  Profile profile;

  int num_objects() const { return static_cast<int>(object_names.size()); }
  Rational subset_weight(const std::vector<int>& subset) const;
  bool feasible(const std::vector<int>& subset) const;
  void validate() const;

  static std::vector<std::string> default_names(int num_objects);  // "o1".."om"

  bool operator==(const ElectionInstance&) const = default;
};

// u_v(S) = sum of the ballot's values over S. For approval ballots this is the
// overlap count |S ∩ ballot|. Throws std::out_of_range when the subset leaves
// the object universe.
Rational sincere_utility(const Ballot& ballot, const std::vector<int>& subset);

// Weight-valued overlap for approval ballots: sum of w(o) over o in both the
// subset and the ballot. Throws std::invalid_argument for other ballot kinds.
Rational weighted_utility(const Ballot& ballot, const std::vector<int>& subset,
                          const WeightMap& weights);

}  // namespace scorevote
