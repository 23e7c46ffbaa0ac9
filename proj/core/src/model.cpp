#include "scorevote/model.hpp"

#include <algorithm>
#include <stdexcept>

namespace scorevote {

std::string to_string(BallotKind kind) {
  switch (kind) {
    case BallotKind::Approval: return "approval";
    case BallotKind::Ranking: return "ranking";
    case BallotKind::Value: return "value";
  }
  throw std::logic_error("unknown ballot kind");
}

BallotKind ballot_kind_from_string(const std::string& text) {
  if (text == "approval") return BallotKind::Approval;
  if (text == "ranking") return BallotKind::Ranking;
  if (text == "value") return BallotKind::Value;
  throw std::invalid_argument("unknown ballot kind: '" + text + "'");
}

Ballot Ballot::approval(int num_objects, const std::vector<int>& approved) {
  if (num_objects < 1) throw std::invalid_argument("ballot needs at least one object");
  std::vector<Rational> values(static_cast<std::size_t>(num_objects), Rational(0));
  for (int o : approved) {
    if (o < 0 || o >= num_objects)
      throw std::out_of_range("approved object index out of range");
    if (values[static_cast<std::size_t>(o)] != 0)
      throw std::invalid_argument("duplicate object in approval ballot");
    values[static_cast<std::size_t>(o)] = 1;
  }
  return Ballot(BallotKind::Approval, std::move(values));
}

Ballot Ballot::ranking(const std::vector<int>& ranks) {
  const int m = static_cast<int>(ranks.size());
  if (m < 1) throw std::invalid_argument("ballot needs at least one object");
  std::vector<bool> seen(static_cast<std::size_t>(m), false);
  std::vector<Rational> values(static_cast<std::size_t>(m));
  for (int o = 0; o < m; ++o) {
    const int r = ranks[static_cast<std::size_t>(o)];
    if (r < 1 || r > m) throw std::invalid_argument("rank outside [1, m]");
    if (seen[static_cast<std::size_t>(r - 1)])
      throw std::invalid_argument("ranking ballot is not a bijection");
    seen[static_cast<std::size_t>(r - 1)] = true;
    values[static_cast<std::size_t>(o)] = r;
  }
  return Ballot(BallotKind::Ranking, std::move(values));
}

Ballot Ballot::value(std::vector<Rational> values) {
  if (values.empty()) throw std::invalid_argument("ballot needs at least one object");
  return Ballot(BallotKind::Value, std::move(values));
}

const Rational& Ballot::value_of(int object) const {
  if (object < 0 || object >= num_objects())
    throw std::out_of_range("object index outside the ballot's universe");
  return values_[static_cast<std::size_t>(object)];
}

bool Ballot::approves(int object) const {
  if (kind_ != BallotKind::Approval)
    throw std::invalid_argument("approves() requires an approval ballot");
  return value_of(object) == 1;
}

std::vector<int> Ballot::approved_set() const {
  if (kind_ != BallotKind::Approval)
    throw std::invalid_argument("approved_set() requires an approval ballot");
  std::vector<int> out;
  for (int o = 0; o < num_objects(); ++o)
    if (values_[static_cast<std::size_t>(o)] == 1) out.push_back(o);
  return out;
}

Profile Profile::of(std::vector<Ballot> ballots, int num_objects, BallotKind kind) {
  Profile p;
  p.ballots = std::move(ballots);
  p.num_objects = num_objects;
  p.kind = kind;
  p.validate();
  return p;
}

void Profile::validate() const {
  if (num_objects < 1) throw std::invalid_argument("profile needs at least one object");
  for (const Ballot& b : ballots) {
    if (b.kind() != kind) throw std::invalid_argument("mixed ballot kinds in profile");
    if (b.num_objects() != num_objects)
      throw std::invalid_argument("ballot universe does not match profile universe");
  }
}

WeightMap WeightMap::unitary(int num_objects) {
  WeightMap wm;
  wm.weights.assign(static_cast<std::size_t>(num_objects), Rational(1));
  return wm;
}

bool WeightMap::is_unitary() const {
  return std::all_of(weights.begin(), weights.end(),
                     [](const Rational& w) { return w == 1; });
}

void WeightMap::validate() const {
  if (weights.empty()) throw std::invalid_argument("weight map is empty");
  for (const Rational& w : weights)
    if (w <= 0) throw std::invalid_argument("object weights must be positive");
}

Rational ElectionInstance::subset_weight(const std::vector<int>& subset) const {
  Rational total(0);
  for (int o : subset) {
    if (o < 0 || o >= num_objects()) throw std::out_of_range("object index out of range");
    total += weights.weights[static_cast<std::size_t>(o)];
  }
  return total;
}

bool ElectionInstance::feasible(const std::vector<int>& subset) const {
  return subset_weight(subset) <= budget;
}

void ElectionInstance::validate() const {
  const int m = num_objects();
  if (m < 1) throw std::invalid_argument("election needs at least one object");
  weights.validate();
  if (static_cast<int>(weights.weights.size()) != m)
    throw std::invalid_argument("weight count does not match object count");
  if (budget < 0) throw std::invalid_argument("budget must be non-negative");
  if (profile.num_objects != m)
    throw std::invalid_argument("profile universe does not match object count");
  profile.validate();
  for (std::size_t i = 0; i < object_names.size(); ++i)
    for (std::size_t j = i + 1; j < object_names.size(); ++j)
      if (object_names[i] == object_names[j])
        throw std::invalid_argument("duplicate object name: '" + object_names[i] + "'");
}

std::vector<std::string> ElectionInstance::default_names(int num_objects) {
  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(num_objects));
  for (int o = 0; o < num_objects; ++o) names.push_back("o" + std::to_string(o + 1));
  return names;
}

Rational sincere_utility(const Ballot& ballot, const std::vector<int>& subset) {
  Rational total(0);
  for (int o : subset) total += ballot.value_of(o);
  return total;
}

Rational weighted_utility(const Ballot& ballot, const std::vector<int>& subset,
                          const WeightMap& weights) {
  if (ballot.kind() != BallotKind::Approval)
    throw std::invalid_argument("weighted_utility requires an approval ballot");
  if (static_cast<int>(weights.weights.size()) != ballot.num_objects())
    throw std::invalid_argument("weight count does not match ballot universe");
  Rational total(0);
  for (int o : subset)
    if (ballot.approves(o)) total += weights.weights[static_cast<std::size_t>(o)];
  return total;
}

}  // namespace scorevote
