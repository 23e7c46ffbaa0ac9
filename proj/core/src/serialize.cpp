#include "scorevote/serialize.hpp"

#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace scorevote {

using nlohmann::json;

namespace {

json rational_to_json(const Rational& q) {
  if (is_integer(q)) {
    const BigInt num = boost::multiprecision::numerator(q);
    if (num >= std::numeric_limits<long long>::min() &&
        num <= std::numeric_limits<long long>::max())
      return json(num.convert_to<long long>());
  }
  return json(format_rational(q));
}

Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_float()) {
    throw std::invalid_argument(
        "rationals must be integers or \"p/q\" strings, not floats");
  }
  throw std::invalid_argument("expected a rational (integer or \"p/q\" string)");
}

int object_index(const std::vector<std::string>& names, const std::string& name) {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return static_cast<int>(i);
  throw std::invalid_argument("unknown object name: '" + name + "'");
}

json names_of(const std::vector<int>& objects, const std::vector<std::string>& names) {
  json arr = json::array();
  for (int o : objects) arr.push_back(names.at(static_cast<std::size_t>(o)));
  return arr;
}

std::vector<int> indices_of(const json& arr, const std::vector<std::string>& names) {
  std::vector<int> out;
  for (const json& v : arr) out.push_back(object_index(names, v.get<std::string>()));
  return out;
}

json ballot_to_json(const Ballot& ballot, const std::vector<std::string>& names) {
  json arr = json::array();
  switch (ballot.kind()) {
    case BallotKind::Approval:
      return names_of(ballot.approved_set(), names);
    case BallotKind::Ranking:
      for (const Rational& v : ballot.values())
        arr.push_back(boost::multiprecision::numerator(v).convert_to<long long>());
      return arr;
    case BallotKind::Value:
      for (const Rational& v : ballot.values()) arr.push_back(rational_to_json(v));
      return arr;
  }
  throw std::logic_error("unknown ballot kind");
}

Ballot ballot_from_json(const json& j, BallotKind kind,
                        const std::vector<std::string>& names) {
  const int m = static_cast<int>(names.size());
  if (!j.is_array()) throw std::invalid_argument("a ballot must be a JSON array");
  switch (kind) {
    case BallotKind::Approval:
      return Ballot::approval(m, indices_of(j, names));
    case BallotKind::Ranking: {
      std::vector<int> ranks;
      for (const json& v : j) ranks.push_back(v.get<int>());
      if (static_cast<int>(ranks.size()) != m)
        throw std::invalid_argument("ranking ballot must list one rank per object");
      return Ballot::ranking(ranks);
    }
    case BallotKind::Value: {
      std::vector<Rational> values;
      for (const json& v : j) values.push_back(rational_from_json(v));
      if (static_cast<int>(values.size()) != m)
        throw std::invalid_argument("value ballot must list one value per object");
      return Ballot::value(std::move(values));
    }
  }
  throw std::logic_error("unknown ballot kind");
}

json election_to_json_value(const ElectionInstance& instance) {
  json j;
  j["objects"] = instance.object_names;
  json weights = json::array();
  for (const Rational& w : instance.weights.weights) weights.push_back(rational_to_json(w));
  j["weights"] = weights;
  j["budget"] = rational_to_json(instance.budget);
  j["ballot_kind"] = to_string(instance.profile.kind);
  json ballots = json::array();
  for (const Ballot& b : instance.profile.ballots)
    ballots.push_back(ballot_to_json(b, instance.object_names));
  j["ballots"] = ballots;
  return j;
}

ElectionInstance election_from_json_value(const json& j) {
  ElectionInstance instance;
  instance.object_names = j.at("objects").get<std::vector<std::string>>();
  for (const json& w : j.at("weights")) instance.weights.weights.push_back(rational_from_json(w));
  instance.budget = rational_from_json(j.at("budget"));
  const BallotKind kind = ballot_kind_from_string(j.at("ballot_kind").get<std::string>());
  instance.profile.kind = kind;
  instance.profile.num_objects = static_cast<int>(instance.object_names.size());
  for (const json& b : j.at("ballots"))
    instance.profile.ballots.push_back(ballot_from_json(b, kind, instance.object_names));
  instance.validate();
  return instance;
}

std::string dump(const json& j, bool pretty) { return pretty ? j.dump(2) + "\n" : j.dump(); }

json violation_to_json(const ConstraintViolation& v,
                       const std::vector<std::string>& names) {
  json j;
  j["kind"] = to_string(v.kind);
  j["objects"] = names_of(v.indices, names);
  j["lhs"] = format_rational(v.lhs);
  j["rhs"] = format_rational(v.rhs);
  return j;
}

}  // namespace

ElectionInstance election_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed election JSON: ") + e.what());
  }
  return election_from_json_value(j);
}

std::string election_to_json(const ElectionInstance& instance, bool pretty) {
  return dump(election_to_json_value(instance), pretty);
}

ScoreMatrix matrix_from_csv(const std::string& text) {
  std::vector<std::vector<Rational>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<Rational> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) row.push_back(parse_rational(cell));
    if (!row.empty()) rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::invalid_argument("matrix CSV has no rows");
  return ScoreMatrix::from_rows(rows);
}

std::string matrix_to_csv(const ScoreMatrix& matrix) {
  std::ostringstream out;
  for (int i = 0; i < matrix.size(); ++i) {
    for (int j = 0; j < matrix.size(); ++j) {
      if (j) out << ',';
      out << format_rational(matrix.at(i, j));
    }
    out << '\n';
  }
  return out.str();
}

TieBreak tiebreak_from_json(const std::string& text,
                            const std::vector<std::string>& object_names) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed tie-break JSON: ") + e.what());
  }
  if (!j.is_array()) throw std::invalid_argument("tie-break must be a JSON array of names");
  return TieBreak(indices_of(j, object_names));
}

std::string tiebreak_to_json(const TieBreak& tiebreak,
                             const std::vector<std::string>& object_names) {
  return dump(names_of(tiebreak.order(), object_names), false) + "\n";
}

std::string solver_result_to_json(const SolverResult& result,
                                  const std::vector<std::string>& object_names,
                                  bool pretty) {
  json j;
  j["winning_set"] = names_of(result.winning_set, object_names);
  j["objective_value"] = format_rational(result.objective_value);
  j["secondary_value"] = format_rational(result.secondary_value);
  return dump(j, pretty);
}

std::string winning_set_to_json(const WinningSet& ws,
                                const std::vector<std::string>& object_names,
                                bool pretty) {
  json j;
  j["objects"] = names_of(ws.objects, object_names);
  json scores = json::object();
  for (std::size_t o = 0; o < object_names.size(); ++o)
    scores[object_names[o]] = format_rational(ws.all_scores[o]);
  j["scores"] = scores;
  j["selection_order"] = names_of(ws.selection_order, object_names);
  return dump(j, pretty);
}

std::string witness_to_json(const ManipulationWitness& witness, bool pretty) {
  json j;
  j["instance"] = election_to_json_value(witness.instance);
  j["voter"] = witness.voter;
  const auto& names = witness.instance.object_names;
  j["sincere_ballot"] = ballot_to_json(witness.sincere_ballot, names);
  j["deviant_ballot"] = ballot_to_json(witness.deviant_ballot, names);
  j["outcome_sincere"] = names_of(witness.outcome_sincere, names);
  j["outcome_deviant"] = names_of(witness.outcome_deviant, names);
  j["utility_sincere"] = format_rational(witness.utility_sincere);
  j["utility_deviant"] = format_rational(witness.utility_deviant);
  return dump(j, pretty);
}

ManipulationWitness witness_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed witness JSON: ") + e.what());
  }
  ManipulationWitness w;
  w.instance = election_from_json_value(j.at("instance"));
  w.voter = j.at("voter").get<int>();
  const auto& names = w.instance.object_names;
  const BallotKind kind = w.instance.profile.kind;
  w.sincere_ballot = ballot_from_json(j.at("sincere_ballot"), kind, names);
  w.deviant_ballot = ballot_from_json(j.at("deviant_ballot"), kind, names);
  w.outcome_sincere = indices_of(j.at("outcome_sincere"), names);
  w.outcome_deviant = indices_of(j.at("outcome_deviant"), names);
  w.utility_sincere = rational_from_json(j.at("utility_sincere"));
  w.utility_deviant = rational_from_json(j.at("utility_deviant"));
  return w;
}

bool Certificate::all_pass() const {
  if (neutral && !neutral->neutral) return false;
  if (total && !total->total) return false;
  if (delta && !delta->empty()) return false;
  if (delta_plus && !delta_plus->empty()) return false;
  if (ccp && !ccp->holds_on_bounds) return false;
  return true;
}

std::string certificate_to_json(const Certificate& cert,
                                const std::vector<std::string>& object_names,
                                bool pretty) {
  json j;
  if (cert.neutral) {
    json n;
    n["neutral"] = cert.neutral->neutral;
    if (cert.neutral->violation)
      n["violation"] = violation_to_json(*cert.neutral->violation, object_names);
    j["neutral"] = n;
  }
  if (cert.total) {
    json t;
    t["total"] = cert.total->total;
    json targets = json::array();
    for (const TotalityTarget& target : cert.total->targets) {
      json tj;
      tj["W"] = target.budget_w;
      tj["subset"] = names_of(target.subset, object_names);
      if (target.witness) {
        tj["witness_tally"] = *target.witness;
      } else {
        tj["infeasible"] = true;
      }
      targets.push_back(tj);
    }
    t["targets"] = targets;
    j["total"] = t;
  }
  if (cert.delta) {
    json v = json::array();
    for (const ConstraintViolation& violation : *cert.delta)
      v.push_back(violation_to_json(violation, object_names));
    j["delta"] = v;
  }
  if (cert.delta_plus) {
    json v = json::array();
    for (const ConstraintViolation& violation : *cert.delta_plus)
      v.push_back(violation_to_json(violation, object_names));
    j["delta_plus"] = v;
  }
  if (cert.ccp) {
    json c;
    c["holds_on_bounds"] = cert.ccp->holds_on_bounds;
    if (cert.ccp->counterexample) {
      const CcpCounterexample& ce = *cert.ccp->counterexample;
      json cj;
      cj["tally"] = ce.tally;
      cj["W"] = ce.budget_w;
      cj["alpha"] = object_names.at(static_cast<std::size_t>(ce.alpha));
      cj["beta"] = object_names.at(static_cast<std::size_t>(ce.beta));
      cj["before"] = names_of(ce.before, object_names);
      cj["after"] = names_of(ce.after, object_names);
      c["counterexample"] = cj;
    }
    j["ccp"] = c;
  }
  return dump(j, pretty);
}

std::string projection_result_to_json(const ProjectionResult& result, bool pretty) {
  json j;
  j["status"] = to_string(result.status);
  j["distance"] = result.distance;
  j["delta"] = result.delta;
  j["eps"] = result.eps;
  j["totality_checked"] = result.totality_checked;
  json rows = json::array();
  for (int i = 0; i < result.matrix.size(); ++i) {
    json row = json::array();
    for (int k = 0; k < result.matrix.size(); ++k)
      row.push_back(format_rational(result.matrix.at(i, k)));
    rows.push_back(row);
  }
  j["matrix"] = rows;
  return dump(j, pretty);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write file: " + path);
  out << content;
}

}  // namespace scorevote
