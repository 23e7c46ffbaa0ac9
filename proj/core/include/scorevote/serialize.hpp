#pragma once

#include <optional>
#include <string>
#include <vector>

#include "scorevote/model.hpp"
#include "scorevote/oracle.hpp"
#include "scorevote/projection.hpp"
#include "scorevote/properties.hpp"
#include "scorevote/score.hpp"
#include "scorevote/welfare.hpp"

namespace scorevote {

// Election JSON:
//   { "objects": ["a", ...], "weights": [1, ...], "budget": W,
//     "ballot_kind": "approval"|"ranking"|"value", "ballots": [[...], ...] }
// Approval ballots list object names; ranking ballots list one rank per
// object (1..m, m = most preferred) aligned with "objects"; value ballots
// list one rational per object. Rationals appear as integers or "p/q".
ElectionInstance election_from_json(const std::string& text);
std::string election_to_json(const ElectionInstance& instance, bool pretty = false);

// Matrix CSV: m lines of m comma-separated rationals.
ScoreMatrix matrix_from_csv(const std::string& text);
std::string matrix_to_csv(const ScoreMatrix& matrix);

// Tie-break JSON: a list of object names, earliest wins ties.
TieBreak tiebreak_from_json(const std::string& text,
                            const std::vector<std::string>& object_names);
std::string tiebreak_to_json(const TieBreak& tiebreak,
                             const std::vector<std::string>& object_names);

std::string solver_result_to_json(const SolverResult& result,
                                  const std::vector<std::string>& object_names,
                                  bool pretty = false);

std::string winning_set_to_json(const WinningSet& ws,
                                const std::vector<std::string>& object_names,
                                bool pretty = false);

std::string witness_to_json(const ManipulationWitness& witness, bool pretty = false);
ManipulationWitness witness_from_json(const std::string& text);

// Certificate with one entry per requested check:
//   { "neutral": {...}, "total": {...}, "delta": [...], "delta_plus": [...],
//     "ccp": {...} }
struct Certificate {
  std::optional<NeutralityResult> neutral;
  std::optional<TotalityReport> total;
  std::optional<std::vector<ConstraintViolation>> delta;
  std::optional<std::vector<ConstraintViolation>> delta_plus;
  std::optional<CcpReport> ccp;

  bool all_pass() const;
};
std::string certificate_to_json(const Certificate& cert,
                                const std::vector<std::string>& object_names,
                                bool pretty = false);

std::string projection_result_to_json(const ProjectionResult& result, bool pretty = false);

// Whole-file helpers.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace scorevote
