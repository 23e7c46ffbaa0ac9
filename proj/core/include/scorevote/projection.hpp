#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "scorevote/properties.hpp"
#include "scorevote/score.hpp"

namespace scorevote {

struct ProjectionOptions {
  double tol = 1e-9;                             // per-cycle movement threshold
  long long max_iterations = 1'000'000;          // single-constraint projections
  DeltaPlusVariant variant = DeltaPlusVariant::DistinctOnly;
  double delta = 1e-2;                           // repair sphere radius
  double eps = 1e-3;                             // cover grid step
  long long cover_cap = 2'000'000;               // enumerated cover points
  long long denominator_cap = 1'000'000;         // rationalization of iterates
  int totality_max_objects = 10;
};

// One linear constraint on the flattened (row-major) matrix entries:
// coeffs·x <= rhs, or = rhs.
struct MatrixConstraint {
  std::vector<std::pair<int, double>> terms;  // sparse (index, coefficient)
  double rhs = 0.0;
  bool equality = false;
};

// The closed relaxation of the constraint family: weak pair and triple
// inequalities plus the column-difference equalities of the chosen variant,
// deduplicated.
std::vector<MatrixConstraint> closure_constraints(int num_objects,
                                                  DeltaPlusVariant variant);

struct ClosureProjection {
  std::vector<double> raw;   // converged iterate, row-major
  ScoreMatrix matrix;        // raw entries rationalized (exact verdicts happen here)
  double distance = 0.0;     // Frobenius distance from the input to raw
  double residual = 0.0;     // max constraint violation of raw
  long long iterations = 0;  // single-constraint projections spent
};

// Frobenius-nearest point of the closure, by cyclic projections with
// correction terms (Dykstra) onto the individual halfspaces and hyperplanes.
// Throws NumericError with the residual when the iteration cap is hit before
// the per-cycle movement drops below tol.
ClosureProjection project_onto_closure(const ScoreMatrix& input, const TieBreak& tiebreak,
                                       const ProjectionOptions& options = {});

// Enumerates the cover of the radius-delta sphere around `center`: integer
// grid steps of eps in the first m^2-1 coordinates, the last coordinate
// closing the norm, both signs. Candidates are tried nearest-to-`original`
// first and accepted on an exact rational check of the full constraint family
// (strict where the tie-break demands it). Returns nullopt when no cover
// point qualifies. Throws ResourceLimitError when the cover exceeds
// options.cover_cap (use a larger eps).
std::optional<ScoreMatrix> sphere_repair(const ScoreMatrix& center,
                                         const ScoreMatrix& original,
                                         const TieBreak& tiebreak,
                                         const ProjectionOptions& options = {});

enum class ProjectionStatus { ExactProjection, SphereRepaired, NoStrictPoint, NotTotal };

std::string to_string(ProjectionStatus status);

struct ProjectionResult {
  ScoreMatrix matrix;
  double distance = 0.0;  // Frobenius distance from the input
  ProjectionStatus status = ProjectionStatus::ExactProjection;
  double delta = 0.0;
  double eps = 0.0;
  bool totality_checked = false;
};

// The full pipeline: project onto the closure; accept when the rationalized
// projection satisfies the exact constraint family (strictness included);
// otherwise repair on the delta-sphere; finally verify totality of the result
// and downgrade to NotTotal when it fails.
ProjectionResult closest_strategyproof(const ScoreMatrix& input, const TieBreak& tiebreak,
                                       const ProjectionOptions& options = {});

// Unit-sphere cover point construction shared with the repair step: rounds the
// first dim-1 coordinates of `x` (a unit vector) to the eps grid, pulling
// oversized grid points back inside the ball, and closes the norm on the last
// coordinate. The result is a cover point, so its distance to x bounds the
// cover gap from above.
std::vector<double> nearest_unit_cover_point(const std::vector<double>& x, double eps);

}  // namespace scorevote
