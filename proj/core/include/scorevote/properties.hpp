#pragma once

#include <optional>
#include <vector>

#include "scorevote/model.hpp"
#include "scorevote/rational.hpp"
#include "scorevote/score.hpp"

namespace scorevote {

enum class ViolationKind { DeltaMain, DeltaDiag, DeltaPlusEq, NeutralEq, NeutralStrict };

std::string to_string(ViolationKind kind);

// lhs/rhs are the two sides of the broken (in)equality exactly as evaluated;
// `indices` identifies the objects involved (see each checker for the layout).
struct ConstraintViolation {
  ViolationKind kind;
  std::vector<int> indices;
  Rational lhs;
  Rational rhs;

  bool operator==(const ConstraintViolation&) const = default;
};

struct NeutralityResult {
  bool neutral = false;
  std::optional<ConstraintViolation> violation;  // first one in subset-lex order
};

// Definitional neutrality check: for every nonempty subset S, the coordinates
// of M·indicator(S) inside S agree and strictly dominate every coordinate
// outside S. Exponential in m; throws ResourceLimitError above max_objects.
// NeutralEq violations carry indices = S followed by the unequal coordinate;
// NeutralStrict violations carry indices = S followed by the offending outside
// coordinate.
NeutralityResult is_neutral(const ScoreFunction& sf, int max_objects = 12);

struct NeutralDecomposition {
  Rational diagonal;              // c > 0
  std::vector<Rational> lambda;   // per-column offsets

  bool operator==(const NeutralDecomposition&) const = default;
};

// M = c·I + sum_j lambda_j · (all-ones column j), when such a form exists:
// every column constant off the diagonal and one shared positive diagonal
// surplus c. Returns nullopt otherwise.
std::optional<NeutralDecomposition> neutral_decomposition(const ScoreMatrix& matrix);

struct TotalityTarget {
  int budget_w;
  std::vector<int> subset;
  std::optional<TallyVector> witness;  // a tally whose winners reproduce the subset

  bool operator==(const TotalityTarget&) const = default;
};

struct TotalityReport {
  bool total = false;
  std::vector<TotalityTarget> targets;  // every (W, W-subset), W in [0, m]
};

// Decides, for every W in [0, m] and every W-subset, whether some nonzero
// tally makes it the winning set (a profile of at least one voter always
// leaves a nonzero tally, so the all-zero tally never counts as a witness).
// Each target reduces to exact-rational linear feasibility over the
// normalized simplex: strict score gaps where the tie-break is unfavorable,
// weak gaps otherwise; the rational optimum is scaled to an integer witness.
TotalityReport is_total(const ScoreFunction& sf, int max_objects = 10, int jobs = 1);

// The Delta constraints: triple inequalities M[i][i] - M[i][j] >= M[k][i] -
// M[k][j] over all triples, and pair constraints M[i][j] < M[j][j] (strict
// when i beats j in the tie-break, weak otherwise). Empty result == Delta
// holds. DeltaMain indices are {i, j, k}; DeltaDiag indices are {i, j}.
std::vector<ConstraintViolation> check_delta(const ScoreFunction& sf);

enum class DeltaPlusVariant {
  Literal,       // column-difference equalities over all quadruples (a, b, c, d)
  DistinctOnly,  // only quadruples with a, b, c, d pairwise distinct
};

// Delta plus the column-difference equalities
// M[c][a] - M[c][b] = M[d][a] - M[d][b]. DeltaPlusEq indices are {a, b, c, d}.
std::vector<ConstraintViolation> check_delta_plus(
    const ScoreFunction& sf, DeltaPlusVariant variant = DeltaPlusVariant::Literal);

struct CcpBounds {
  long long max_tally = 5;
  std::vector<int> budgets;  // empty = every W in [0, m]
  // When set, only transitions realizable by a profile of at most this many
  // W-subset ballots are replayed: sum(e) = n·W with n <= max_voters, every
  // entry <= n, and e[beta] <= n-1 so some voter can actually swap alpha for
  // beta. This is the tally space a manipulation search over n <= max_voters
  // voters explores, which makes the two verdicts comparable.
  std::optional<int> max_voters;
};

struct CcpCounterexample {
  TallyVector tally;
  int budget_w;
  int alpha;
  int beta;
  std::vector<int> before;
  std::vector<int> after;

  bool operator==(const CcpCounterexample&) const = default;
};

struct CcpReport {
  bool holds_on_bounds = false;
  std::optional<CcpCounterexample> counterexample;
};

// Exhaustively replays every single swap alpha -> beta on every tally with
// entries <= max_tally and flags any winner-set transition that is not one of:
// alpha ejected and replaced by exactly one object, beta admitted and exactly
// one object ejected, or no change. First counterexample in lexicographic
// (tally, W, alpha, beta) order.
CcpReport check_ccp(const ScoreFunction& sf, const CcpBounds& bounds, int jobs = 1);

// A feasible set s is first-class when for every feasible s* some voter
// permutation makes s componentwise at least as good; equivalently the
// ascending-sorted utility vector of s dominates that of s*.
bool is_first_class(const std::vector<int>& subset, const ElectionInstance& instance,
                    int max_objects = 20);

}  // namespace scorevote
