#pragma once

#include <optional>
#include <vector>

#include "scorevote/rational.hpp"

namespace scorevote {

struct LinRow {
  std::vector<Rational> coeffs;
  Rational rhs;
};

// Dense constraint bundle over d variables. Strict rows want coeffs·x > rhs,
// weak rows coeffs·x >= rhs, equality rows coeffs·x = rhs.
struct LinearSystem {
  int dim = 0;
  std::vector<LinRow> strict_rows;
  std::vector<LinRow> weak_rows;
  std::vector<LinRow> equality_rows;

  void validate() const;
};

struct MarginOptimum {
  std::vector<Rational> point;  // on the simplex: x >= 0, sum x = 1
  Rational margin;              // max t with strict rows >= rhs + t; 0 when no strict rows
};

// Maximizes t subject to
//   strict rows:  coeffs·x - rhs >= t
//   weak rows:    coeffs·x >= rhs
//   equalities:   coeffs·x = rhs
//   x >= 0, sum x = 1
// via exact-rational two-phase simplex with Bland's rule (so it terminates).
// Returns nullopt when the weak/equality system is infeasible on the simplex.
// The margin can be negative; strict feasibility means margin > 0.
std::optional<MarginOptimum> lp_max_margin(const LinearSystem& sys);

// Multiplies by the LCM of the denominators. Entries must be non-negative;
// throws std::overflow_error if a scaled entry does not fit in long long.
std::vector<long long> scale_to_integer(const std::vector<Rational>& point);

enum class HalfspaceKind { LessEqual, Equal };

// Euclidean projection of `point` onto {x : row·x <= rhs} (identity when
// already satisfied) or onto the hyperplane {x : row·x = rhs}.
// Throws std::invalid_argument on a zero row.
std::vector<double> halfspace_project(const std::vector<double>& point,
                                      const std::vector<double>& row, double rhs,
                                      HalfspaceKind kind);

}  // namespace scorevote
