#pragma once

#include <vector>

#include "scorevote/model.hpp"
#include "scorevote/rational.hpp"

namespace scorevote {

enum class WelfareObjective { Utilitarian, Fair };

struct SolverResult {
  std::vector<int> winning_set;  // ascending object indices, always feasible
  Rational objective_value;
  Rational secondary_value;      // utilitarian sum (fair tie-breaking); equals
                                 // objective_value for utilitarian solvers

  bool operator==(const SolverResult&) const = default;
};

// Sum over voters of the declared ballot value of each object.
std::vector<Rational> aggregated_values(const ElectionInstance& instance);

// Greedy top-floor(W) objects by total declared value, ties by object index.
// Requires unitary weights. Objects with negative totals are never taken.
SolverResult solve_utilitarian_unitary(const ElectionInstance& instance);

// Value-indexed knapsack dynamic program: dynamic_weight[v] holds the minimum
// weight reaching aggregate score v; the answer is the highest reachable score
// with weight <= W. Requires integer weights and non-negative integer
// aggregated values (approval and ranking ballots always qualify).
SolverResult solve_utilitarian_dp(const ElectionInstance& instance);

// Exact max-min welfare by exhaustive search over feasible subsets, with ties
// broken by (fair value, utilitarian sum, lexicographically smallest set).
// Throws ResourceLimitError when m exceeds max_objects.
SolverResult solve_fair_exact(const ElectionInstance& instance, int max_objects = 20);

// Exact 0/1 knapsack on the aggregated values of a value-ballot profile:
// branch and bound with a fractional bound, falling back to plain enumeration
// if the node budget is exhausted.
SolverResult solve_value_knapsack_exact(const ElectionInstance& instance,
                                        int max_objects = 20);

// Routes to the solver matching the instance (ballot kind, weights, budget).
SolverResult solve_welfare(const ElectionInstance& instance, WelfareObjective objective);

}  // namespace scorevote
