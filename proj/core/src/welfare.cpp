#include "scorevote/welfare.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "scorevote/errors.hpp"
#include "scorevote/subsets.hpp"

namespace scorevote {

namespace {

// Lexicographic order on subsets viewed as ascending index sequences:
// {} < {0} < {0,1} < {0,2} < {1} < ...
bool mask_lex_less(SubsetMask a, SubsetMask b) {
  if (a == b) return false;
  const SubsetMask diff = a ^ b;
  const SubsetMask low = diff & (~diff + 1);
  const SubsetMask holder = (a & low) ? a : b;
  const SubsetMask other = holder == a ? b : a;
  if (other & ~(low - 1)) return holder == a;  // other continues past the shared prefix
  return holder != a;                          // other is a proper prefix
}

long long floor_to_ll(const Rational& q) {
  const BigInt f = boost::multiprecision::numerator(q) / boost::multiprecision::denominator(q);
  if (f > std::numeric_limits<long long>::max()) return std::numeric_limits<long long>::max();
  if (f < std::numeric_limits<long long>::min()) return std::numeric_limits<long long>::min();
  return f.convert_to<long long>();
}

Rational subset_value(const std::vector<Rational>& values, SubsetMask mask) {
  Rational total(0);
  for (std::size_t o = 0; o < values.size(); ++o)
    if (mask & (SubsetMask{1} << o)) total += values[o];
  return total;
}

struct KnapsackItem {
  int object;
  Rational value;   // > 0
  Rational weight;  // > 0
};

// Exact 0/1 knapsack. Include-first depth-first search in value/weight order
// with the fractional relaxation as bound; strict improvement keeps the first
// optimum found. Falls back to plain enumeration when the node budget runs
// out, so the result is exact either way.
SolverResult knapsack_branch_bound(const std::vector<Rational>& values,
                                   const std::vector<Rational>& weights,
                                   const Rational& budget) {
  const int m = static_cast<int>(values.size());
  std::vector<KnapsackItem> items;
  for (int o = 0; o < m; ++o) {
    if (values[static_cast<std::size_t>(o)] > 0 &&
        weights[static_cast<std::size_t>(o)] <= budget)
      items.push_back({o, values[static_cast<std::size_t>(o)],
                       weights[static_cast<std::size_t>(o)]});
  }
  std::sort(items.begin(), items.end(), [](const KnapsackItem& a, const KnapsackItem& b) {
    const Rational ra = a.value / a.weight;
    const Rational rb = b.value / b.weight;
    if (ra != rb) return ra > rb;
    return a.object < b.object;
  });

  Rational best_value(0);
  SubsetMask best_mask = 0;
  long long nodes = 0;
  const long long node_budget = 4'000'000;
  bool aborted = false;

  std::vector<int> chosen;
  auto fractional_bound = [&](std::size_t next, const Rational& value,
                              const Rational& remaining) {
    Rational bound = value;
    Rational room = remaining;
    for (std::size_t i = next; i < items.size(); ++i) {
      if (room <= 0) break;
      if (items[i].weight <= room) {
        bound += items[i].value;
        room -= items[i].weight;
      } else {
        bound += items[i].value * room / items[i].weight;
        break;
      }
    }
    return bound;
  };

  auto dfs = [&](auto&& self, std::size_t next, Rational value, Rational remaining) -> void {
    if (aborted) return;
    if (++nodes > node_budget) {
      aborted = true;
      return;
    }
    if (value > best_value) {
      best_value = value;
      SubsetMask mask = 0;
      for (int idx : chosen) mask |= SubsetMask{1} << items[static_cast<std::size_t>(idx)].object;
      best_mask = mask;
    }
    if (next >= items.size()) return;
    if (fractional_bound(next, value, remaining) <= best_value) return;
    if (items[next].weight <= remaining) {
      chosen.push_back(static_cast<int>(next));
      self(self, next + 1, value + items[next].value, remaining - items[next].weight);
      chosen.pop_back();
    }
    self(self, next + 1, value, remaining);
  };
  dfs(dfs, 0, Rational(0), budget);

  if (aborted) {
    best_value = 0;
    best_mask = 0;
    const SubsetMask end = SubsetMask{1} << items.size();
    for (SubsetMask pick = 0; pick < end; ++pick) {
      Rational w(0), v(0);
      bool ok = true;
      for (std::size_t i = 0; i < items.size(); ++i) {
        if (!(pick & (SubsetMask{1} << i))) continue;
        w += items[i].weight;
        if (w > budget) {
          ok = false;
          break;
        }
        v += items[i].value;
      }
      if (ok && v > best_value) {
        best_value = v;
        SubsetMask mask = 0;
        for (std::size_t i = 0; i < items.size(); ++i)
          if (pick & (SubsetMask{1} << i)) mask |= SubsetMask{1} << items[i].object;
        best_mask = mask;
      }
    }
  }

  SolverResult result;
  result.winning_set = subset_from_mask(best_mask, m);
  result.objective_value = best_value;
  result.secondary_value = best_value;
  return result;
}

#ifndef NDEBUG
// Recomputes the DP table row from scratch over the first `prefix` objects.
void assert_dp_invariant(const std::vector<long long>& dynamic_weight,
                         const std::vector<long long>& values,
                         const std::vector<long long>& weights, long long capacity,
                         long long sentinel, int prefix) {
  const int m = static_cast<int>(values.size());
  if (m > 12) return;
  std::vector<long long> expect(dynamic_weight.size(), sentinel);
  expect[0] = 0;
  const SubsetMask end = SubsetMask{1} << prefix;
  for (SubsetMask mask = 0; mask < end; ++mask) {
    long long v = 0, w = 0;
    for (int o = 0; o < prefix; ++o) {
      if (mask & (SubsetMask{1} << o)) {
        v += values[static_cast<std::size_t>(o)];
        w += weights[static_cast<std::size_t>(o)];
      }
    }
    if (w <= capacity && v < static_cast<long long>(expect.size()))
      expect[static_cast<std::size_t>(v)] = std::min(expect[static_cast<std::size_t>(v)], w);
  }
  for (std::size_t v = 0; v < expect.size(); ++v)
    assert(dynamic_weight[v] == expect[v] && "dynamic program weight table out of sync");
}
#endif

}  // namespace

std::vector<Rational> aggregated_values(const ElectionInstance& instance) {
  const int m = instance.num_objects();
  std::vector<Rational> totals(static_cast<std::size_t>(m), Rational(0));
  for (const Ballot& b : instance.profile.ballots)
    for (int o = 0; o < m; ++o) totals[static_cast<std::size_t>(o)] += b.value_of(o);
  return totals;
}

SolverResult solve_utilitarian_unitary(const ElectionInstance& instance) {
  instance.validate();
  if (!instance.weights.is_unitary())
    throw std::invalid_argument("solve_utilitarian_unitary requires unitary weights");
  const int m = instance.num_objects();
  const long long take_budget = std::max<long long>(0, floor_to_ll(instance.budget));
  const int take = static_cast<int>(std::min<long long>(take_budget, m));

  const std::vector<Rational> totals = aggregated_values(instance);
  std::vector<int> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const Rational& va = totals[static_cast<std::size_t>(a)];
    const Rational& vb = totals[static_cast<std::size_t>(b)];
    if (va != vb) return va > vb;
    return a < b;
  });

  SolverResult result;
  result.objective_value = 0;
  for (int i = 0; i < take; ++i) {
    const int o = order[static_cast<std::size_t>(i)];
    if (totals[static_cast<std::size_t>(o)] < 0) break;  // sorted, so the rest is negative too
    result.winning_set.push_back(o);
    result.objective_value += totals[static_cast<std::size_t>(o)];
  }
  std::sort(result.winning_set.begin(), result.winning_set.end());
  result.secondary_value = result.objective_value;
  return result;
}

SolverResult solve_utilitarian_dp(const ElectionInstance& instance) {
  instance.validate();
  const int m = instance.num_objects();
  if (m > 62) throw ResourceLimitError("dynamic program limited to 62 objects");

  std::vector<long long> weights(static_cast<std::size_t>(m));
  for (int o = 0; o < m; ++o) {
    const Rational& w = instance.weights.weights[static_cast<std::size_t>(o)];
    if (!is_integer(w))
      throw std::invalid_argument("solve_utilitarian_dp requires integer weights");
    weights[static_cast<std::size_t>(o)] =
        boost::multiprecision::numerator(w).convert_to<long long>();
  }

  const std::vector<Rational> totals = aggregated_values(instance);
  std::vector<long long> values(static_cast<std::size_t>(m));
  long long mu = 0;
  for (int o = 0; o < m; ++o) {
    const Rational& v = totals[static_cast<std::size_t>(o)];
    if (!is_integer(v) || v < 0)
      throw std::invalid_argument(
          "solve_utilitarian_dp indexes by value and needs non-negative integer "
          "aggregated ballot values");
    values[static_cast<std::size_t>(o)] =
        boost::multiprecision::numerator(v).convert_to<long long>();
    mu = std::max(mu, values[static_cast<std::size_t>(o)]);
  }
  const long long table_top = mu * m;
  if (table_top > 2'000'000)
    throw ResourceLimitError("dynamic program value range too large", table_top);

  const long long weight_max =
      *std::max_element(weights.begin(), weights.end(), std::less<long long>());
  const long long sentinel = weight_max * m + 1;  // above every achievable weight
  const long long capacity = std::min(floor_to_ll(instance.budget), sentinel - 1);

  std::vector<long long> dynamic_weight(static_cast<std::size_t>(table_top + 1), sentinel);
  std::vector<SubsetMask> dynamic_outcome(static_cast<std::size_t>(table_top + 1), 0);
  dynamic_weight[0] = 0;

  for (int i = 0; i < m; ++i) {
    const long long vi = values[static_cast<std::size_t>(i)];
    const long long wi = weights[static_cast<std::size_t>(i)];
    for (long long k = table_top; k >= 1; --k) {
      const long long j = k - vi;
      if (j < 0) break;
      const long long base = dynamic_weight[static_cast<std::size_t>(j)];
      if (base == sentinel) continue;
      const long long candidate = base + wi;
      if (candidate <= capacity && candidate < dynamic_weight[static_cast<std::size_t>(k)]) {
        dynamic_weight[static_cast<std::size_t>(k)] = candidate;
        dynamic_outcome[static_cast<std::size_t>(k)] =
            dynamic_outcome[static_cast<std::size_t>(j)] | (SubsetMask{1} << i);
      }
    }
#ifndef NDEBUG
    assert_dp_invariant(dynamic_weight, values, weights, capacity, sentinel, i + 1);
#endif
  }

  long long best = 0;
  for (long long k = table_top; k >= 1; --k) {
    if (dynamic_weight[static_cast<std::size_t>(k)] != sentinel) {
      best = k;
      break;
    }
  }
  SolverResult result;
  result.winning_set = subset_from_mask(dynamic_outcome[static_cast<std::size_t>(best)], m);
  result.objective_value = best;
  result.secondary_value = best;
  return result;
}

SolverResult solve_fair_exact(const ElectionInstance& instance, int max_objects) {
  instance.validate();
  const int m = instance.num_objects();
  if (m > max_objects)
    throw ResourceLimitError("fair solver is exhaustive; object count exceeds the bound", m);
  const int n = instance.profile.num_voters();

  bool have_best = false;
  SubsetMask best_mask = 0;
  Rational best_fair(0), best_sum(0);

  const SubsetMask end = SubsetMask{1} << m;
  for (SubsetMask mask = 0; mask < end; ++mask) {
    Rational weight(0);
    bool ok = true;
    for (int o = 0; o < m && ok; ++o) {
      if (mask & (SubsetMask{1} << o)) {
        weight += instance.weights.weights[static_cast<std::size_t>(o)];
        if (weight > instance.budget) ok = false;
      }
    }
    if (!ok) continue;

    Rational fair(0), sum(0);
    for (int v = 0; v < n; ++v) {
      Rational u(0);
      const Ballot& b = instance.profile.ballots[static_cast<std::size_t>(v)];
      for (int o = 0; o < m; ++o)
        if (mask & (SubsetMask{1} << o)) u += b.value_of(o);
      sum += u;
      if (v == 0 || u < fair) fair = u;
    }
    if (n == 0) fair = 0;

    if (!have_best || fair > best_fair || (fair == best_fair && sum > best_sum) ||
        (fair == best_fair && sum == best_sum && mask_lex_less(mask, best_mask))) {
      have_best = true;
      best_mask = mask;
      best_fair = fair;
      best_sum = sum;
    }
  }

  SolverResult result;
  result.winning_set = subset_from_mask(best_mask, m);
  result.objective_value = best_fair;
  result.secondary_value = best_sum;
  return result;
}

SolverResult solve_value_knapsack_exact(const ElectionInstance& instance, int max_objects) {
  instance.validate();
  if (instance.profile.kind != BallotKind::Value)
    throw std::invalid_argument("solve_value_knapsack_exact requires value ballots");
  if (instance.num_objects() > max_objects)
    throw ResourceLimitError("value knapsack solver limited to the configured object bound",
                             instance.num_objects());
  return knapsack_branch_bound(aggregated_values(instance), instance.weights.weights,
                               instance.budget);
}

SolverResult solve_welfare(const ElectionInstance& instance, WelfareObjective objective) {
  if (objective == WelfareObjective::Fair) return solve_fair_exact(instance);
  if (instance.profile.kind == BallotKind::Value)
    return solve_value_knapsack_exact(instance);
  if (instance.weights.is_unitary()) return solve_utilitarian_unitary(instance);
  const bool integral_weights =
      std::all_of(instance.weights.weights.begin(), instance.weights.weights.end(),
                  [](const Rational& w) { return is_integer(w); });
  if (integral_weights) return solve_utilitarian_dp(instance);
  return knapsack_branch_bound(aggregated_values(instance), instance.weights.weights,
                               instance.budget);
}

}  // namespace scorevote
