#include "scorevote/properties.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "scorevote/errors.hpp"
#include "scorevote/kernel.hpp"
#include "scorevote/parallel.hpp"
#include "scorevote/subsets.hpp"

namespace scorevote {

std::string to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::DeltaMain: return "delta_main";
    case ViolationKind::DeltaDiag: return "delta_diag";
    case ViolationKind::DeltaPlusEq: return "delta_plus_eq";
    case ViolationKind::NeutralEq: return "neutral_eq";
    case ViolationKind::NeutralStrict: return "neutral_strict";
  }
  throw std::logic_error("unknown violation kind");
}

NeutralityResult is_neutral(const ScoreFunction& sf, int max_objects) {
  sf.validate();
  const int m = sf.matrix.size();
  if (m > max_objects)
    throw ResourceLimitError("neutrality check is exponential in m", m);

  NeutralityResult result;
  result.neutral = true;
  for_each_subset_lex(m, [&](const std::vector<int>& subset) {
    if (subset.empty()) return true;
    // t = M · indicator(subset): column sums over the subset.
    std::vector<Rational> t(static_cast<std::size_t>(m), Rational(0));
    for (int i = 0; i < m; ++i)
      for (int j : subset) t[static_cast<std::size_t>(i)] += sf.matrix.at(i, j);

    const Rational& inside = t[static_cast<std::size_t>(subset.front())];
    for (std::size_t k = 1; k < subset.size(); ++k) {
      const Rational& other = t[static_cast<std::size_t>(subset[k])];
      if (other != inside) {
        ConstraintViolation v{ViolationKind::NeutralEq, subset, inside, other};
        v.indices.push_back(subset[k]);
        result = {false, v};
        return false;
      }
    }
    for (int j = 0; j < m; ++j) {
      if (std::binary_search(subset.begin(), subset.end(), j)) continue;
      if (!(t[static_cast<std::size_t>(j)] < inside)) {
        ConstraintViolation v{ViolationKind::NeutralStrict, subset,
                              t[static_cast<std::size_t>(j)], inside};
        v.indices.push_back(j);
        result = {false, v};
        return false;
      }
    }
    return true;
  });
  return result;
}

std::optional<NeutralDecomposition> neutral_decomposition(const ScoreMatrix& matrix) {
  const int m = matrix.size();
  if (m < 1) return std::nullopt;
  if (m == 1) {
    // No off-diagonal entries constrain lambda, so any split with a positive
    // diagonal part works; pick c = 1.
    NeutralDecomposition d;
    d.diagonal = 1;
    d.lambda = {matrix.at(0, 0) - 1};
    return d;
  }
  NeutralDecomposition d;
  d.lambda.assign(static_cast<std::size_t>(m), Rational(0));
  bool have_c = false;
  for (int j = 0; j < m; ++j) {
    bool have_lambda = false;
    Rational lambda(0);
    for (int i = 0; i < m; ++i) {
      if (i == j) continue;
      if (!have_lambda) {
        lambda = matrix.at(i, j);
        have_lambda = true;
      } else if (matrix.at(i, j) != lambda) {
        return std::nullopt;  // column not constant off the diagonal
      }
    }
    if (!have_lambda) lambda = 0;  // m == 1
    const Rational c = matrix.at(j, j) - lambda;
    if (!have_c) {
      d.diagonal = c;
      have_c = true;
    } else if (c != d.diagonal) {
      return std::nullopt;  // diagonal surplus differs between columns
    }
    d.lambda[static_cast<std::size_t>(j)] = lambda;
  }
  if (d.diagonal <= 0) return std::nullopt;
  return d;
}

namespace {

TotalityTarget decide_totality_target(const ScoreFunction& sf, int budget_w,
                                      const std::vector<int>& subset) {
  const int m = sf.matrix.size();
  TotalityTarget target;
  target.budget_w = budget_w;
  target.subset = subset;

  LinearSystem sys;
  sys.dim = m;
  std::vector<bool> in_subset(static_cast<std::size_t>(m), false);
  for (int o : subset) in_subset[static_cast<std::size_t>(o)] = true;
  for (int i : subset) {
    for (int j = 0; j < m; ++j) {
      if (in_subset[static_cast<std::size_t>(j)]) continue;
      LinRow row;
      row.rhs = 0;
      row.coeffs.resize(static_cast<std::size_t>(m));
      for (int c = 0; c < m; ++c)
        row.coeffs[static_cast<std::size_t>(c)] = sf.matrix.at(i, c) - sf.matrix.at(j, c);
      // When j wins the tie against i, i must out-score j strictly.
      if (sf.tiebreak.beats(j, i)) {
        sys.strict_rows.push_back(std::move(row));
      } else {
        sys.weak_rows.push_back(std::move(row));
      }
    }
  }

  const auto opt = lp_max_margin(sys);
  if (!opt) return target;
  if (!sys.strict_rows.empty() && opt->margin <= 0) return target;
  target.witness = scale_to_integer(opt->point);
  return target;
}

}  // namespace

TotalityReport is_total(const ScoreFunction& sf, int max_objects, int jobs) {
  sf.validate();
  const int m = sf.matrix.size();
  if (m > max_objects)
    throw ResourceLimitError("totality sweep enumerates all subsets", m);

  std::vector<std::pair<int, std::vector<int>>> targets;
  for (int w = 0; w <= m; ++w)
    for_each_subset_of_size(m, w, [&](const std::vector<int>& s) {
      targets.emplace_back(w, s);
      return true;
    });

  const auto chunks = run_chunked<std::vector<TotalityTarget>>(
      targets.size(), jobs, [&](std::size_t begin, std::size_t end) {
        std::vector<TotalityTarget> out;
        out.reserve(end - begin);
        for (std::size_t i = begin; i < end; ++i)
          out.push_back(decide_totality_target(sf, targets[i].first, targets[i].second));
        return out;
      });

  TotalityReport report;
  report.total = true;
  for (const auto& chunk : chunks) {
    for (const TotalityTarget& t : chunk) {
      if (!t.witness) report.total = false;
      report.targets.push_back(t);
    }
  }
  return report;
}

std::vector<ConstraintViolation> check_delta(const ScoreFunction& sf) {
  sf.validate();
  const int m = sf.matrix.size();
  std::vector<ConstraintViolation> out;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) {
        const Rational lhs = sf.matrix.at(i, i) - sf.matrix.at(i, j);
        const Rational rhs = sf.matrix.at(k, i) - sf.matrix.at(k, j);
        if (lhs < rhs)
          out.push_back({ViolationKind::DeltaMain, {i, j, k}, lhs, rhs});
      }
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      if (i == j) continue;
      const Rational& lhs = sf.matrix.at(i, j);
      const Rational& rhs = sf.matrix.at(j, j);
      const bool bad = sf.tiebreak.beats(i, j) ? !(lhs < rhs) : !(lhs <= rhs);
      if (bad) out.push_back({ViolationKind::DeltaDiag, {i, j}, lhs, rhs});
    }
  return out;
}

std::vector<ConstraintViolation> check_delta_plus(const ScoreFunction& sf,
                                                  DeltaPlusVariant variant) {
  std::vector<ConstraintViolation> out = check_delta(sf);
  const int m = sf.matrix.size();
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c)
        for (int d = 0; d < m; ++d) {
          if (variant == DeltaPlusVariant::DistinctOnly) {
            if (a == b || a == c || a == d || b == c || b == d || c == d) continue;
          }
          const Rational lhs = sf.matrix.at(c, a) - sf.matrix.at(c, b);
          const Rational rhs = sf.matrix.at(d, a) - sf.matrix.at(d, b);
          if (lhs != rhs)
            out.push_back({ViolationKind::DeltaPlusEq, {a, b, c, d}, lhs, rhs});
        }
  return out;
}

namespace {

bool ccp_transition_allowed(const std::vector<int>& before, const std::vector<int>& after,
                            int alpha, int beta) {
  const SubsetMask b = mask_from_subset(before);
  const SubsetMask a = mask_from_subset(after);
  if (a == b) return true;
  const SubsetMask left = b & ~a;
  const SubsetMask entered = a & ~b;
  if (std::popcount(left) != 1 || std::popcount(entered) != 1) return false;
  return left == (SubsetMask{1} << alpha) || entered == (SubsetMask{1} << beta);
}

}  // namespace

CcpReport check_ccp(const ScoreFunction& sf, const CcpBounds& bounds, int jobs) {
  sf.validate();
  const int m = sf.matrix.size();
  if (bounds.max_tally < 0) throw std::invalid_argument("max_tally must be non-negative");
  std::vector<int> budgets = bounds.budgets;
  if (budgets.empty())
    for (int w = 0; w <= m; ++w) budgets.push_back(w);
  for (int w : budgets)
    if (w < 0 || w > m) throw std::invalid_argument("CCP budget outside [0, m]");

  const long long radix = bounds.max_tally + 1;
  double space = 1.0;
  for (int o = 0; o < m; ++o) space *= static_cast<double>(radix);
  if (space > 5e7)
    throw ResourceLimitError("CCP tally space too large; lower max_tally",
                             static_cast<long long>(space));
  const std::size_t num_tallies = static_cast<std::size_t>(space);

  using Hit = std::optional<CcpCounterexample>;
  const auto chunks = run_chunked<Hit>(num_tallies, jobs, [&](std::size_t begin,
                                                              std::size_t end) -> Hit {
    TallyVector e(static_cast<std::size_t>(m));
    for (std::size_t index = begin; index < end; ++index) {
      // Mixed-radix decode; the most significant digit is object 0 so the
      // scan order is lexicographic in the tally vector.
      std::size_t rem = index;
      for (int o = m - 1; o >= 0; --o) {
        e[static_cast<std::size_t>(o)] = static_cast<long long>(rem % radix);
        rem /= static_cast<std::size_t>(radix);
      }
      long long sum = 0, top = 0;
      for (long long c : e) {
        sum += c;
        top = std::max(top, c);
      }
      for (int w : budgets) {
        long long voters = -1;
        if (bounds.max_voters) {
          if (w == 0) continue;  // W-subset ballots are empty, no swap exists
          if (sum % w != 0) continue;
          voters = sum / w;
          if (voters < 1 || voters > *bounds.max_voters || top > voters) continue;
        }
        const WinningSet before = winners(sf, e, w);
        for (int alpha = 0; alpha < m; ++alpha) {
          if (e[static_cast<std::size_t>(alpha)] < 1) continue;
          for (int beta = 0; beta < m; ++beta) {
            if (beta == alpha) continue;
            if (voters >= 0 && e[static_cast<std::size_t>(beta)] > voters - 1) continue;
            TallyVector moved = e;
            --moved[static_cast<std::size_t>(alpha)];
            ++moved[static_cast<std::size_t>(beta)];
            const WinningSet after = winners(sf, moved, w);
            if (!ccp_transition_allowed(before.objects, after.objects, alpha, beta))
              return CcpCounterexample{e, w, alpha, beta, before.objects, after.objects};
          }
        }
      }
    }
    return std::nullopt;
  });

  CcpReport report;
  report.holds_on_bounds = true;
  for (const Hit& hit : chunks) {
    if (hit) {
      report.holds_on_bounds = false;
      report.counterexample = *hit;
      break;  // chunks come back in scan order, so this is the first one
    }
  }
  return report;
}

bool is_first_class(const std::vector<int>& subset, const ElectionInstance& instance,
                    int max_objects) {
  instance.validate();
  const int m = instance.num_objects();
  if (m > max_objects)
    throw ResourceLimitError("first-class check enumerates all feasible sets", m);
  if (!instance.feasible(subset))
    throw std::invalid_argument("first-class candidate must itself be feasible");
  const int n = instance.profile.num_voters();

  auto sorted_utilities = [&](const std::vector<int>& s) {
    std::vector<Rational> u;
    u.reserve(static_cast<std::size_t>(n));
    for (const Ballot& b : instance.profile.ballots) u.push_back(sincere_utility(b, s));
    std::sort(u.begin(), u.end());
    return u;
  };
  const std::vector<Rational> mine = sorted_utilities(subset);

  bool dominated_everywhere = true;
  for_each_subset_lex(
      m,
      [&](const std::vector<int>& other) {
        const std::vector<Rational> theirs = sorted_utilities(other);
        for (int v = 0; v < n; ++v) {
          if (mine[static_cast<std::size_t>(v)] < theirs[static_cast<std::size_t>(v)]) {
            dominated_everywhere = false;
            return false;
          }
        }
        return true;
      },
      [&](const std::vector<int>& s) { return instance.feasible(s); });
  return dominated_everywhere;
}

}  // namespace scorevote
