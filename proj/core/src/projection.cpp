#include "scorevote/projection.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <set>
#include <stdexcept>

#include "scorevote/errors.hpp"
#include "scorevote/kernel.hpp"

namespace scorevote {

namespace {

int flat(int i, int j, int m) { return i * m + j; }

std::vector<std::pair<int, double>> normalize_terms(std::vector<std::pair<int, int>> raw,
                                                    bool flip_sign_allowed) {
  std::sort(raw.begin(), raw.end());
  std::vector<std::pair<int, int>> merged;
  for (const auto& [idx, coeff] : raw) {
    if (!merged.empty() && merged.back().first == idx) {
      merged.back().second += coeff;
    } else {
      merged.emplace_back(idx, coeff);
    }
  }
  std::erase_if(merged, [](const auto& t) { return t.second == 0; });
  if (flip_sign_allowed && !merged.empty() && merged.front().second < 0)
    for (auto& t : merged) t.second = -t.second;
  std::vector<std::pair<int, double>> out;
  out.reserve(merged.size());
  for (const auto& [idx, coeff] : merged) out.emplace_back(idx, static_cast<double>(coeff));
  return out;
}

}  // namespace

std::vector<MatrixConstraint> closure_constraints(int num_objects,
                                                  DeltaPlusVariant variant) {
  const int m = num_objects;
  std::vector<MatrixConstraint> out;
  std::set<std::pair<bool, std::vector<std::pair<int, double>>>> seen;
  auto add = [&](std::vector<std::pair<int, int>> raw, bool equality) {
    auto terms = normalize_terms(std::move(raw), equality);
    if (terms.empty()) return;
    if (!seen.insert({equality, terms}).second) return;
    out.push_back({std::move(terms), 0.0, equality});
  };

  // Pair constraints, weak closure: M[i][j] - M[j][j] <= 0.
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      if (i == j) continue;
      add({{flat(i, j, m), 1}, {flat(j, j, m), -1}}, false);
    }
  // Triples: M[k][i] - M[k][j] - M[i][i] + M[i][j] <= 0.
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) {
        if (i == j || k == i) continue;
        add({{flat(k, i, m), 1}, {flat(k, j, m), -1}, {flat(i, i, m), -1}, {flat(i, j, m), 1}},
            false);
      }
  // Column-difference equalities.
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c)
        for (int d = 0; d < m; ++d) {
          if (a == b || c == d) continue;
          if (variant == DeltaPlusVariant::DistinctOnly &&
              (a == c || a == d || b == c || b == d))
            continue;
          add({{flat(c, a, m), 1}, {flat(c, b, m), -1}, {flat(d, a, m), -1}, {flat(d, b, m), 1}},
              true);
        }
  return out;
}

namespace {

double constraint_violation(const MatrixConstraint& c, const std::vector<double>& x) {
  double v = -c.rhs;
  for (const auto& [idx, coeff] : c.terms) v += coeff * x[static_cast<std::size_t>(idx)];
  return c.equality ? std::fabs(v) : std::max(0.0, v);
}

double max_violation(const std::vector<MatrixConstraint>& constraints,
                     const std::vector<double>& x) {
  double worst = 0.0;
  for (const MatrixConstraint& c : constraints)
    worst = std::max(worst, constraint_violation(c, x));
  return worst;
}

ScoreMatrix rationalize_matrix(const std::vector<double>& raw, int m, long long den_cap) {
  ScoreMatrix out(m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) out.at(i, j) = rationalize(raw[static_cast<std::size_t>(flat(i, j, m))], den_cap);
  return out;
}

double frobenius_distance(const ScoreMatrix& a, const std::vector<double>& b) {
  double sum = 0.0;
  const int m = a.size();
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const double d = to_double(a.at(i, j)) - b[static_cast<std::size_t>(flat(i, j, m))];
      sum += d * d;
    }
  return std::sqrt(sum);
}

double frobenius_distance(const ScoreMatrix& a, const ScoreMatrix& b) {
  double sum = 0.0;
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < a.size(); ++j) {
      const double d = to_double(a.at(i, j) - b.at(i, j));
      sum += d * d;
    }
  return std::sqrt(sum);
}

}  // namespace

ClosureProjection project_onto_closure(const ScoreMatrix& input, const TieBreak& tiebreak,
                                       const ProjectionOptions& options) {
  if (tiebreak.num_objects() != input.size())
    throw std::invalid_argument("tie-break size does not match the matrix");
  if (options.tol <= 0) throw std::invalid_argument("tol must be positive");
  const int m = input.size();
  const int dim = m * m;
  const auto constraints = closure_constraints(m, options.variant);

  std::vector<double> x(static_cast<std::size_t>(dim));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) x[static_cast<std::size_t>(flat(i, j, m))] = to_double(input.at(i, j));

  // Dykstra's scheme: each constraint keeps a correction that is added back
  // before its next projection. Plain cyclic projection would find a feasible
  // point but not the nearest one.
  std::vector<std::vector<double>> corrections(constraints.size(),
                                               std::vector<double>(static_cast<std::size_t>(dim), 0.0));
  std::vector<double> norms2(constraints.size());
  for (std::size_t c = 0; c < constraints.size(); ++c) {
    double n2 = 0.0;
    for (const auto& [idx, coeff] : constraints[c].terms) n2 += coeff * coeff;
    norms2[c] = n2;
  }

  ClosureProjection result;
  long long used = 0;
  std::vector<double> prev;
  while (true) {
    prev = x;
    for (std::size_t c = 0; c < constraints.size(); ++c) {
      if (used++ >= options.max_iterations) {
        const double residual = max_violation(constraints, x);
        throw NumericError("projection did not converge within the iteration cap",
                           residual);
      }
      const MatrixConstraint& con = constraints[c];
      std::vector<double>& p = corrections[c];
      double dot = -con.rhs;
      for (const auto& [idx, coeff] : con.terms)
        dot += coeff * (x[static_cast<std::size_t>(idx)] + p[static_cast<std::size_t>(idx)]);
      double step = 0.0;
      if (con.equality || dot > 0.0) step = dot / norms2[c];
      // y = x + p; x' = P(y); p' = y - x'. Only the constraint's support moves.
      for (const auto& [idx, coeff] : con.terms) {
        const double y = x[static_cast<std::size_t>(idx)] + p[static_cast<std::size_t>(idx)];
        const double projected = y - step * coeff;
        p[static_cast<std::size_t>(idx)] = y - projected;
        x[static_cast<std::size_t>(idx)] = projected;
      }
    }
    double moved2 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double d = x[i] - prev[i];
      moved2 += d * d;
    }
    if (std::sqrt(moved2) < options.tol) break;
  }

  result.raw = x;
  result.matrix = rationalize_matrix(x, m, options.denominator_cap);
  result.distance = frobenius_distance(input, x);
  result.residual = max_violation(constraints, x);
  result.iterations = used;
  return result;
}

namespace {

bool float_precheck(const std::vector<MatrixConstraint>& constraints,
                    const std::vector<double>& x, int m, const TieBreak& tiebreak) {
  for (const MatrixConstraint& c : constraints) {
    const double tol = c.equality ? 1e-9 : 1e-12;
    if (constraint_violation(c, x) > tol) return false;
  }
  // Strict pair margins where the tie-break demands them.
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      if (i == j || !tiebreak.beats(i, j)) continue;
      if (x[static_cast<std::size_t>(flat(i, j, m))] >=
          x[static_cast<std::size_t>(flat(j, j, m))])
        return false;
    }
  return true;
}

}  // namespace

std::optional<ScoreMatrix> sphere_repair(const ScoreMatrix& center,
                                         const ScoreMatrix& original,
                                         const TieBreak& tiebreak,
                                         const ProjectionOptions& options) {
  if (options.delta <= 0 || options.eps <= 0)
    throw std::invalid_argument("delta and eps must be positive");
  const int m = center.size();
  const int dim = m * m;
  const long long steps = static_cast<long long>(std::floor(options.delta / options.eps));
  const long long per_axis = 2 * steps + 1;
  double count = 1.0;
  for (int i = 0; i < dim - 1; ++i) count *= static_cast<double>(per_axis);
  if (count > static_cast<double>(options.cover_cap))
    throw ResourceLimitError(
        "sphere cover too dense for this dimension; increase eps",
        count > 9e18 ? std::numeric_limits<long long>::max()
                     : static_cast<long long>(count));

  std::vector<double> c(static_cast<std::size_t>(dim));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) c[static_cast<std::size_t>(flat(i, j, m))] = to_double(center.at(i, j));

  const auto constraints = closure_constraints(m, options.variant);

  struct Candidate {
    double dist2;
    std::vector<double> point;
  };
  std::vector<Candidate> candidates;

  std::vector<double> o(static_cast<std::size_t>(dim));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) o[static_cast<std::size_t>(flat(i, j, m))] = to_double(original.at(i, j));

  std::vector<long long> k(static_cast<std::size_t>(dim - 1), -steps);
  std::vector<double> point(static_cast<std::size_t>(dim));
  const double delta2 = options.delta * options.delta;
  bool done = dim == 1;
  while (!done) {
    double sum2 = 0.0;
    for (int i = 0; i < dim - 1; ++i) {
      const double v = static_cast<double>(k[static_cast<std::size_t>(i)]) * options.eps;
      sum2 += v * v;
    }
    if (sum2 <= delta2) {
      const double closing = std::sqrt(std::max(0.0, delta2 - sum2));
      for (int sign = 0; sign < 2; ++sign) {
        if (sign == 1 && closing == 0.0) break;
        for (int i = 0; i < dim - 1; ++i)
          point[static_cast<std::size_t>(i)] =
              c[static_cast<std::size_t>(i)] +
              static_cast<double>(k[static_cast<std::size_t>(i)]) * options.eps;
        point[static_cast<std::size_t>(dim - 1)] =
            c[static_cast<std::size_t>(dim - 1)] + (sign == 0 ? closing : -closing);
        if (float_precheck(constraints, point, m, tiebreak)) {
          double d2 = 0.0;
          for (int i = 0; i < dim; ++i) {
            const double d = point[static_cast<std::size_t>(i)] - o[static_cast<std::size_t>(i)];
            d2 += d * d;
          }
          candidates.push_back({d2, point});
        }
      }
    }
    // odometer
    int pos = 0;
    for (; pos < dim - 1; ++pos) {
      if (k[static_cast<std::size_t>(pos)] < steps) {
        ++k[static_cast<std::size_t>(pos)];
        break;
      }
      k[static_cast<std::size_t>(pos)] = -steps;
    }
    if (pos == dim - 1) done = true;
  }

  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate& a, const Candidate& b) { return a.dist2 < b.dist2; });
  for (const Candidate& cand : candidates) {
    ScoreMatrix rat = rationalize_matrix(cand.point, m, options.denominator_cap);
    if (check_delta_plus({rat, tiebreak}, options.variant).empty()) return rat;
  }
  return std::nullopt;
}

std::string to_string(ProjectionStatus status) {
  switch (status) {
    case ProjectionStatus::ExactProjection: return "exact_projection";
    case ProjectionStatus::SphereRepaired: return "sphere_repaired";
    case ProjectionStatus::NoStrictPoint: return "no_strict_point";
    case ProjectionStatus::NotTotal: return "not_total";
  }
  throw std::logic_error("unknown projection status");
}

ProjectionResult closest_strategyproof(const ScoreMatrix& input, const TieBreak& tiebreak,
                                       const ProjectionOptions& options) {
  ProjectionResult result;
  result.delta = options.delta;
  result.eps = options.eps;

  const ClosureProjection proj = project_onto_closure(input, tiebreak, options);
  if (check_delta_plus({proj.matrix, tiebreak}, options.variant).empty()) {
    result.matrix = proj.matrix;
    result.distance = frobenius_distance(input, proj.matrix);
    result.status = ProjectionStatus::ExactProjection;
  } else if (auto repaired = sphere_repair(proj.matrix, input, tiebreak, options)) {
    result.matrix = *repaired;
    result.distance = frobenius_distance(input, *repaired);
    result.status = ProjectionStatus::SphereRepaired;
  } else {
    result.matrix = proj.matrix;
    result.distance = proj.distance;
    result.status = ProjectionStatus::NoStrictPoint;
    return result;
  }

  if (input.size() <= options.totality_max_objects) {
    result.totality_checked = true;
    if (!is_total({result.matrix, tiebreak}, options.totality_max_objects).total)
      result.status = ProjectionStatus::NotTotal;
  }
  return result;
}

std::vector<double> nearest_unit_cover_point(const std::vector<double>& x, double eps) {
  if (eps <= 0) throw std::invalid_argument("eps must be positive");
  const int dim = static_cast<int>(x.size());
  if (dim < 2) throw std::invalid_argument("cover needs dimension >= 2");
  std::vector<long long> k(static_cast<std::size_t>(dim - 1));
  for (int i = 0; i < dim - 1; ++i)
    k[static_cast<std::size_t>(i)] = std::llround(x[static_cast<std::size_t>(i)] / eps);
  auto sum2 = [&] {
    double s = 0.0;
    for (int i = 0; i < dim - 1; ++i) {
      const double v = static_cast<double>(k[static_cast<std::size_t>(i)]) * eps;
      s += v * v;
    }
    return s;
  };
  // Pull the grid point back inside the unit ball if rounding pushed it out.
  while (sum2() > 1.0) {
    int argmax = 0;
    for (int i = 1; i < dim - 1; ++i)
      if (std::llabs(k[static_cast<std::size_t>(i)]) >
          std::llabs(k[static_cast<std::size_t>(argmax)]))
        argmax = i;
    if (k[static_cast<std::size_t>(argmax)] == 0) break;
    k[static_cast<std::size_t>(argmax)] += k[static_cast<std::size_t>(argmax)] > 0 ? -1 : 1;
  }
  std::vector<double> out(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim - 1; ++i)
    out[static_cast<std::size_t>(i)] = static_cast<double>(k[static_cast<std::size_t>(i)]) * eps;
  const double closing = std::sqrt(std::max(0.0, 1.0 - sum2()));
  out[static_cast<std::size_t>(dim - 1)] = x[static_cast<std::size_t>(dim - 1)] < 0 ? -closing : closing;
  return out;
}

}  // namespace scorevote
