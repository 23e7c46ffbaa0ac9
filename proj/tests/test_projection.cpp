#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "qp_oracle.hpp"
#include "scorevote/errors.hpp"
#include "scorevote/projection.hpp"
#include "test_support.hpp"

using namespace svtest;

namespace {

ScoreMatrix random_matrix(std::mt19937_64& rng, int m) {
  ScoreMatrix matrix(m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) matrix.at(i, j) = rand_rational(rng, 5, 2);
  return matrix;
}

double frobenius(const ScoreMatrix& a, const ScoreMatrix& b) {
  double sum = 0.0;
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < a.size(); ++j) {
      const double d = to_double(a.at(i, j) - b.at(i, j));
      sum += d * d;
    }
  return std::sqrt(sum);
}

}  // namespace

TEST_CASE("points already in the closure project to themselves") {
  const ScoreMatrix diag = load_matrix_fixture("prop_total_diag13.matrix.csv");
  const ClosureProjection p = project_onto_closure(diag, TieBreak::natural(2));
  CHECK(p.distance < 1e-9);
  CHECK(p.matrix == diag);

  const ScoreMatrix id = ScoreMatrix::identity(4);
  const ClosureProjection q = project_onto_closure(id, TieBreak::natural(4));
  CHECK(q.distance < 1e-9);
  CHECK(q.matrix == id);
}

TEST_CASE("projection matches the active-set oracle on a hand 2x2 case") {
  ScoreMatrix m(2);
  m.at(0, 0) = 1;
  m.at(0, 1) = 2;
  m.at(1, 0) = 0;
  m.at(1, 1) = 1;
  const ClosureProjection p = project_onto_closure(m, TieBreak::natural(2));
  const double oracle = qp_projection_distance(m, DeltaPlusVariant::DistinctOnly);
  CHECK(std::fabs(p.distance - oracle) < 1e-6);
  CHECK(p.residual < 1e-7);
}

TEST_CASE("projection distance matches the oracle on random matrices") {
  std::mt19937_64 rng(127);
  for (int trial = 0; trial < 16; ++trial) {
    const int m = trial % 2 == 0 ? 2 : 3;
    const ScoreMatrix matrix = random_matrix(rng, m);
    const ClosureProjection p = project_onto_closure(matrix, TieBreak::natural(m));
    const double oracle = qp_projection_distance(matrix, DeltaPlusVariant::DistinctOnly);
    CHECK(std::fabs(p.distance - oracle) < 1e-6);
  }
}

TEST_CASE("projection is idempotent") {
  std::mt19937_64 rng(131);
  for (int trial = 0; trial < 10; ++trial) {
    const ScoreMatrix matrix = random_matrix(rng, 3);
    const TieBreak tiebreak = TieBreak::natural(3);
    const ClosureProjection once = project_onto_closure(matrix, tiebreak);
    const ClosureProjection twice = project_onto_closure(once.matrix, tiebreak);
    CHECK(twice.distance < 2e-9 + 2e-6);  // rationalization noise included
    CHECK(frobenius(once.matrix, twice.matrix) < 1e-5);
  }
}

TEST_CASE("the literal equality family collapses rows and kills strictness") {
  // Projecting onto the literal family forces all rows equal, so no strict
  // pair constraint can ever hold and the pipeline reports NoStrictPoint.
  ScoreMatrix m(2);
  m.at(0, 0) = 3;
  m.at(0, 1) = 1;
  m.at(1, 0) = 0;
  m.at(1, 1) = 2;
  ProjectionOptions options;
  options.variant = DeltaPlusVariant::Literal;
  const ClosureProjection p = project_onto_closure(m, TieBreak::natural(2), options);
  CHECK(to_double(p.matrix.at(0, 0) - p.matrix.at(1, 0)) == doctest::Approx(0.0).epsilon(1e-6));
  CHECK(to_double(p.matrix.at(0, 1) - p.matrix.at(1, 1)) == doctest::Approx(0.0).epsilon(1e-6));
  const ProjectionResult r = closest_strategyproof(m, TieBreak::natural(2), options);
  CHECK(r.status == ProjectionStatus::NoStrictPoint);
}

TEST_CASE("cover points repair a strictly interior center") {
  // diag(1,3) lies strictly inside the constraint set at m=2
  const ScoreMatrix center = load_matrix_fixture("prop_total_diag13.matrix.csv");
  ProjectionOptions options;
  options.delta = 1e-2;
  options.eps = 1e-3;
  const auto repaired = sphere_repair(center, center, TieBreak::natural(2), options);
  REQUIRE(repaired);
  CHECK(frobenius(*repaired, center) <= options.delta + 1e-6);
  CHECK(check_delta_plus({*repaired, TieBreak::natural(2)}, options.variant).empty());
}

TEST_CASE("repair succeeds from a boundary center with interior nearby") {
  // M[0][1] == M[1][1] sits on the strict pair boundary
  ScoreMatrix center(2);
  center.at(0, 0) = 2;
  center.at(0, 1) = 1;
  center.at(1, 0) = 0;
  center.at(1, 1) = 1;
  const TieBreak tiebreak = TieBreak::natural(2);
  CHECK_FALSE(check_delta_plus({center, tiebreak}, DeltaPlusVariant::DistinctOnly).empty());
  const auto repaired = sphere_repair(center, center, tiebreak, {});
  REQUIRE(repaired);
  CHECK(check_delta_plus({*repaired, tiebreak}, DeltaPlusVariant::DistinctOnly).empty());
}

TEST_CASE("repair returns nothing when no strict point exists") {
  // under the literal family the strict region is empty for m >= 2
  ScoreMatrix center(2);
  center.at(0, 0) = 1;
  center.at(0, 1) = 0;
  center.at(1, 0) = 0;
  center.at(1, 1) = 1;
  ProjectionOptions options;
  options.variant = DeltaPlusVariant::Literal;
  CHECK_FALSE(sphere_repair(center, center, TieBreak::natural(2), options));
}

TEST_CASE("cover caps produce a resource error") {
  ProjectionOptions options;
  options.eps = 1e-5;  // 2001^3 points
  CHECK_THROWS_AS(
      sphere_repair(ScoreMatrix::identity(2), ScoreMatrix::identity(2),
                    TieBreak::natural(2), options),
      ResourceLimitError);
}

TEST_CASE("strictly feasible inputs come back exact with distance zero") {
  const ProjectionResult r =
      closest_strategyproof(ScoreMatrix::identity(4), TieBreak::natural(4), {});
  CHECK(r.status == ProjectionStatus::ExactProjection);
  CHECK(r.distance < 1e-9);
  CHECK(r.totality_checked);
  CHECK(r.matrix == ScoreMatrix::identity(4));
}

TEST_CASE("a strict but non-total matrix is downgraded to NotTotal") {
  const ScoreMatrix m = load_matrix_fixture("delta_not_total_3x3.matrix.csv");
  const ProjectionResult r = closest_strategyproof(m, TieBreak::natural(3), {});
  CHECK(r.status == ProjectionStatus::NotTotal);
  CHECK(r.distance < 1e-9);  // the matrix itself satisfies every constraint
}

TEST_CASE("the four-object matrix projects to a usable score function") {
  const ScoreMatrix m = load_matrix_fixture("prop936.matrix.csv");
  const TieBreak tiebreak = TieBreak::natural(4);
  const ProjectionResult r = closest_strategyproof(m, tiebreak, {});
  const bool fixed = r.status == ProjectionStatus::ExactProjection ||
                     r.status == ProjectionStatus::SphereRepaired;
  CHECK(fixed);
  CHECK(check_delta_plus({r.matrix, tiebreak}, DeltaPlusVariant::DistinctOnly).empty());
  // and the repaired mechanism hides no witness within the paper's bounds
  const Mechanism mech = Mechanism::score_voting(ScoreFunction{r.matrix, tiebreak});
  OracleBounds bounds;
  bounds.max_voters = 2;
  bounds.budgets = {2};
  CHECK_FALSE(find_manipulation(mech, bounds));
}

TEST_CASE("pipeline outputs always pass the exact constraint check") {
  std::mt19937_64 rng(137);
  for (int trial = 0; trial < 12; ++trial) {
    const int m = trial % 2 == 0 ? 2 : 3;
    const ScoreMatrix matrix = random_matrix(rng, m);
    const TieBreak tiebreak = TieBreak::natural(m);
    ProjectionOptions options;
    if (m == 3) options.eps = 5e-3;  // keep the 8-dimensional cover enumerable
    const ProjectionResult r = closest_strategyproof(matrix, tiebreak, options);
    if (r.status == ProjectionStatus::ExactProjection ||
        r.status == ProjectionStatus::SphereRepaired) {
      CHECK(check_delta_plus({r.matrix, tiebreak}, options.variant).empty());
    }
  }
}

TEST_CASE("unit cover points stay near their query") {
  std::mt19937_64 rng(139);
  for (double eps : {1e-2, 1e-3}) {
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<double> x(4);
      double norm = 0.0;
      for (double& v : x) {
        v = static_cast<double>(rand_int(rng, -10000, 10000)) / 10000.0;
        norm += v * v;
      }
      if (norm < 1e-6) continue;
      norm = std::sqrt(norm);
      for (double& v : x) v /= norm;
      const std::vector<double> c = nearest_unit_cover_point(x, eps);
      double on_sphere = 0.0, gap = 0.0;
      for (int i = 0; i < 4; ++i) {
        on_sphere += c[static_cast<std::size_t>(i)] * c[static_cast<std::size_t>(i)];
        gap += (c[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(i)]) *
               (c[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(i)]);
      }
      CHECK(on_sphere == doctest::Approx(1.0).epsilon(1e-9));
      CHECK(std::sqrt(gap) <= 4.0 * std::sqrt(2.0 * eps));
    }
  }
}
