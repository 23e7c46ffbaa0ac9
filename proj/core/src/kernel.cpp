#include "scorevote/kernel.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "scorevote/errors.hpp"

namespace scorevote {

void LinearSystem::validate() const {
  auto check = [this](const std::vector<LinRow>& rows) {
    for (const LinRow& r : rows)
      if (static_cast<int>(r.coeffs.size()) != dim)
        throw std::invalid_argument("constraint row dimension mismatch");
  };
  if (dim < 1) throw std::invalid_argument("linear system needs at least one variable");
  check(strict_rows);
  check(weak_rows);
  check(equality_rows);
}

namespace {

// Dense rational simplex on the tableau [A | b] kept in canonical form with
// respect to `basis`. Minimization with Bland's rule: entering column is the
// lowest-index one with a negative reduced cost, the leaving row breaks ratio
// ties by the lowest basic variable index. That rule cannot cycle.
class SimplexTableau {
 public:
  SimplexTableau(std::vector<std::vector<Rational>> a, std::vector<Rational> b,
                 std::vector<int> basis)
      : a_(std::move(a)), b_(std::move(b)), basis_(std::move(basis)) {}

  int rows() const { return static_cast<int>(a_.size()); }
  int cols() const { return a_.empty() ? 0 : static_cast<int>(a_[0].size()); }

  // Minimizes cost·x over the current feasible region. `allowed(j)` gates the
  // entering columns (used to freeze artificial variables in phase 2).
  template <typename Allowed>
  void minimize(const std::vector<Rational>& cost, Allowed&& allowed) {
    std::vector<Rational> reduced(static_cast<std::size_t>(cols()));
    while (true) {
      compute_reduced_costs(cost, reduced);
      int entering = -1;
      for (int j = 0; j < cols(); ++j) {
        if (!allowed(j)) continue;
        if (is_basic(j)) continue;
        if (reduced[static_cast<std::size_t>(j)] < 0) {
          entering = j;
          break;
        }
      }
      if (entering < 0) return;  // optimal
      int leaving = -1;
      Rational best_ratio;
      for (int i = 0; i < rows(); ++i) {
        const Rational& aij = a_[static_cast<std::size_t>(i)][static_cast<std::size_t>(entering)];
        if (aij <= 0) continue;
        const Rational ratio = b_[static_cast<std::size_t>(i)] / aij;
        if (leaving < 0 || ratio < best_ratio ||
            (ratio == best_ratio && basis_[static_cast<std::size_t>(i)] <
                                        basis_[static_cast<std::size_t>(leaving)])) {
          leaving = i;
          best_ratio = ratio;
        }
      }
      if (leaving < 0)
        throw NumericError("simplex objective unbounded; normalization row missing", 0.0);
      pivot(leaving, entering);
    }
  }

  void pivot(int row, int col) {
    const Rational p = a_[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)];
    for (Rational& v : a_[static_cast<std::size_t>(row)]) v /= p;
    b_[static_cast<std::size_t>(row)] /= p;
    for (int i = 0; i < rows(); ++i) {
      if (i == row) continue;
      const Rational f = a_[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)];
      if (f == 0) continue;
      for (int j = 0; j < cols(); ++j)
        a_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -=
            f * a_[static_cast<std::size_t>(row)][static_cast<std::size_t>(j)];
      b_[static_cast<std::size_t>(i)] -= f * b_[static_cast<std::size_t>(row)];
    }
    basis_[static_cast<std::size_t>(row)] = col;
  }

  Rational objective(const std::vector<Rational>& cost) const {
    Rational z(0);
    for (int i = 0; i < rows(); ++i)
      z += cost[static_cast<std::size_t>(basis_[static_cast<std::size_t>(i)])] *
           b_[static_cast<std::size_t>(i)];
    return z;
  }

  std::vector<Rational> solution(int num_vars) const {
    std::vector<Rational> x(static_cast<std::size_t>(num_vars), Rational(0));
    for (int i = 0; i < rows(); ++i) {
      const int v = basis_[static_cast<std::size_t>(i)];
      if (v < num_vars) x[static_cast<std::size_t>(v)] = b_[static_cast<std::size_t>(i)];
    }
    return x;
  }

  const std::vector<int>& basis() const { return basis_; }
  const Rational& entry(int i, int j) const {
    return a_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }

  void drop_row(int row) {
    a_.erase(a_.begin() + row);
    b_.erase(b_.begin() + row);
    basis_.erase(basis_.begin() + row);
  }

 private:
  bool is_basic(int col) const {
    for (int v : basis_)
      if (v == col) return true;
    return false;
  }

  void compute_reduced_costs(const std::vector<Rational>& cost,
                             std::vector<Rational>& out) const {
    for (int j = 0; j < cols(); ++j) {
      Rational r = cost[static_cast<std::size_t>(j)];
      for (int i = 0; i < rows(); ++i) {
        const Rational& aij = a_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        if (aij != 0)
          r -= cost[static_cast<std::size_t>(basis_[static_cast<std::size_t>(i)])] * aij;
      }
      out[static_cast<std::size_t>(j)] = r;
    }
  }

  std::vector<std::vector<Rational>> a_;
  std::vector<Rational> b_;
  std::vector<int> basis_;
};

}  // namespace

std::optional<MarginOptimum> lp_max_margin(const LinearSystem& sys) {
  sys.validate();
  const int d = sys.dim;
  const int num_strict = static_cast<int>(sys.strict_rows.size());
  const int num_weak = static_cast<int>(sys.weak_rows.size());
  const int num_eq = static_cast<int>(sys.equality_rows.size());
  const int num_ineq = num_strict + num_weak;
  const int num_rows = 1 + num_ineq + num_eq;

  // Columns: x (d) | u, v with t = u - v | surpluses (one per inequality) |
  // artificials (one per row).
  const int col_u = d;
  const int col_v = d + 1;
  const int surplus0 = d + 2;
  const int art0 = surplus0 + num_ineq;
  const int num_cols = art0 + num_rows;

  std::vector<std::vector<Rational>> a(
      static_cast<std::size_t>(num_rows),
      std::vector<Rational>(static_cast<std::size_t>(num_cols), Rational(0)));
  std::vector<Rational> b(static_cast<std::size_t>(num_rows), Rational(0));

  int row = 0;
  // sum x = 1
  for (int j = 0; j < d; ++j) a[0][static_cast<std::size_t>(j)] = 1;
  b[0] = 1;
  ++row;
  for (int r = 0; r < num_strict; ++r, ++row) {
    const LinRow& src = sys.strict_rows[static_cast<std::size_t>(r)];
    for (int j = 0; j < d; ++j) a[static_cast<std::size_t>(row)][static_cast<std::size_t>(j)] = src.coeffs[static_cast<std::size_t>(j)];
    a[static_cast<std::size_t>(row)][static_cast<std::size_t>(col_u)] = -1;
    a[static_cast<std::size_t>(row)][static_cast<std::size_t>(col_v)] = 1;
    a[static_cast<std::size_t>(row)][static_cast<std::size_t>(surplus0 + r)] = -1;
    b[static_cast<std::size_t>(row)] = src.rhs;
  }
  for (int r = 0; r < num_weak; ++r, ++row) {
    const LinRow& src = sys.weak_rows[static_cast<std::size_t>(r)];
    for (int j = 0; j < d; ++j) a[static_cast<std::size_t>(row)][static_cast<std::size_t>(j)] = src.coeffs[static_cast<std::size_t>(j)];
    a[static_cast<std::size_t>(row)][static_cast<std::size_t>(surplus0 + num_strict + r)] = -1;
    b[static_cast<std::size_t>(row)] = src.rhs;
  }
  for (int r = 0; r < num_eq; ++r, ++row) {
    const LinRow& src = sys.equality_rows[static_cast<std::size_t>(r)];
    for (int j = 0; j < d; ++j) a[static_cast<std::size_t>(row)][static_cast<std::size_t>(j)] = src.coeffs[static_cast<std::size_t>(j)];
    b[static_cast<std::size_t>(row)] = src.rhs;
  }

  std::vector<int> basis(static_cast<std::size_t>(num_rows));
  for (int i = 0; i < num_rows; ++i) {
    if (b[static_cast<std::size_t>(i)] < 0) {
      for (Rational& v : a[static_cast<std::size_t>(i)]) v = -v;
      b[static_cast<std::size_t>(i)] = -b[static_cast<std::size_t>(i)];
    }
    a[static_cast<std::size_t>(i)][static_cast<std::size_t>(art0 + i)] = 1;
    basis[static_cast<std::size_t>(i)] = art0 + i;
  }

  SimplexTableau tableau(std::move(a), std::move(b), std::move(basis));

  // Phase 1: drive the artificials to zero.
  std::vector<Rational> phase1_cost(static_cast<std::size_t>(num_cols), Rational(0));
  for (int j = art0; j < num_cols; ++j) phase1_cost[static_cast<std::size_t>(j)] = 1;
  tableau.minimize(phase1_cost, [](int) { return true; });
  if (tableau.objective(phase1_cost) != 0) return std::nullopt;

  // Pivot leftover zero-level artificials out of the basis; rows that cannot
  // pivot are redundant and get dropped.
  for (int i = tableau.rows() - 1; i >= 0; --i) {
    if (tableau.basis()[static_cast<std::size_t>(i)] < art0) continue;
    int col = -1;
    for (int j = 0; j < art0; ++j) {
      if (tableau.entry(i, j) != 0) {
        col = j;
        break;
      }
    }
    if (col >= 0) {
      tableau.pivot(i, col);
    } else {
      tableau.drop_row(i);
    }
  }

  // Phase 2: maximize u - v, i.e. minimize v - u; artificials stay frozen.
  // Without strict rows nothing constrains u and v, so phase 1 already solved
  // the whole problem (feasibility) and the margin is 0 by convention.
  if (!sys.strict_rows.empty()) {
    std::vector<Rational> phase2_cost(static_cast<std::size_t>(num_cols), Rational(0));
    phase2_cost[static_cast<std::size_t>(col_u)] = -1;
    phase2_cost[static_cast<std::size_t>(col_v)] = 1;
    tableau.minimize(phase2_cost, [art0](int j) { return j < art0; });
  }

  const std::vector<Rational> x = tableau.solution(num_cols);
  MarginOptimum out;
  out.point.assign(x.begin(), x.begin() + d);
  out.margin = x[static_cast<std::size_t>(col_u)] - x[static_cast<std::size_t>(col_v)];
  if (sys.strict_rows.empty()) out.margin = 0;
  return out;
}

std::vector<long long> scale_to_integer(const std::vector<Rational>& point) {
  BigInt lcm_den(1);
  for (const Rational& q : point) {
    if (q < 0) throw std::invalid_argument("scale_to_integer needs non-negative entries");
    const BigInt den = boost::multiprecision::denominator(q);
    lcm_den = boost::multiprecision::lcm(lcm_den, den);
  }
  std::vector<long long> out;
  out.reserve(point.size());
  for (const Rational& q : point) {
    const BigInt scaled = boost::multiprecision::numerator(q) * (lcm_den / boost::multiprecision::denominator(q));
    if (scaled > std::numeric_limits<long long>::max())
      throw std::overflow_error("scaled tally entry does not fit in long long");
    out.push_back(scaled.convert_to<long long>());
  }
  return out;
}

std::vector<double> halfspace_project(const std::vector<double>& point,
                                      const std::vector<double>& row, double rhs,
                                      HalfspaceKind kind) {
  if (point.size() != row.size())
    throw std::invalid_argument("point/row dimension mismatch");
  double dot = 0.0, norm2 = 0.0;
  for (std::size_t i = 0; i < row.size(); ++i) {
    dot += row[i] * point[i];
    norm2 += row[i] * row[i];
  }
  if (norm2 == 0.0) throw std::invalid_argument("zero constraint row");
  if (kind == HalfspaceKind::LessEqual && dot <= rhs) return point;
  const double step = (dot - rhs) / norm2;
  std::vector<double> out(point);
  for (std::size_t i = 0; i < row.size(); ++i) out[i] -= step * row[i];
  return out;
}

}  // namespace scorevote
