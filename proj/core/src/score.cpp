#include "scorevote/score.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace scorevote {

ScoreMatrix ScoreMatrix::identity(int size) {
  ScoreMatrix m(size);
  for (int i = 0; i < size; ++i) m.at(i, i) = 1;
  return m;
}

ScoreMatrix ScoreMatrix::from_rows(const std::vector<std::vector<Rational>>& rows) {
  const int size = static_cast<int>(rows.size());
  if (size < 1) throw std::invalid_argument("score matrix needs at least one row");
  ScoreMatrix m(size);
  for (int i = 0; i < size; ++i) {
    if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != size)
      throw std::invalid_argument("score matrix must be square");
    for (int j = 0; j < size; ++j)
      m.at(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  return m;
}

TieBreak::TieBreak(std::vector<int> order) : order_(std::move(order)) {
  const int m = static_cast<int>(order_.size());
  rank_.assign(static_cast<std::size_t>(m), -1);
  for (int pos = 0; pos < m; ++pos) {
    const int o = order_[static_cast<std::size_t>(pos)];
    if (o < 0 || o >= m || rank_[static_cast<std::size_t>(o)] >= 0)
      throw std::invalid_argument("tie-break must be a permutation of the objects");
    rank_[static_cast<std::size_t>(o)] = pos;
  }
}

TieBreak TieBreak::natural(int num_objects) {
  std::vector<int> order(static_cast<std::size_t>(num_objects));
  std::iota(order.begin(), order.end(), 0);
  return TieBreak(std::move(order));
}

void ScoreFunction::validate() const {
  if (matrix.size() < 1) throw std::invalid_argument("score function needs m >= 1");
  if (tiebreak.num_objects() != matrix.size())
    throw std::invalid_argument("tie-break size does not match the matrix");
}

TallyVector tally(const Profile& profile) {
  if (profile.kind != BallotKind::Approval)
    throw std::invalid_argument("tally requires approval ballots");
  TallyVector counts(static_cast<std::size_t>(profile.num_objects), 0);
  for (const Ballot& b : profile.ballots) {
    if (b.kind() != BallotKind::Approval)
      throw std::invalid_argument("tally requires approval ballots");
    for (int o = 0; o < profile.num_objects; ++o)
      if (b.value_of(o) == 1) ++counts[static_cast<std::size_t>(o)];
  }
  return counts;
}

std::vector<Rational> scores(const ScoreFunction& sf, const TallyVector& e) {
  const int m = sf.matrix.size();
  if (static_cast<int>(e.size()) != m)
    throw std::invalid_argument("tally dimension does not match the matrix");
  std::vector<Rational> out(static_cast<std::size_t>(m), Rational(0));
  for (int i = 0; i < m; ++i) {
    Rational s(0);
    for (int j = 0; j < m; ++j) {
      const long long ej = e[static_cast<std::size_t>(j)];
      if (ej != 0) s += sf.matrix.at(i, j) * ej;
    }
    out[static_cast<std::size_t>(i)] = s;
  }
  return out;
}

WinningSet winners(const ScoreFunction& sf, const TallyVector& e, int budget_w) {
  sf.validate();
  const int m = sf.matrix.size();
  if (budget_w < 0 || budget_w > m)
    throw std::invalid_argument("winner count W must satisfy 0 <= W <= m");

  WinningSet ws;
  ws.all_scores = scores(sf, e);
  ws.selection_order.resize(static_cast<std::size_t>(m));
  std::iota(ws.selection_order.begin(), ws.selection_order.end(), 0);
  std::sort(ws.selection_order.begin(), ws.selection_order.end(), [&](int i, int j) {
    const Rational& si = ws.all_scores[static_cast<std::size_t>(i)];
    const Rational& sj = ws.all_scores[static_cast<std::size_t>(j)];
    if (si != sj) return si > sj;
    return sf.tiebreak.beats(i, j);
  });
  ws.objects.assign(ws.selection_order.begin(), ws.selection_order.begin() + budget_w);
  std::sort(ws.objects.begin(), ws.objects.end());
  return ws;
}

ScoreFunction knapsack_matrix(int num_objects) {
  if (num_objects < 1) throw std::invalid_argument("knapsack matrix needs m >= 1");
  return ScoreFunction{ScoreMatrix::identity(num_objects), TieBreak::natural(num_objects)};
}

}  // namespace scorevote
