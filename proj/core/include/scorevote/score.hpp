#pragma once

#include <vector>

#include "scorevote/model.hpp"
#include "scorevote/rational.hpp"

namespace scorevote {

// Square rational matrix: one vote for object j contributes entry (i, j) to
// object i's score.
class ScoreMatrix {
 public:
  ScoreMatrix() = default;
  explicit ScoreMatrix(int size)
      : m_(size), entries_(static_cast<std::size_t>(size) * static_cast<std::size_t>(size),
                           Rational(0)) {}

  static ScoreMatrix identity(int size);
  static ScoreMatrix from_rows(const std::vector<std::vector<Rational>>& rows);

  int size() const { return m_; }
  const Rational& at(int i, int j) const {
    return entries_[static_cast<std::size_t>(i) * static_cast<std::size_t>(m_) +
                    static_cast<std::size_t>(j)];
  }
  Rational& at(int i, int j) {
    return entries_[static_cast<std::size_t>(i) * static_cast<std::size_t>(m_) +
                    static_cast<std::size_t>(j)];
  }

  bool operator==(const ScoreMatrix&) const = default;

 private:
  int m_ = 0;
  std::vector<Rational> entries_;  // row-major
};

// Strict total order on objects; earlier in `order` wins ties.
class TieBreak {
 public:
  TieBreak() = default;
  explicit TieBreak(std::vector<int> order);
  static TieBreak natural(int num_objects);

  int num_objects() const { return static_cast<int>(order_.size()); }
  const std::vector<int>& order() const { return order_; }
  int rank_of(int object) const { return rank_[static_cast<std::size_t>(object)]; }
  bool beats(int i, int j) const { return rank_of(i) < rank_of(j); }

  bool operator==(const TieBreak& other) const { return order_ == other.order_; }

 private:
  std::vector<int> order_;
  std::vector<int> rank_;
};

struct ScoreFunction {
  ScoreMatrix matrix;
  TieBreak tiebreak;

  int num_objects() const { return matrix.size(); }
  void validate() const;

  bool operator==(const ScoreFunction&) const = default;
};

// counts[i] = number of ballots containing object i.
using TallyVector = std::vector<long long>;

// Exact multiplicity counts of an approval profile.
// Throws std::invalid_argument on other ballot kinds.
TallyVector tally(const Profile& profile);

// The matrix-vector product M·e, exact.
std::vector<Rational> scores(const ScoreFunction& sf, const TallyVector& e);

struct WinningSet {
  std::vector<int> objects;           // the selected W objects, ascending
  std::vector<Rational> all_scores;   // score of every object
  std::vector<int> selection_order;   // all m objects, best first (the tie-break trace)

  bool operator==(const WinningSet&) const = default;
};

// Top-W objects by score, ties resolved by the tie-break; deterministic and
// always exactly W objects. Throws std::invalid_argument unless 0 <= W <= m.
WinningSet winners(const ScoreFunction& sf, const TallyVector& e, int budget_w);

// Identity matrix with the natural index tie-break; the winner rule then picks
// the W most-approved objects (knapsack voting).
ScoreFunction knapsack_matrix(int num_objects);

}  // namespace scorevote
