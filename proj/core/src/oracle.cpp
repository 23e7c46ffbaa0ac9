#include "scorevote/oracle.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "scorevote/errors.hpp"
#include "scorevote/parallel.hpp"
#include "scorevote/subsets.hpp"

namespace scorevote {

std::string to_string(MechanismKind kind) {
  switch (kind) {
    case MechanismKind::UtilitarianUnitary: return "utilitarian_unitary";
    case MechanismKind::UtilitarianWeighted: return "utilitarian";
    case MechanismKind::FairExact: return "fair";
    case MechanismKind::Score: return "score";
  }
  throw std::logic_error("unknown mechanism kind");
}

MechanismKind mechanism_kind_from_string(const std::string& text) {
  if (text == "utilitarian_unitary") return MechanismKind::UtilitarianUnitary;
  if (text == "utilitarian") return MechanismKind::UtilitarianWeighted;
  if (text == "fair") return MechanismKind::FairExact;
  if (text == "score") return MechanismKind::Score;
  throw std::invalid_argument("unknown mechanism kind: '" + text + "'");
}

Mechanism Mechanism::score_voting(ScoreFunction sf, std::vector<std::string> names) {
  Mechanism mech;
  mech.kind = MechanismKind::Score;
  mech.weights = WeightMap::unitary(sf.num_objects());
  mech.score = std::move(sf);
  mech.object_names =
      names.empty() ? ElectionInstance::default_names(mech.score->num_objects())
                    : std::move(names);
  mech.validate();
  return mech;
}

Mechanism Mechanism::welfare(MechanismKind kind, WeightMap weights,
                             std::vector<std::string> names) {
  if (kind == MechanismKind::Score)
    throw std::invalid_argument("use score_voting() for score mechanisms");
  Mechanism mech;
  mech.kind = kind;
  mech.weights = std::move(weights);
  mech.object_names =
      names.empty() ? ElectionInstance::default_names(mech.num_objects())
                    : std::move(names);
  mech.validate();
  return mech;
}

void Mechanism::validate() const {
  weights.validate();
  if (static_cast<int>(object_names.size()) != num_objects())
    throw std::invalid_argument("object name count does not match weights");
  if (kind == MechanismKind::Score) {
    if (!score) throw std::invalid_argument("score mechanism needs a score function");
    score->validate();
    if (score->num_objects() != num_objects())
      throw std::invalid_argument("score matrix size does not match weights");
  }
}

std::vector<int> Mechanism::run(const Profile& profile, const Rational& budget) const {
  ElectionInstance instance{object_names, weights, budget, profile};
  switch (kind) {
    case MechanismKind::UtilitarianUnitary:
      return solve_utilitarian_unitary(instance).winning_set;
    case MechanismKind::UtilitarianWeighted:
      return solve_welfare(instance, WelfareObjective::Utilitarian).winning_set;
    case MechanismKind::FairExact:
      return solve_fair_exact(instance).winning_set;
    case MechanismKind::Score: {
      if (!is_integer(budget) || budget < 0 || budget > num_objects())
        throw std::invalid_argument("score voting needs an integer W in [0, m]");
      const int w = boost::multiprecision::numerator(budget).convert_to<int>();
      return winners(*score, tally(profile), w).objects;
    }
  }
  throw std::logic_error("unknown mechanism kind");
}

namespace {

int score_budget_w(const Rational& budget, int m) {
  if (!is_integer(budget) || budget < 0 || budget > m)
    throw std::invalid_argument("score voting needs an integer W in [0, m]");
  return boost::multiprecision::numerator(budget).convert_to<int>();
}

std::vector<std::vector<int>> w_subset_ballots(int m, int w) {
  std::vector<std::vector<int>> out;
  for_each_subset_of_size(m, w, [&](const std::vector<int>& s) {
    out.push_back(s);
    return true;
  });
  return out;
}

std::vector<std::vector<int>> feasible_ballots(const WeightMap& weights,
                                               const Rational& budget) {
  const int m = static_cast<int>(weights.weights.size());
  std::vector<std::vector<int>> out;
  for_each_subset_lex(
      m,
      [&](const std::vector<int>& s) {
        out.push_back(s);
        return true;
      },
      [&](const std::vector<int>& s) {
        Rational w(0);
        for (int o : s) w += weights.weights[static_cast<std::size_t>(o)];
        return w <= budget;
      });
  return out;
}

Rational measure_utility(const Ballot& sincere, const std::vector<int>& outcome,
                         const WeightMap& weights, bool weighted) {
  return weighted ? weighted_utility(sincere, outcome, weights)
                  : sincere_utility(sincere, outcome);
}

struct SearchContext {
  const Mechanism& mech;
  Rational budget;
  std::vector<std::vector<int>> ballots;  // lexicographic ballot space
  bool weighted = false;
};

// Tries every deviant ballot for `voter` against the fixed sincere profile.
// Deviants equal to the sincere ballot are skipped; they cannot produce a
// strict gain.
std::optional<ManipulationWitness> scan_voter(const SearchContext& ctx,
                                              const Profile& sincere_profile, int voter) {
  const Ballot& sincere = sincere_profile.ballots[static_cast<std::size_t>(voter)];
  const std::vector<int> outcome_sincere = ctx.mech.run(sincere_profile, ctx.budget);
  const Rational u_sincere =
      measure_utility(sincere, outcome_sincere, ctx.mech.weights, ctx.weighted);

  const int m = ctx.mech.num_objects();
  for (const std::vector<int>& deviant_set : ctx.ballots) {
    Ballot deviant = Ballot::approval(m, deviant_set);
    if (deviant == sincere) continue;
    Profile deviated = sincere_profile;
    deviated.ballots[static_cast<std::size_t>(voter)] = deviant;
    const std::vector<int> outcome_deviant = ctx.mech.run(deviated, ctx.budget);
    const Rational u_deviant =
        measure_utility(sincere, outcome_deviant, ctx.mech.weights, ctx.weighted);
    if (u_deviant > u_sincere) {
      ManipulationWitness w;
      w.instance = ElectionInstance{ctx.mech.object_names, ctx.mech.weights, ctx.budget,
                                    sincere_profile};
      w.voter = voter;
      w.sincere_ballot = sincere;
      w.deviant_ballot = std::move(deviant);
      w.outcome_sincere = outcome_sincere;
      w.outcome_deviant = outcome_deviant;
      w.utility_sincere = u_sincere;
      w.utility_deviant = u_deviant;
      return w;
    }
  }
  return std::nullopt;
}

Profile profile_from_index(const SearchContext& ctx, int n, std::size_t index, int m) {
  // Mixed-radix decode with voter 0 as the most significant digit, so index
  // order equals lexicographic order over ballot tuples.
  const std::size_t radix = ctx.ballots.size();
  std::vector<Ballot> ballots(static_cast<std::size_t>(n));
  for (int v = n - 1; v >= 0; --v) {
    ballots[static_cast<std::size_t>(v)] = Ballot::approval(m, ctx.ballots[index % radix]);
    index /= radix;
  }
  return Profile{std::move(ballots), m, BallotKind::Approval};
}

std::optional<ManipulationWitness> search_space(const SearchContext& ctx, int n, int jobs) {
  const int m = ctx.mech.num_objects();
  std::size_t num_profiles = 1;
  for (int v = 0; v < n; ++v) num_profiles *= ctx.ballots.size();

  for (int voter = 0; voter < n; ++voter) {
    using Hit = std::optional<std::pair<std::size_t, ManipulationWitness>>;
    const auto chunks = run_chunked<Hit>(
        num_profiles, jobs, [&](std::size_t begin, std::size_t end) -> Hit {
          for (std::size_t index = begin; index < end; ++index) {
            const Profile sincere = profile_from_index(ctx, n, index, m);
            if (auto w = scan_voter(ctx, sincere, voter)) return std::make_pair(index, *w);
          }
          return std::nullopt;
        });
    for (const auto& hit : chunks)
      if (hit) return hit->second;  // chunks are in profile order
  }
  return std::nullopt;
}

}  // namespace

std::optional<ManipulationWitness> find_manipulation(const Mechanism& mech,
                                                     const OracleBounds& bounds,
                                                     int jobs) {
  mech.validate();
  const int m = mech.num_objects();

  std::vector<Rational> budget_sweep;
  if (mech.kind == MechanismKind::Score) {
    if (bounds.budgets.empty()) {
      for (int w = 0; w <= m; ++w) budget_sweep.emplace_back(w);
    } else {
      for (int w : bounds.budgets) budget_sweep.emplace_back(w);
    }
  } else {
    if (!bounds.budget)
      throw std::invalid_argument("welfare mechanisms need bounds.budget");
    budget_sweep.push_back(*bounds.budget);
  }

  if (bounds.fixed_profile) {
    const Profile& sincere = *bounds.fixed_profile;
    sincere.validate();
    for (const Rational& budget : budget_sweep) {
      SearchContext ctx{mech, budget, {}, bounds.use_weighted_utility};
      ctx.ballots = mech.kind == MechanismKind::Score
                        ? w_subset_ballots(m, score_budget_w(budget, m))
                        : feasible_ballots(mech.weights, budget);
      for (int voter = 0; voter < sincere.num_voters(); ++voter)
        if (auto w = scan_voter(ctx, sincere, voter)) return w;
    }
    return std::nullopt;
  }

  // Space estimate before searching.
  double estimate = 0.0;
  for (const Rational& budget : budget_sweep) {
    const std::size_t space =
        mech.kind == MechanismKind::Score
            ? [&] {
                const int w = score_budget_w(budget, m);
                std::size_t count = 1;
                for (int i = 0; i < w; ++i) count = count * (m - i) / (i + 1);
                return count;
              }()
            : feasible_ballots(mech.weights, budget).size();
    for (int n = 1; n <= bounds.max_voters; ++n) {
      double profiles = 1.0;
      for (int v = 0; v < n; ++v) profiles *= static_cast<double>(space);
      estimate += profiles * (1.0 + n * static_cast<double>(space));
    }
  }
  if (estimate > static_cast<double>(bounds.max_explored))
    throw ResourceLimitError("manipulation search space exceeds the configured cap",
                             static_cast<long long>(estimate));

  for (int n = 1; n <= bounds.max_voters; ++n) {
    for (const Rational& budget : budget_sweep) {
      SearchContext ctx{mech, budget, {}, bounds.use_weighted_utility};
      ctx.ballots = mech.kind == MechanismKind::Score
                        ? w_subset_ballots(m, score_budget_w(budget, m))
                        : feasible_ballots(mech.weights, budget);
      if (ctx.ballots.empty()) continue;
      if (auto w = search_space(ctx, n, jobs)) return w;
    }
  }
  return std::nullopt;
}

bool verify_witness(const Mechanism& mech, const ManipulationWitness& witness) {
  try {
    const Profile& sincere_profile = witness.instance.profile;
    if (witness.voter < 0 || witness.voter >= sincere_profile.num_voters()) return false;
    if (sincere_profile.ballots[static_cast<std::size_t>(witness.voter)] !=
        witness.sincere_ballot)
      return false;

    const std::vector<int> outcome_sincere =
        mech.run(sincere_profile, witness.instance.budget);
    Profile deviated = sincere_profile;
    deviated.ballots[static_cast<std::size_t>(witness.voter)] = witness.deviant_ballot;
    const std::vector<int> outcome_deviant = mech.run(deviated, witness.instance.budget);
    if (outcome_sincere != witness.outcome_sincere) return false;
    if (outcome_deviant != witness.outcome_deviant) return false;

    const Rational u_sincere = sincere_utility(witness.sincere_ballot, outcome_sincere);
    const Rational u_deviant = sincere_utility(witness.sincere_ballot, outcome_deviant);
    if (u_sincere != witness.utility_sincere) return false;
    if (u_deviant != witness.utility_deviant) return false;
    return u_deviant > u_sincere;
  } catch (const std::exception&) {
    return false;
  }
}

std::optional<ManipulationWitness> fuzz_manipulation(const Mechanism& mech,
                                                     std::uint64_t seed,
                                                     long long iterations,
                                                     const FuzzShape& shape) {
  mech.validate();
  if (iterations < 1) throw std::invalid_argument("iterations must be >= 1");
  const int m = mech.num_objects();

  std::vector<std::vector<int>> ballots;
  if (mech.kind == MechanismKind::Score) {
    ballots = w_subset_ballots(m, score_budget_w(shape.budget, m));
  } else {
    ballots = feasible_ballots(mech.weights, shape.budget);
  }
  if (ballots.size() < 2 || shape.num_voters < 1) return std::nullopt;

  std::mt19937_64 rng(seed);
  auto pick = [&rng](std::size_t count) { return static_cast<std::size_t>(rng() % count); };

  SearchContext ctx{mech, shape.budget, ballots, shape.use_weighted_utility};
  for (long long iter = 0; iter < iterations; ++iter) {
    std::vector<Ballot> profile_ballots;
    profile_ballots.reserve(static_cast<std::size_t>(shape.num_voters));
    for (int v = 0; v < shape.num_voters; ++v)
      profile_ballots.push_back(Ballot::approval(m, ballots[pick(ballots.size())]));
    Profile sincere{std::move(profile_ballots), m, BallotKind::Approval};

    const int voter = static_cast<int>(pick(static_cast<std::size_t>(shape.num_voters)));
    const Ballot& sincere_ballot = sincere.ballots[static_cast<std::size_t>(voter)];
    Ballot deviant = Ballot::approval(m, ballots[pick(ballots.size())]);
    if (deviant == sincere_ballot) continue;

    const std::vector<int> outcome_sincere = ctx.mech.run(sincere, ctx.budget);
    Profile deviated = sincere;
    deviated.ballots[static_cast<std::size_t>(voter)] = deviant;
    const std::vector<int> outcome_deviant = ctx.mech.run(deviated, ctx.budget);
    const Rational u_sincere =
        measure_utility(sincere_ballot, outcome_sincere, mech.weights, ctx.weighted);
    const Rational u_deviant =
        measure_utility(sincere_ballot, outcome_deviant, mech.weights, ctx.weighted);
    if (u_deviant <= u_sincere) continue;

    ManipulationWitness w;
    w.instance = ElectionInstance{mech.object_names, mech.weights, ctx.budget, sincere};
    w.voter = voter;
    w.sincere_ballot = sincere_ballot;
    w.deviant_ballot = deviant;
    w.outcome_sincere = outcome_sincere;
    w.outcome_deviant = outcome_deviant;
    w.utility_sincere = u_sincere;
    w.utility_deviant = u_deviant;
    if (verify_witness(mech, w)) return w;
  }
  return std::nullopt;
}

}  // namespace scorevote
