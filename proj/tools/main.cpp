// Command-line front end: solve elections, evaluate score votings, certify
// score-function properties, hunt manipulation witnesses, and project matrices
// onto the strategyproof constraint set.
//
// Exit codes: 0 success / all checks pass; 1 a requested property fails or a
// manipulation witness exists; 2 usage or parse error; 3 resource limit or
// numeric failure.

#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "scorevote/errors.hpp"
#include "scorevote/oracle.hpp"
#include "scorevote/projection.hpp"
#include "scorevote/properties.hpp"
#include "scorevote/score.hpp"
#include "scorevote/serialize.hpp"
#include "scorevote/welfare.hpp"

namespace {

using namespace scorevote;

constexpr int kExitPass = 0;
constexpr int kExitPropertyFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text << (text.empty() || text.back() == '\n' ? "" : "\n");
  } else {
    write_file(out_path, text);
  }
}

std::map<std::string, std::string> parse_kv_list(const std::string& text) {
  std::map<std::string, std::string> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    const std::string item = text.substr(pos, comma - pos);
    const std::size_t eq = item.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("expected key=value in '" + item + "'");
    out[item.substr(0, eq)] = item.substr(eq + 1);
    pos = comma + 1;
  }
  return out;
}

int budget_as_w(const Rational& budget, int m) {
  if (!is_integer(budget) || budget < 0 || budget > m)
    throw std::invalid_argument("this command needs an integer budget W in [0, m]");
  return boost::multiprecision::numerator(budget).convert_to<int>();
}

struct MatrixInputs {
  ScoreMatrix matrix;
  TieBreak tiebreak;
  std::vector<std::string> names;
};

MatrixInputs load_matrix_inputs(const std::string& matrix_path,
                                const std::string& tiebreak_path,
                                const std::vector<std::string>& names_hint) {
  MatrixInputs in;
  in.matrix = matrix_from_csv(read_file(matrix_path));
  in.names = names_hint.empty() ? ElectionInstance::default_names(in.matrix.size())
                                : names_hint;
  if (static_cast<int>(in.names.size()) != in.matrix.size())
    throw std::invalid_argument("object name count does not match the matrix size");
  in.tiebreak = tiebreak_path.empty()
                    ? TieBreak::natural(in.matrix.size())
                    : tiebreak_from_json(read_file(tiebreak_path), in.names);
  return in;
}

int run_solve(const std::string& election_path, const std::string& objective,
              const std::string& out_path, bool pretty) {
  const ElectionInstance instance = election_from_json(read_file(election_path));
  WelfareObjective obj;
  if (objective == "utilitarian") {
    obj = WelfareObjective::Utilitarian;
  } else if (objective == "fair") {
    obj = WelfareObjective::Fair;
  } else {
    throw std::invalid_argument("objective must be 'utilitarian' or 'fair'");
  }
  const SolverResult result = solve_welfare(instance, obj);
  emit(solver_result_to_json(result, instance.object_names, pretty), out_path);
  return kExitPass;
}

int run_winners(const std::string& matrix_path, const std::string& tiebreak_path,
                const std::string& election_path, const std::string& out_path,
                bool pretty) {
  const ElectionInstance instance = election_from_json(read_file(election_path));
  const MatrixInputs in =
      load_matrix_inputs(matrix_path, tiebreak_path, instance.object_names);
  if (in.matrix.size() != instance.num_objects())
    throw std::invalid_argument("matrix size does not match the election");
  const ScoreFunction sf{in.matrix, in.tiebreak};
  const WinningSet ws =
      winners(sf, tally(instance.profile), budget_as_w(instance.budget, in.matrix.size()));
  emit(winning_set_to_json(ws, instance.object_names, pretty), out_path);
  return kExitPass;
}

int run_check(const MatrixInputs& in, bool want_neutral, bool want_total, bool want_delta,
              bool want_delta_plus, bool want_ccp, bool distinct_only, long long max_tally,
              int ccp_voters, int total_bound, int jobs, const std::string& out_path,
              bool pretty) {
  if (!want_neutral && !want_total && !want_delta && !want_delta_plus && !want_ccp)
    want_neutral = want_total = want_delta = want_delta_plus = want_ccp = true;

  const ScoreFunction sf{in.matrix, in.tiebreak};
  Certificate cert;
  if (want_neutral) cert.neutral = is_neutral(sf);
  if (want_total) cert.total = is_total(sf, total_bound, jobs);
  if (want_delta) cert.delta = check_delta(sf);
  if (want_delta_plus)
    cert.delta_plus = check_delta_plus(
        sf, distinct_only ? DeltaPlusVariant::DistinctOnly : DeltaPlusVariant::Literal);
  if (want_ccp) {
    CcpBounds bounds{max_tally, {}};
    if (ccp_voters > 0) bounds.max_voters = ccp_voters;
    cert.ccp = check_ccp(sf, bounds, jobs);
  }

  emit(certificate_to_json(cert, in.names, pretty), out_path);
  return cert.all_pass() ? kExitPass : kExitPropertyFailure;
}

int run_oracle(const std::string& mechanism_name, const std::string& matrix_path,
               const std::string& tiebreak_path, const std::string& election_path,
               bool fixed_profile, const std::string& bounds_text,
               const std::string& fuzz_text, bool weighted_utility, int jobs,
               const std::string& out_path, bool pretty) {
  const MechanismKind kind = mechanism_kind_from_string(mechanism_name);
  std::optional<ElectionInstance> election;
  if (!election_path.empty()) election = election_from_json(read_file(election_path));

  const auto kv = parse_kv_list(bounds_text);
  auto get = [&kv](const std::string& key) -> std::optional<std::string> {
    const auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    return it->second;
  };

  Mechanism mech;
  if (kind == MechanismKind::Score) {
    if (matrix_path.empty())
      throw std::invalid_argument("score mechanisms need --matrix");
    const MatrixInputs in = load_matrix_inputs(
        matrix_path, tiebreak_path, election ? election->object_names : std::vector<std::string>{});
    if (const auto m = get("m"); m && std::stoi(*m) != in.matrix.size())
      throw std::invalid_argument("bounds m does not match the matrix size");
    mech = Mechanism::score_voting(ScoreFunction{in.matrix, in.tiebreak}, in.names);
  } else {
    WeightMap weights;
    std::vector<std::string> names;
    if (election) {
      weights = election->weights;
      names = election->object_names;
    } else {
      const auto m = get("m");
      if (!m) throw std::invalid_argument("welfare mechanisms need --election or bounds m=");
      weights = WeightMap::unitary(std::stoi(*m));
    }
    mech = Mechanism::welfare(kind, weights, names);
  }

  OracleBounds bounds;
  if (const auto n = get("n")) bounds.max_voters = std::stoi(*n);
  if (const auto w = get("W"); w && *w != "all") {
    if (kind == MechanismKind::Score) {
      bounds.budgets = {std::stoi(*w)};
    } else {
      bounds.budget = parse_rational(*w);
    }
  }
  if (const auto b = get("budget")) bounds.budget = parse_rational(*b);
  if (const auto cap = get("max")) bounds.max_explored = std::stoll(*cap);
  if (!bounds.budget && kind != MechanismKind::Score && election)
    bounds.budget = election->budget;
  bounds.use_weighted_utility = weighted_utility;
  if (fixed_profile) {
    if (!election)
      throw std::invalid_argument("--fixed-profile needs --election");
    bounds.fixed_profile = election->profile;
    if (kind == MechanismKind::Score && bounds.budgets.empty())
      bounds.budgets = {budget_as_w(election->budget, mech.num_objects())};
  }

  std::optional<ManipulationWitness> witness;
  if (!fuzz_text.empty()) {
    const std::size_t comma = fuzz_text.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("--fuzz expects seed,iterations");
    const std::uint64_t seed = std::stoull(fuzz_text.substr(0, comma));
    const long long iters = std::stoll(fuzz_text.substr(comma + 1));
    FuzzShape shape;
    shape.num_voters = bounds.max_voters;
    if (kind == MechanismKind::Score) {
      if (bounds.budgets.size() != 1)
        throw std::invalid_argument("--fuzz needs a single W in bounds");
      shape.budget = bounds.budgets.front();
    } else {
      if (!bounds.budget) throw std::invalid_argument("--fuzz needs a budget in bounds");
      shape.budget = *bounds.budget;
    }
    shape.use_weighted_utility = weighted_utility;
    witness = fuzz_manipulation(mech, seed, iters, shape);
  } else {
    witness = find_manipulation(mech, bounds, jobs);
  }

  if (witness) {
    emit(witness_to_json(*witness, pretty), out_path);
    return kExitPropertyFailure;
  }
  emit(pretty ? "{\n  \"witness\": null\n}\n" : "{\"witness\":null}", out_path);
  return kExitPass;
}

int run_project(const std::string& matrix_path, const std::string& tiebreak_path,
                double delta, double eps, double tol, bool literal,
                const std::string& out_matrix, const std::string& out_report,
                bool pretty) {
  const MatrixInputs in = load_matrix_inputs(matrix_path, tiebreak_path, {});
  ProjectionOptions options;
  options.delta = delta;
  options.eps = eps;
  options.tol = tol;
  options.variant = literal ? DeltaPlusVariant::Literal : DeltaPlusVariant::DistinctOnly;
  const ProjectionResult result = closest_strategyproof(in.matrix, in.tiebreak, options);
  if (!out_matrix.empty()) write_file(out_matrix, matrix_to_csv(result.matrix));
  emit(projection_result_to_json(result, pretty), out_report);
  const bool ok = result.status == ProjectionStatus::ExactProjection ||
                  result.status == ProjectionStatus::SphereRepaired;
  return ok ? kExitPass : kExitPropertyFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"score-voting toolkit: welfare solvers, score-function winner rule, "
               "property certificates, manipulation oracle, matrix projection"};
  app.require_subcommand(1);

  std::string election_path, matrix_path, tiebreak_path, out_path, out_matrix_path;
  std::string objective = "utilitarian", mechanism = "score", bounds_text, fuzz_text;
  bool pretty = false, distinct_only = false, literal = false, weighted_utility = false;
  bool fixed_profile = false;
  bool want_neutral = false, want_total = false, want_delta = false,
       want_delta_plus = false, want_ccp = false;
  long long max_tally = 5;
  int ccp_voters = 0, total_bound = 10, jobs = 1;
  double delta = 1e-2, eps = 1e-3, tol = 1e-9;

  auto* solve = app.add_subcommand("solve", "Solve an election for a welfare objective");
  solve->add_option("--election", election_path)->required();
  solve->add_option("--objective", objective, "utilitarian or fair");
  solve->add_option("--out", out_path);
  solve->add_flag("--pretty", pretty);

  auto* winners_cmd = app.add_subcommand("winners", "Winning set of a score voting");
  winners_cmd->add_option("--matrix", matrix_path)->required();
  winners_cmd->add_option("--tiebreak", tiebreak_path);
  winners_cmd->add_option("--election", election_path)->required();
  winners_cmd->add_option("--out", out_path);
  winners_cmd->add_flag("--pretty", pretty);

  auto* check = app.add_subcommand("check", "Certify score-function properties");
  check->add_option("--matrix", matrix_path)->required();
  check->add_option("--tiebreak", tiebreak_path);
  check->add_flag("--neutral", want_neutral);
  check->add_flag("--total", want_total);
  check->add_flag("--delta", want_delta);
  check->add_flag("--delta-plus", want_delta_plus);
  check->add_flag("--ccp", want_ccp);
  check->add_flag("--distinct-only", distinct_only,
                  "Restrict the column-difference equalities to distinct quadruples");
  check->add_option("--max-tally", max_tally, "CCP enumeration bound per tally entry");
  check->add_option("--ccp-voters", ccp_voters,
                    "Restrict CCP replays to tallies realizable by this many voters");
  check->add_option("--total-bound", total_bound, "Max m for the totality sweep");
  check->add_option("--jobs", jobs);
  check->add_option("--out", out_path);
  check->add_flag("--pretty", pretty);

  auto* oracle = app.add_subcommand("oracle", "Search for a manipulation witness");
  oracle->add_option("--mechanism", mechanism, "score, fair, utilitarian, utilitarian_unitary");
  oracle->add_option("--matrix", matrix_path);
  oracle->add_option("--tiebreak", tiebreak_path);
  oracle->add_option("--election", election_path);
  oracle->add_flag("--fixed-profile", fixed_profile,
                   "Only explore deviations from the election's own profile");
  oracle->add_option("--bounds", bounds_text, "e.g. m=4,n=3,W=2 or n=2,W=all or budget=60");
  oracle->add_option("--fuzz", fuzz_text, "seed,iterations: random search instead of exhaustive");
  oracle->add_flag("--weighted-utility", weighted_utility);
  oracle->add_option("--jobs", jobs);
  oracle->add_option("--out", out_path);
  oracle->add_flag("--pretty", pretty);

  auto* project = app.add_subcommand("project", "Closest strategyproof total score function");
  project->add_option("--matrix", matrix_path)->required();
  project->add_option("--tiebreak", tiebreak_path);
  project->add_option("--delta", delta, "Repair sphere radius");
  project->add_option("--eps", eps, "Cover grid step");
  project->add_option("--tol", tol, "Projection convergence tolerance");
  project->add_flag("--literal", literal,
                    "Use the unrestricted column-difference equalities");
  project->add_option("--out-matrix", out_matrix_path);
  project->add_option("--out-report", out_path);
  project->add_flag("--pretty", pretty);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (solve->parsed()) return run_solve(election_path, objective, out_path, pretty);
    if (winners_cmd->parsed())
      return run_winners(matrix_path, tiebreak_path, election_path, out_path, pretty);
    if (check->parsed()) {
      const MatrixInputs in = load_matrix_inputs(matrix_path, tiebreak_path, {});
      return run_check(in, want_neutral, want_total, want_delta, want_delta_plus,
                       want_ccp, distinct_only, max_tally, ccp_voters, total_bound, jobs,
                       out_path, pretty);
    }
    if (oracle->parsed())
      return run_oracle(mechanism, matrix_path, tiebreak_path, election_path,
                        fixed_profile, bounds_text, fuzz_text, weighted_utility, jobs,
                        out_path, pretty);
    if (project->parsed())
      return run_project(matrix_path, tiebreak_path, delta, eps, tol, literal,
                         out_matrix_path, out_path, pretty);
  } catch (const ResourceLimitError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kExitResource;
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << " (residual " << e.residual()
              << ")\n";
    return kExitResource;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
