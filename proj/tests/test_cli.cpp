#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "test_support.hpp"

using namespace svtest;
using nlohmann::json;

namespace {

struct CliRun {
  int exit_code;
  std::string output;
};

CliRun run_cli(const std::string& args) {
  const std::string out_path =
      (std::filesystem::temp_directory_path() / "scorevote_cli_out.txt").string();
  const std::string command =
      std::string(SCOREVOTE_CLI_PATH) + " " + args + " > " + out_path + " 2>&1";
  const int status = std::system(command.c_str());
  CliRun run;
  run.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out_path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  run.output = buffer.str();
  return run;
}

std::string fx(const std::string& name) { return fixture_path(name); }

}  // namespace

TEST_CASE("winners reproduces the worked example") {
  const CliRun run = run_cli("winners --matrix " + fx("sec5_example.matrix.csv") +
                             " --election " + fx("sec5_example.election.json"));
  REQUIRE(run.exit_code == 0);
  const json j = json::parse(run.output);
  CHECK(j.at("objects") == json::array({"o2", "o4"}));
  CHECK(j.at("scores").at("o3") == "0");
}

TEST_CASE("solve handles both objectives on the six-voter instance") {
  const CliRun fair = run_cli("solve --election " + fx("prop_p14.election.json") +
                              " --objective fair");
  REQUIRE(fair.exit_code == 0);
  CHECK(json::parse(fair.output).at("winning_set") == json::array({"a", "e", "g"}));

  const CliRun util = run_cli("solve --election " + fx("prop_p14.election.json") +
                              " --objective utilitarian");
  REQUIRE(util.exit_code == 0);
  CHECK(json::parse(util.output).at("objective_value") == "12");
}

TEST_CASE("check exit codes follow the requested properties") {
  const std::string matrix = fx("prop936.matrix.csv");
  CHECK(run_cli("check --matrix " + matrix + " --delta").exit_code == 0);
  CHECK(run_cli("check --matrix " + matrix + " --delta-plus").exit_code == 1);
  CHECK(run_cli("check --matrix " + matrix + " --ccp --max-tally 4").exit_code == 1);
  CHECK(run_cli("check --matrix " + fx("prop_total_diag13.matrix.csv") + " --total")
            .exit_code == 0);
  CHECK(run_cli("check --matrix " + fx("delta_not_total_3x3.matrix.csv") + " --total")
            .exit_code == 1);
  const CliRun cert = run_cli("check --matrix " + fx("delta_not_total_3x3.matrix.csv") +
                              " --delta --total");
  CHECK(cert.exit_code == 1);
  const json j = json::parse(cert.output);
  CHECK(j.at("delta").empty());
  CHECK_FALSE(j.at("total").at("total").get<bool>());
}

TEST_CASE("oracle reports the known witness and exits 1") {
  const CliRun run = run_cli("oracle --mechanism score --matrix " + fx("prop936.matrix.csv") +
                             " --bounds n=2,W=2");
  REQUIRE(run.exit_code == 1);
  const json j = json::parse(run.output);
  CHECK(j.at("voter") == 0);
  CHECK(j.at("sincere_ballot") == json::array({"o1", "o4"}));
  CHECK(j.at("deviant_ballot") == json::array({"o2", "o4"}));
  CHECK(j.at("outcome_sincere") == json::array({"o1", "o3"}));
  CHECK(j.at("outcome_deviant") == json::array({"o1", "o4"}));
  CHECK(j.at("utility_sincere") == "1");
  CHECK(j.at("utility_deviant") == "2");
}

TEST_CASE("oracle exits 0 when no witness exists within bounds") {
  ScoreMatrix identity = ScoreMatrix::identity(3);
  const std::string path =
      (std::filesystem::temp_directory_path() / "identity3.csv").string();
  write_file(path, matrix_to_csv(identity));
  const CliRun run = run_cli("oracle --mechanism score --matrix " + path + " --bounds n=2,W=all");
  CHECK(run.exit_code == 0);
  CHECK(json::parse(run.output).at("witness").is_null());
}

TEST_CASE("oracle searches deviations from a fixed profile") {
  const CliRun run = run_cli("oracle --mechanism fair --election " +
                             fx("prop_p14.election.json") + " --fixed-profile");
  REQUIRE(run.exit_code == 1);
  const json j = json::parse(run.output);
  CHECK(j.at("voter") == 4);
}

TEST_CASE("project writes the matrix and the report") {
  const auto tmp = std::filesystem::temp_directory_path();
  const std::string out_matrix = (tmp / "projected.csv").string();
  const std::string out_report = (tmp / "projected.json").string();
  const CliRun run = run_cli("project --matrix " + fx("prop936.matrix.csv") +
                             " --out-matrix " + out_matrix + " --out-report " + out_report);
  CHECK(run.exit_code == 0);
  const json report = json::parse(read_file(out_report));
  const std::string status = report.at("status").get<std::string>();
  CHECK((status == "exact_projection" || status == "sphere_repaired"));
  const ScoreMatrix projected = matrix_from_csv(read_file(out_matrix));
  CHECK(projected.size() == 4);
  CHECK(check_delta_plus({projected, TieBreak::natural(4)},
                         DeltaPlusVariant::DistinctOnly)
            .empty());
}

TEST_CASE("usage errors exit 2") {
  CHECK(run_cli("winners --matrix /nonexistent.csv --election /nonexistent.json").exit_code == 2);
  CHECK(run_cli("frobnicate").exit_code == 2);
  CHECK(run_cli("solve --election " + fx("prop_p14.election.json") +
                " --objective bogus").exit_code == 2);
}

TEST_CASE("resource limits exit 3") {
  const CliRun run = run_cli("check --matrix " + fx("prop936.matrix.csv") +
                             " --ccp --max-tally 100");
  CHECK(run.exit_code == 3);
}
