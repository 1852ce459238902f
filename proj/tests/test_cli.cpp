#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#ifndef SQC_CLI_PATH
#error "SQC_CLI_PATH must point at the CLI binary"
#endif

namespace {

struct CliResult {
  int exit_code;
  std::string output;
};

CliResult run_cli(const std::string& args) {
  const std::string cmd = std::string(SQC_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string output;
  std::array<char, 4096> buffer;
  while (std::size_t got = std::fread(buffer.data(), 1, buffer.size(), pipe))
    output.append(buffer.data(), got);
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), output};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    std::istringstream ls(line);
    std::string field;
    while (std::getline(ls, field, ',')) fields.push_back(field);
    rows.push_back(std::move(fields));
  }
  return rows;
}

}  // namespace

TEST_CASE("states command prints the analytic matrix", "[cli]") {
  const CliResult r = run_cli("states --label 01 --basis schur");
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.output.rfind("# schema=1", 0) == 0);
  const auto rows = parse_csv(r.output);
  REQUIRE(rows.size() == 17);  // header + 16 entries
  REQUIRE(rows[1][0] == "0");
  REQUIRE(std::stod(rows[1][2]) == 0.25);

  const CliResult json = run_cli("states --label 000 --format json");
  REQUIRE(json.exit_code == 0);
  const auto j = nlohmann::json::parse(json.output);
  REQUIRE(j["dim"] == 8);
  REQUIRE(j["entries"][0][0] == 0.25);
}

TEST_CASE("bad labels and unknown commands exit nonzero", "[cli]") {
  REQUIRE(run_cli("states --label 9").exit_code == 2);
  REQUIRE(run_cli("frobnicate").exit_code != 0);
  REQUIRE(run_cli("figure1 --alpha 0.9 --beta 0.5").exit_code == 2);  // invalid params
}

TEST_CASE("tradeoff dataset has the documented shape", "[cli]") {
  const CliResult r = run_cli("tradeoff --points 101");
  REQUIRE(r.exit_code == 0);
  const auto rows = parse_csv(r.output);
  REQUIRE(rows.size() == 102);  // header + 101 points
  REQUIRE(rows[0] == std::vector<std::string>{"p_first", "p_second", "alpha", "beta"});

  double prev_p1 = 0.0, prev_p2 = 1.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double p1 = std::stod(rows[i][0]);
    const double p2 = std::stod(rows[i][1]);
    REQUIRE(p1 > prev_p1);
    REQUIRE(p2 <= prev_p2 + 1e-12);
    prev_p1 = p1;
    prev_p2 = p2;
  }
  REQUIRE(std::stod(rows[1][0]) == 0.5);
  REQUIRE(std::stod(rows[1][1]) == Catch::Approx(5.0 / 12.0).margin(1e-12));
  REQUIRE(std::stod(rows[101][0]) == 0.625);
  REQUIRE(std::stod(rows[101][1]) == Catch::Approx(19.0 / 48.0).margin(1e-12));
}

TEST_CASE("figure1 reproduces the corner geometry", "[cli]") {
  const CliResult r = run_cli("figure1 --alpha 1 --beta 0 --outcome minus");
  REQUIRE(r.exit_code == 0);
  const auto rows = parse_csv(r.output);
  bool saw_collinear_states = true;
  bool saw_omitted_001 = false;
  for (const auto& row : rows) {
    if (row[0] == "kind") continue;
    if (row[0] == "state" && row[1] == "001") saw_omitted_001 = row[5] == "1";
    if (row[0] == "state" && (row[1] == "010" || row[1] == "011"))
      saw_collinear_states = saw_collinear_states && std::abs(std::stod(row[3])) < 1e-12;
  }
  REQUIRE(saw_collinear_states);
  REQUIRE(saw_omitted_001);

  const CliResult diag =
      run_cli("figure1 --alpha 0.6666666666666666 --beta 0.3333333333333333 --format json");
  REQUIRE(diag.exit_code == 0);
  for (const auto& row : nlohmann::json::parse(diag.output)) {
    if (row["kind"] == "measurement" && row["label"] == "010") {
      REQUIRE(std::abs(row["c0"].get<double>() + 1.0 / std::sqrt(2.0)) < 1e-12);
      REQUIRE(std::abs(row["c1"].get<double>() - 1.0 / std::sqrt(2.0)) < 1e-12);
    }
  }
}

TEST_CASE("figure2 carries both second-rate evaluations", "[cli]") {
  const CliResult r = run_cli("figure2 --points 11");
  REQUIRE(r.exit_code == 0);
  const auto rows = parse_csv(r.output);
  REQUIRE(rows[0] == std::vector<std::string>{"p_first", "p_second_closed",
                                              "p_second_general", "alpha", "beta"});
  for (std::size_t i = 1; i < rows.size(); ++i)
    REQUIRE(std::abs(std::stod(rows[i][1]) - std::stod(rows[i][2])) < 1e-12);
}

TEST_CASE("povm command emits all families", "[cli]") {
  const CliResult r = run_cli("povm --family second --alpha 0.5 --beta 0.25 --format json");
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.output);
  REQUIRE(j["elements"].size() == 4);
  REQUIRE(run_cli("povm --family optimal2").exit_code == 0);
  REQUIRE(run_cli("povm --family weak --alpha 0.9 --beta 0.5").exit_code == 2);
}

TEST_CASE("simulate emits deterministic JSON lines", "[cli]") {
  const std::string args = "simulate --alpha 1 --beta 0 --n 5000 --seed 7";
  const CliResult a = run_cli(args);
  REQUIRE(a.exit_code == 0);
  const auto j = nlohmann::json::parse(a.output);
  REQUIRE(j["n"] == 5000);
  REQUIRE(j["p2_analytic"].get<double>() == Catch::Approx(19.0 / 48.0).margin(1e-12));
  REQUIRE(std::abs(j["p1_hat"].get<double>() - 0.625) < 0.03);

  const CliResult b = run_cli(args);
  REQUIRE(a.output == b.output);
}

TEST_CASE("simulate --curve emits one JSON line per point", "[cli]") {
  const CliResult r = run_cli("simulate --curve --points 3 --n 2000 --seed 5");
  REQUIRE(r.exit_code == 0);
  std::istringstream in(r.output);
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) {
    const auto j = nlohmann::json::parse(line);
    REQUIRE(j["n"] == 2000);
    REQUIRE(j.contains("p2_analytic"));
    ++lines;
  }
  REQUIRE(lines == 3);
}

TEST_CASE("outputs are deterministic given flags", "[cli]") {
  const CliResult a = run_cli("tradeoff --points 31");
  const CliResult b = run_cli("tradeoff --points 31");
  REQUIRE(a.output == b.output);
}

TEST_CASE("verify passes clean and fails when a checkpoint is corrupted", "[cli]") {
  const CliResult ok = run_cli("verify --grid 21");
  REQUIRE(ok.exit_code == 0);
  const auto report = nlohmann::json::parse(ok.output);
  REQUIRE(report["pass"] == true);
  bool has_checkpoint = false;
  for (const auto& check : report["checks"])
    if (check["criterion"] == 1 && check["expected"].get<std::string>().rfind("5/8", 0) == 0)
      has_checkpoint = true;
  REQUIRE(has_checkpoint);

  const CliResult bad = run_cli("verify --grid 21 --inject-fault");
  REQUIRE(bad.exit_code == 1);
  REQUIRE(nlohmann::json::parse(bad.output)["pass"] == false);

  const CliResult text = run_cli("verify --grid 21 --format text");
  REQUIRE(text.exit_code == 0);
  REQUIRE(text.output.find("PASS") != std::string::npos);
  REQUIRE(text.output.find("FAIL") == std::string::npos);
}

TEST_CASE("verify --with-mc adds the statistical gates", "[cli]") {
  const CliResult r =
      run_cli("verify --grid 21 --with-mc --n 50000 --samples 50000 --seed 42");
  REQUIRE(r.exit_code == 0);
  const auto report = nlohmann::json::parse(r.output);
  bool has_mc = false;
  for (const auto& check : report["checks"])
    if (check["criterion"] == 7) has_mc = true;
  REQUIRE(has_mc);
}
