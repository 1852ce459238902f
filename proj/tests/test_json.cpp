#include <catch2/catch_amalgamated.hpp>

#include "sqc/json_io.hpp"

using namespace sqc;

TEST_CASE("density operators serialize with the documented schema", "[json]") {
  const DensityOperator rho = analytic_state(HypothesisLabel("01"));
  const nlohmann::json j = density_to_json(rho, "01");
  REQUIRE(j["label"] == "01");
  REQUIRE(j["basis"] == "schur");
  REQUIRE(j["dim"] == 4);
  REQUIRE(j["entries"].size() == 16);
  REQUIRE(j["entries"][0][0] == 0.25);  // [re, im] pairs, row-major
  REQUIRE(j["entries"][0][1] == 0.0);
}

TEST_CASE("POVMs serialize element by element", "[json]") {
  const nlohmann::json j = povm_to_json(optimal_three_qubit_povm(), "optimal3");
  REQUIRE(j["dim"] == 8);
  REQUIRE(j["elements"].size() == 4);
  REQUIRE(j["elements"][0]["label"] == "000");
  REQUIRE(j["elements"][0]["entries"].size() == 64);
}

TEST_CASE("run summaries serialize the headline numbers", "[json]") {
  const RunSummary s = run_trajectories({0.5, 0.25}, 5000, 7);
  const nlohmann::json j = summary_to_json(s);
  REQUIRE(j["n"] == 5000);
  REQUIRE(j["seed"] == 7);
  REQUIRE(j["alpha"] == 0.5);
  REQUIRE(j.contains("p1_hat"));
  REQUIRE(j.contains("p2_se"));
}
