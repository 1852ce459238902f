#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "sqc/tradeoff.hpp"

using namespace sqc;

namespace {

std::vector<WeakParams> small_grid(int n) {
  std::vector<WeakParams> grid;
  for (int j = 0; j < n; ++j) {
    const double beta = static_cast<double>(j) / (n - 1);
    for (int i = 0; i < n; ++i)
      grid.push_back({(1.0 - beta) * (static_cast<double>(i) / (n - 1)), beta});
  }
  return grid;
}

}  // namespace

TEST_CASE("first-classification success rate", "[tradeoff]") {
  REQUIRE(p_first(0.0) == 0.5);
  REQUIRE(p_first(1.0) == Catch::Approx(5.0 / 8.0).margin(1e-15));
  REQUIRE(p_first(2.0 / 3.0) == Catch::Approx(7.0 / 12.0).margin(1e-15));
  REQUIRE_THROWS_AS(p_first(1.5), std::domain_error);
  REQUIRE_THROWS_AS(p_first(-0.1), std::domain_error);
}

TEST_CASE("case classification", "[tradeoff]") {
  REQUIRE(classify_case({0.2, 0.3}) == CaseRegion::Case1);
  REQUIRE(classify_case({0.5, 0.1}) == CaseRegion::Case2);
  REQUIRE(classify_case({0.4, 0.2}) == CaseRegion::Case1);  // boundary belongs to Case 1
}

TEST_CASE("general second success rate at the pinned points", "[tradeoff]") {
  REQUIRE(p_second_general({1.0, 0.0}) == Catch::Approx(19.0 / 48.0).margin(1e-12));
  for (double beta : {0.0, 0.3, 0.5, 1.0})
    REQUIRE(p_second_general({0.0, beta}) == Catch::Approx(5.0 / 12.0).margin(1e-12));
  REQUIRE(p_second_general({2.0 / 3.0, 1.0 / 3.0}) ==
          Catch::Approx(5.0 / 12.0).margin(1e-12));
}

TEST_CASE("closed form matches the general sum", "[tradeoff]") {
  REQUIRE(p_second_closed({1.0, 0.0}) == Catch::Approx(19.0 / 48.0).margin(1e-15));
  REQUIRE(std::abs(p_second_closed({0.9, 0.05}) - p_second_general({0.9, 0.05})) < 1e-12);

  // both branch formulas agree at alpha = 2 beta
  const double beta = 0.2;
  const WeakParams boundary{2.0 * beta, beta};
  const double case2_formula = 5.0 / 12.0 - beta / 12.0 - boundary.alpha / 48.0 +
                               std::sqrt(3.0 * beta * (boundary.alpha + beta)) / 24.0;
  REQUIRE(p_second_closed(boundary) == Catch::Approx(5.0 / 12.0).margin(1e-15));
  REQUIRE(case2_formula == Catch::Approx(5.0 / 12.0).margin(1e-12));
}

TEST_CASE("closed/general identity and the global bound on a grid", "[tradeoff]") {
  for (const WeakParams& p : small_grid(13)) {
    const double general = p_second_general(p);
    REQUIRE(std::abs(p_second_closed(p) - general) < 1e-12);
    REQUIRE(general <= 5.0 / 12.0 + 1e-12);
    if (p.alpha <= std::min(1.0 - p.beta, 2.0 * p.beta))
      REQUIRE(general == Catch::Approx(5.0 / 12.0).margin(1e-12));
  }
}

TEST_CASE("second success rate increases with beta inside Case 2", "[tradeoff]") {
  // no stationary points inside the region; check the sign by finite differences
  const double h = 1e-4;
  for (const WeakParams& p :
       {WeakParams{0.5, 0.1}, WeakParams{5.0 / 6.0, 1.0 / 6.0 - 2.0 * h}, WeakParams{0.9, 0.02},
        WeakParams{0.7, 0.2}}) {
    REQUIRE(classify_case(p) == CaseRegion::Case2);
    REQUIRE(classify_case({p.alpha, p.beta + h}) == CaseRegion::Case2);
    REQUIRE(p_second_closed({p.alpha, p.beta + h}) > p_second_closed(p));
  }
}

TEST_CASE("optimize_beta at the pinned points", "[tradeoff]") {
  {
    const BetaOptimum opt = optimize_beta(1.0);
    REQUIRE(opt.beta_star == 0.0);
    REQUIRE(opt.p_second == Catch::Approx(19.0 / 48.0).margin(1e-15));
  }
  {
    const BetaOptimum opt = optimize_beta(2.0 / 3.0);
    REQUIRE(opt.beta_star == Catch::Approx(1.0 / 3.0).margin(1e-15));
    REQUIRE(opt.p_second == Catch::Approx(5.0 / 12.0).margin(1e-15));
  }
}

TEST_CASE("optimize_beta matches a dense 1-D grid search", "[tradeoff]") {
  const double alpha = 0.8;
  const BetaOptimum opt = optimize_beta(alpha);
  REQUIRE(opt.beta_star == Catch::Approx(0.2).margin(1e-15));

  double best = 0.0;
  constexpr int kPoints = 1000001;
  for (int i = 0; i < kPoints; ++i) {
    const double beta = (1.0 - alpha) * (static_cast<double>(i) / (kPoints - 1));
    best = std::max(best, p_second_closed({alpha, beta}));
  }
  REQUIRE(std::abs(best - opt.p_second) < 1e-6);
}

TEST_CASE("tradeoff curve values and domain", "[tradeoff]") {
  REQUIRE(tradeoff_curve(7.0 / 12.0) == Catch::Approx(5.0 / 12.0).margin(1e-15));
  REQUIRE(tradeoff_curve(5.0 / 8.0) == Catch::Approx(19.0 / 48.0).margin(1e-15));
  REQUIRE(tradeoff_curve(0.2) == Catch::Approx(5.0 / 12.0).margin(1e-15));
  REQUIRE_THROWS_AS(tradeoff_curve(0.63), std::domain_error);
  REQUIRE_THROWS_AS(tradeoff_curve(-0.01), std::domain_error);

  // explicit curve vs the parametric optimum at p_first = 0.6
  const double alpha = 8.0 * 0.6 - 4.0;
  REQUIRE(tradeoff_curve(0.6) ==
          Catch::Approx(optimize_beta(alpha).p_second).margin(1e-12));

  // continuity at the branch point, differentiable from the right with
  // non-positive slope
  const double eps = 1e-9;
  REQUIRE(std::abs(tradeoff_curve(7.0 / 12.0 + eps) - 5.0 / 12.0) < 1e-6);
  const double h = 1e-6;
  const double right_slope = (tradeoff_curve(7.0 / 12.0 + h) - tradeoff_curve(7.0 / 12.0)) / h;
  REQUIRE(right_slope <= 1e-6);
}

TEST_CASE("sweep endpoints, invariants and monotonicity", "[tradeoff]") {
  {
    const auto points = sweep(2);
    REQUIRE(points.front().p_first == 0.5);
    REQUIRE(points.front().p_second == Catch::Approx(5.0 / 12.0).margin(1e-15));
    REQUIRE(points.back().p_first == Catch::Approx(0.625).margin(1e-15));
    REQUIRE(points.back().p_second == Catch::Approx(19.0 / 48.0).margin(1e-15));
  }
  const auto points = sweep(41);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const TradeoffPoint& p = points[i];
    REQUIRE(std::abs(p.p_first - 0.5 * (1.0 + p.alpha / 4.0)) < 1e-12);
    REQUIRE(std::abs(p.p_second - p.p_second_general) < 1e-12);
    if (i > 0) {
      REQUIRE(p.p_first > points[i - 1].p_first);
      REQUIRE(p.p_second <= points[i - 1].p_second + 1e-12);
    }
  }
  REQUIRE_THROWS_AS(sweep(1), std::invalid_argument);
}

TEST_CASE("path components across the four reference panels", "[tradeoff]") {
  auto find = [](const std::vector<PathComponent>& rows, const char* kind, const char* label) {
    for (const PathComponent& r : rows)
      if (r.kind == kind && r.label == label) return r;
    throw std::logic_error("missing row");
  };

  {
    // undisturbed configuration
    const auto rows = path_components({0.0, 1.0 / 3.0}, FirstOutcome::Minus);
    const PathComponent s010 = find(rows, "state", "010");
    REQUIRE(s010.c0 == Catch::Approx(-std::sqrt(3.0) / 2.0).margin(1e-12));
    REQUIRE(s010.c1 == Catch::Approx(0.5).margin(1e-12));
    const PathComponent m010 = find(rows, "measurement", "010");
    REQUIRE(m010.c0 == Catch::Approx(-std::sqrt(3.0) / 2.0).margin(1e-12));
    REQUIRE(m010.c1 == Catch::Approx(0.5).margin(1e-12));
  }
  {
    // boundary of the compensating region: measurement diagonals at +-45 deg
    const auto rows = path_components({2.0 / 3.0, 1.0 / 3.0}, FirstOutcome::Minus);
    const double r2 = 1.0 / std::sqrt(2.0);
    const PathComponent m010 = find(rows, "measurement", "010");
    const PathComponent m011 = find(rows, "measurement", "011");
    REQUIRE(m010.c0 == Catch::Approx(-r2).margin(1e-12));
    REQUIRE(m010.c1 == Catch::Approx(r2).margin(1e-12));
    REQUIRE(m011.c0 == Catch::Approx(+r2).margin(1e-12));
  }
  {
    // optimal first measurement: surviving states collapse onto |0>
    const auto rows = path_components({1.0, 0.0}, FirstOutcome::Minus);
    REQUIRE(find(rows, "state", "001").omitted);
    const PathComponent s010 = find(rows, "state", "010");
    const PathComponent s011 = find(rows, "state", "011");
    REQUIRE(s010.c0 == Catch::Approx(-1.0).margin(1e-12));
    REQUIRE(std::abs(s010.c1) < 1e-12);
    REQUIRE(s011.c0 == Catch::Approx(+1.0).margin(1e-12));
    // mirror pair: equal |1> components, opposite |0> components
    REQUIRE(s010.c1 == Catch::Approx(s011.c1).margin(1e-12));
  }
}

TEST_CASE("path component weights are the stated normalisation constants", "[tradeoff]") {
  const WeakParams p{0.25, 0.25};
  const auto rows = path_components(p, FirstOutcome::Minus);
  for (const PathComponent& r : rows) {
    if (r.kind != "state") continue;
    if (r.label == "001") {
      REQUIRE(r.weight == Catch::Approx(std::sqrt(6.0)).margin(1e-12));
    } else {
      const double expected =
          std::sqrt(6.0 * (p.alpha + 4.0 * p.beta) / (3.0 * p.alpha + 4.0 * p.beta));
      REQUIRE(r.weight == Catch::Approx(expected).margin(1e-12));
    }
    REQUIRE(std::hypot(r.c0, r.c1) == Catch::Approx(1.0).margin(1e-12));
  }
}
