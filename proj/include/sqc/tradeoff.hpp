#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "sqc/measure.hpp"

namespace sqc {

/// Success rate of the weak two-qubit classification, (1/2)(1 + alpha/4).
inline double p_first(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw std::domain_error("alpha = " + std::to_string(alpha) + " outside [0, 1]");
  return 0.5 * (1.0 + alpha / 4.0);
}

/// Case 1: the second measurement compensates fully (alpha <= min{1-beta, 2beta});
/// Case 2: alpha > 2beta (only reachable with beta < 1/3), where disturbance bites.
enum class CaseRegion { Case1, Case2 };

inline CaseRegion classify_case(const WeakParams& p) {
  validate_weak_params(p);
  return p.alpha > 2.0 * p.beta ? CaseRegion::Case2 : CaseRegion::Case1;
}

/// Closed-form second-classification success rate: 5/12 throughout Case 1,
/// 5/12 - beta/12 - alpha/48 + sqrt(3 beta (alpha+beta))/24 in Case 2. The two
/// branches agree at alpha = 2 beta.
inline double p_second_closed(const WeakParams& p) {
  if (classify_case(p) == CaseRegion::Case1) return 5.0 / 12.0;
  return 5.0 / 12.0 - p.beta / 12.0 - p.alpha / 48.0 +
         std::sqrt(3.0 * p.beta * (p.alpha + p.beta)) / 24.0;
}

/// Full double sum over first outcomes and hypotheses,
/// (1/4) sum_k sum_ij Tr(pi^k_ij (sqrt(pi_k) (x) 1) rho_ij (sqrt(pi_k) (x) 1)),
/// assembled from the measure-layer primitives. Outcomes of probability zero
/// contribute nothing.
inline double p_second_general(const WeakParams& p) {
  validate_weak_params(p);
  double total = 0.0;
  for (FirstOutcome outcome : {FirstOutcome::Minus, FirstOutcome::Plus}) {
    const auto s = detail::substituted(p, outcome);
    if (detail::outcome_probability(s) <= kZeroProbability) continue;
    const DisturbedEnsemble ens = disturbed_ensemble(p, outcome);
    const Povm povm = second_povm(p, outcome);
    total += ens.outcome_probability * success_probability(povm, ens.weighted());
  }
  return total;
}

struct BetaOptimum {
  double beta_star;
  double p_second;
};

/// Best beta for a fixed alpha. For alpha <= 2/3 the whole Case-1 slice attains
/// 5/12; the canonical representative max(alpha/2, min(1-alpha, 1/3)) sits
/// inside the region and varies continuously. For alpha > 2/3 the optimum is
/// the boundary beta = 1 - alpha.
inline BetaOptimum optimize_beta(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw std::domain_error("alpha = " + std::to_string(alpha) + " outside [0, 1]");
  if (alpha <= 2.0 / 3.0) {
    const double beta = std::max(alpha / 2.0, std::min(1.0 - alpha, 1.0 / 3.0));
    return {beta, 5.0 / 12.0};
  }
  const double beta = 1.0 - alpha;
  return {beta, p_second_closed({alpha, beta})};
}

/// The measurement-disturbance tradeoff curve:
///   5/12                                            for p1 in [0, 7/12]
///   1/12 + p1/2 + sqrt(3 (5 - 8 p1))/24             for p1 in (7/12, 5/8].
/// Only [1/2, 5/8] is realizable by the (alpha, beta) family; the flat branch
/// is accepted on all of [0, 7/12].
inline double tradeoff_curve(double p1) {
  if (!(p1 >= 0.0 && p1 <= 5.0 / 8.0 + kStructuralTol))
    throw std::domain_error("p_first = " + std::to_string(p1) + " outside [0, 5/8]");
  if (p1 <= 7.0 / 12.0) return 5.0 / 12.0;
  const double radicand = std::max(3.0 * (5.0 - 8.0 * p1), 0.0);
  return 1.0 / 12.0 + p1 / 2.0 + std::sqrt(radicand) / 24.0;
}

struct TradeoffPoint {
  double p_first;
  double p_second;          // closed form along the optimal-beta locus
  double alpha;
  double beta;
  double p_second_general;  // full double sum at the same point, for cross-checks
};

/// Uniform sweep of the curve in p_first over [1/2, 5/8]; each point carries
/// the optimizing (alpha, beta*) and both evaluations of the second success
/// rate.
inline std::vector<TradeoffPoint> sweep(std::size_t grid_n) {
  if (grid_n < 2) throw std::invalid_argument("sweep needs at least 2 points");
  std::vector<TradeoffPoint> points;
  points.reserve(grid_n);
  for (std::size_t i = 0; i < grid_n; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(grid_n - 1);
    const double pf = 0.5 + 0.125 * t;
    const double alpha = std::clamp(8.0 * (pf - 0.5), 0.0, 1.0);
    const BetaOptimum opt = optimize_beta(alpha);
    const WeakParams params{alpha, opt.beta_star};
    points.push_back({pf, opt.p_second, alpha, opt.beta_star, p_second_general(params)});
  }
  return points;
}

/// One row of the path-plane geometry: a unit direction (c0, c1) in the
/// {|0>, |1>} path basis plus a weight. For states the weight is the
/// normalisation constant N of the conditional path vector; for measurement
/// directions it is the scalar w with pi = w * (direction)(direction)^dag on
/// the path space. Zero-probability/zero-weight rows are flagged omitted.
struct PathComponent {
  std::string kind;   // "state" or "measurement"
  std::string label;  // 001, 010, 011
  double c0 = 0.0;
  double c1 = 0.0;
  double weight = 0.0;
  bool omitted = false;
};

inline std::vector<PathComponent> path_components(const WeakParams& params,
                                                  FirstOutcome outcome) {
  validate_weak_params(params);
  const auto s = detail::substituted(params, outcome);
  detail::require_possible(s, params, outcome);
  const MirrorGeometry geometry = mirror_geometry(params, outcome);

  std::vector<PathComponent> rows;
  // states
  if (s.b <= kZeroProbability) {
    rows.push_back({"state", "001", 0.0, 0.0, 0.0, true});
  } else {
    rows.push_back({"state", "001", 0.0, 1.0, std::sqrt(6.0), false});
  }
  const double norm_01 = std::sqrt(6.0 * (s.ab + 3.0 * s.b) / (3.0 * s.ab + s.b));
  for (char k : {'0', '1'}) {
    const auto [c1, c0] = detail::disturbed_path_vector(s, k);
    const double len = std::hypot(c0, c1);
    rows.push_back({"state", std::string("01") + k, c0 / len, c1 / len, norm_01, false});
  }
  // measurement directions
  const double a = geometry.a;
  const double w001 = 1.0 - a * a;
  if (w001 <= kZeroProbability) {
    rows.push_back({"measurement", "001", 0.0, 1.0, 0.0, true});
  } else {
    rows.push_back({"measurement", "001", 0.0, 1.0, w001, false});
  }
  const double len = std::sqrt(1.0 + a * a);
  rows.push_back({"measurement", "010", -1.0 / len, a / len, (1.0 + a * a) / 2.0, false});
  rows.push_back({"measurement", "011", +1.0 / len, a / len, (1.0 + a * a) / 2.0, false});
  return rows;
}

}  // namespace sqc
