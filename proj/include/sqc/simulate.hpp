#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "sqc/measure.hpp"
#include "sqc/rng.hpp"
#include "sqc/states.hpp"
#include "sqc/tradeoff.hpp"

namespace sqc {

/// One run of the sequential protocol on a sampled pure product state.
struct Trajectory {
  HypothesisLabel hypothesis;
  std::array<PureQubit, 3> qubits;
  FirstOutcome first_outcome;
  HypothesisLabel second_outcome;
  bool first_correct;
  bool second_correct;
};

/// Tallies kept per hypothesis so the per-branch Born frequencies can be
/// checked, not just the headline rates. Outcome index 0 = plus, 1 = minus.
struct TrajectoryCounts {
  std::array<std::array<std::uint64_t, 2>, 4> first{};
  std::array<std::array<std::array<std::uint64_t, 4>, 2>, 4> second{};
};

struct RunSummary {
  std::size_t n_trajectories = 0;
  double p1_hat = 0.0;
  double p1_se = 0.0;
  double p2_hat = 0.0;
  double p2_se = 0.0;
  WeakParams params;
  std::uint64_t seed = 0;
  TrajectoryCounts counts;
};

namespace detail {

/// Everything fixed across trajectories at one (alpha, beta): the Schur
/// rotation, the diagonal sqrt(pi±) (x) 1 factors, and the outcome-conditioned
/// second POVMs. All of it is derived from the measure-layer constructions;
/// the simulator itself only ever does pure-state Born sampling.
struct ProtocolContext {
  WeakParams params;
  std::array<std::array<double, 8>, 8> schur{};  // real rotation, row-major
  std::array<double, 8> sqrt_plus{};
  std::array<double, 8> sqrt_minus{};
  std::optional<Povm> povm_plus;
  std::optional<Povm> povm_minus;

  explicit ProtocolContext(const WeakParams& p) : params(p) {
    validate_weak_params(p);
    const ComplexMatrix& u = schur_transform(3).unitary;
    for (std::size_t i = 0; i < 8; ++i)
      for (std::size_t j = 0; j < 8; ++j) schur[i][j] = u(i, j).real();

    // sqrt(pi-) (x) 1 is Schur-diagonal: sqrt(beta) on the triplet-descended
    // 6 dimensions, sqrt(alpha+beta) on the singlet-descended 2; the plus
    // factor follows by the swaps.
    const auto plus = substituted(p, FirstOutcome::Plus);
    const auto minus = substituted(p, FirstOutcome::Minus);
    for (std::size_t i = 0; i < 6; ++i) {
      sqrt_minus[i] = std::sqrt(minus.b);
      sqrt_plus[i] = std::sqrt(plus.b);
    }
    for (std::size_t i = 6; i < 8; ++i) {
      sqrt_minus[i] = std::sqrt(minus.ab);
      sqrt_plus[i] = std::sqrt(plus.ab);
    }

    for (FirstOutcome outcome : {FirstOutcome::Plus, FirstOutcome::Minus}) {
      const auto s = substituted(p, outcome);
      if (outcome_probability(s) <= kZeroProbability) continue;
      (outcome == FirstOutcome::Plus ? povm_plus : povm_minus) = second_povm(p, outcome);
    }
  }
};

inline double born_probability(const HermitianOperator& op, const std::array<Complex, 8>& psi) {
  Complex acc{};
  for (std::size_t i = 0; i < 8; ++i) {
    Complex row{};
    for (std::size_t j = 0; j < 8; ++j) row += op.matrix()(i, j) * psi[j];
    acc += std::conj(psi[i]) * row;
  }
  return acc.real();
}

inline Trajectory simulate_trajectory(const ProtocolContext& ctx, RngStream rng) {
  const auto& hypotheses = three_qubit_labels();
  const HypothesisLabel& hyp = hypotheses[rng.uniform_int(4)];

  const PureQubit phi0 = haar_sample_qubit(rng);
  const PureQubit phi1 = haar_sample_qubit(rng);
  std::array<PureQubit, 3> qubits;
  std::array<std::array<Complex, 2>, 3> amps;
  for (int q = 0; q < 3; ++q) {
    qubits[static_cast<std::size_t>(q)] =
        hyp.pattern()[static_cast<std::size_t>(q)] == '0' ? phi0 : phi1;
    amps[static_cast<std::size_t>(q)] = qubits[static_cast<std::size_t>(q)].amplitudes();
  }

  // product state, rotated once into the Schur basis
  std::array<Complex, 8> psi_comp;
  for (std::size_t idx = 0; idx < 8; ++idx)
    psi_comp[idx] = amps[0][(idx >> 2) & 1] * amps[1][(idx >> 1) & 1] * amps[2][idx & 1];
  std::array<Complex, 8> psi{};
  for (std::size_t i = 0; i < 8; ++i) {
    Complex acc{};
    for (std::size_t j = 0; j < 8; ++j) acc += ctx.schur[i][j] * psi_comp[j];
    psi[i] = acc;
  }

  // first measurement: Born probability of the minus outcome
  double p_minus = 0.0;
  for (std::size_t i = 0; i < 8; ++i)
    p_minus += ctx.sqrt_minus[i] * ctx.sqrt_minus[i] * std::norm(psi[i]);
  p_minus = std::clamp(p_minus, 0.0, 1.0);
  const bool minus = rng.uniform01() < p_minus;
  const FirstOutcome outcome = minus ? FirstOutcome::Minus : FirstOutcome::Plus;

  // pure-state Luders update (sqrt(pi) (x) 1)|psi>, renormalised
  const auto& d = minus ? ctx.sqrt_minus : ctx.sqrt_plus;
  const double branch_prob = minus ? p_minus : 1.0 - p_minus;
  const double inv_norm = 1.0 / std::sqrt(branch_prob);
  std::array<Complex, 8> psi2;
  for (std::size_t i = 0; i < 8; ++i) psi2[i] = d[i] * psi[i] * inv_norm;

  const auto& povm = minus ? ctx.povm_minus : ctx.povm_plus;
  if (!povm)
    throw ConsistencyError("sampled a first outcome whose probability is exactly zero");

  // second measurement over the four hypotheses
  const double u = rng.uniform01();
  double cumulative = 0.0;
  std::size_t guess = 3;
  for (std::size_t k = 0; k < 4; ++k) {
    cumulative += born_probability(povm->elements[k].op, psi2);
    if (u < cumulative) {
      guess = k;
      break;
    }
  }

  Trajectory t{hyp,
               qubits,
               outcome,
               hypotheses[guess],
               (outcome == FirstOutcome::Plus) == (hyp.pattern()[1] == '0'),
               hypotheses[guess] == hyp};
  return t;
}

}  // namespace detail

/// Convenience single-shot entry point (rebuilds the protocol context).
inline Trajectory simulate_trajectory(const WeakParams& params, RngStream& rng) {
  return detail::simulate_trajectory(detail::ProtocolContext(params), rng);
}

/// Run n independent trajectories of the sequential protocol. Trajectory t
/// draws from substream t of the seed, so results are bit-identical for a
/// given seed regardless of execution order or partitioning.
inline RunSummary run_trajectories(const WeakParams& params, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("need at least one trajectory");
  const detail::ProtocolContext ctx(params);
  const RngStream base(seed);

  RunSummary summary;
  summary.n_trajectories = n;
  summary.params = params;
  summary.seed = seed;

  std::uint64_t first_correct = 0;
  std::uint64_t second_correct = 0;
  const auto& hypotheses = three_qubit_labels();
  for (std::size_t t = 0; t < n; ++t) {
    const Trajectory traj = detail::simulate_trajectory(ctx, base.substream(t));
    first_correct += traj.first_correct;
    second_correct += traj.second_correct;
    std::size_t h = 0, g = 0;
    for (std::size_t k = 0; k < 4; ++k) {
      if (hypotheses[k] == traj.hypothesis) h = k;
      if (hypotheses[k] == traj.second_outcome) g = k;
    }
    const std::size_t o = traj.first_outcome == FirstOutcome::Plus ? 0 : 1;
    ++summary.counts.first[h][o];
    ++summary.counts.second[h][o][g];
  }

  const double nn = static_cast<double>(n);
  summary.p1_hat = static_cast<double>(first_correct) / nn;
  summary.p2_hat = static_cast<double>(second_correct) / nn;
  summary.p1_se = std::sqrt(summary.p1_hat * (1.0 - summary.p1_hat) / nn);
  summary.p2_se = std::sqrt(summary.p2_hat * (1.0 - summary.p2_hat) / nn);
  return summary;
}

/// Empirical tradeoff curve along the optimize_beta locus: n_points uniform in
/// p_first over [1/2, 5/8], each estimated from n_per_point trajectories on its
/// own derived seed.
inline std::vector<RunSummary> estimate_curve(std::size_t n_points, std::size_t n_per_point,
                                              std::uint64_t seed) {
  if (n_points < 2) throw std::invalid_argument("estimate_curve needs at least 2 points");
  const RngStream base(seed);
  std::vector<RunSummary> out;
  out.reserve(n_points);
  for (std::size_t i = 0; i < n_points; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(n_points - 1);
    const double pf = 0.5 + 0.125 * t;
    const double alpha = std::clamp(8.0 * (pf - 0.5), 0.0, 1.0);
    const BetaOptimum opt = optimize_beta(alpha);
    out.push_back(run_trajectories({alpha, opt.beta_star}, n_per_point, base.derive_seed(i)));
  }
  return out;
}

}  // namespace sqc
