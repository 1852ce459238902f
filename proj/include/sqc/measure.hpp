#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sqc/linalg.hpp"
#include "sqc/schur.hpp"
#include "sqc/states.hpp"

namespace sqc {

/// Strength (alpha, beta) of the intermediate two-qubit measurement,
///   pi_minus = alpha P_- + beta I,   pi_plus = alpha P_+ + (1-alpha-beta) I,
/// constrained to beta in [0,1], alpha in [0, 1-beta] by positivity.
struct WeakParams {
  double alpha = 0.0;
  double beta = 0.0;
};

class InvalidWeakParams : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline void validate_weak_params(const WeakParams& p) {
  if (!(p.beta >= 0.0 && p.beta <= 1.0))
    throw InvalidWeakParams("beta = " + std::to_string(p.beta) + " outside [0, 1]");
  if (!(p.alpha >= 0.0))
    throw InvalidWeakParams("alpha = " + std::to_string(p.alpha) + " below 0");
  if (!(p.alpha <= 1.0 - p.beta))
    throw InvalidWeakParams("alpha = " + std::to_string(p.alpha) + " above 1 - beta = " +
                            std::to_string(1.0 - p.beta));
}

enum class FirstOutcome { Plus, Minus };

inline const char* to_string(FirstOutcome o) { return o == FirstOutcome::Plus ? "plus" : "minus"; }

class ImpossibleOutcome : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class DegenerateGeometry : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

namespace detail {

/// Values within rounding distance of a mathematically exact zero collapse to
/// zero, so quantities that vanish on the constraint boundary (e.g. 1-alpha-beta
/// at alpha = 1-beta) stay exactly null under square roots.
inline double snap_tiny(double x) { return std::abs(x) <= 1e-14 ? 0.0 : x; }

/// The plus-outcome formulas follow from the minus-outcome ones under the
/// formal swaps alpha -> -alpha, beta -> 1-beta. Every closed form below is
/// written once in the substituted variables so the plus branch is generated
/// mechanically instead of hand-transcribed. All radicands and denominators
/// are expressed through the nonnegative pair (b, ab = a + b).
struct SubstitutedParams {
  double a;   // alpha or -alpha
  double b;   // beta or 1-beta
  double ab;  // a + b, snapped to zero on the constraint boundary
};

inline SubstitutedParams substituted(const WeakParams& p, FirstOutcome outcome) {
  if (outcome == FirstOutcome::Minus) return {p.alpha, p.beta, snap_tiny(p.alpha + p.beta)};
  return {-p.alpha, 1.0 - p.beta, snap_tiny((1.0 - p.beta) - p.alpha)};
}

/// P(outcome) = (a + 8b)/8 = (ab + 7b)/8 at uniform 1/4 priors.
inline double outcome_probability(const SubstitutedParams& s) {
  return (s.ab + 7.0 * s.b) / 8.0;
}

}  // namespace detail

// --- POVM type and diagnostics ----------------------------------------------

struct PovmElement {
  std::string label;
  HermitianOperator op;
};

struct Povm {
  std::size_t dim = 0;
  Basis basis = Basis::Schur;
  std::vector<PovmElement> elements;
};

struct ElementPositivity {
  std::string label;
  double min_eigenvalue;
};

/// Diagnostic report: per-element minimum eigenvalue and the max-norm residual
/// of sum(elements) - I, with pass/fail at the given tolerance.
struct PovmReport {
  std::vector<ElementPositivity> element_positivity;
  double completeness_residual = 0.0;
  double tolerance = kStructuralTol;
  bool pass = false;
};

inline PovmReport validate_povm(const Povm& povm, double tol = kStructuralTol) {
  PovmReport report;
  report.tolerance = tol;
  bool ok = !povm.elements.empty();
  ComplexMatrix sum = ComplexMatrix::zero(povm.dim, povm.dim);
  for (const PovmElement& e : povm.elements) {
    if (e.op.dim() != povm.dim) throw DimensionError("POVM element dimension mismatch");
    const double min_eig = min_eigenvalue(e.op);
    report.element_positivity.push_back({e.label, min_eig});
    ok = ok && min_eig >= -tol;
    sum += e.op.matrix();
  }
  report.completeness_residual = max_abs_diff(sum, ComplexMatrix::identity(povm.dim));
  report.pass = ok && report.completeness_residual <= tol;
  return report;
}

// --- Measurement dynamics -----------------------------------------------------

/// Minimally disturbing update rho -> sqrt(pi) rho sqrt(pi) / Tr(pi rho),
/// returned with the outcome probability Tr(pi rho). Outcomes of probability
/// <= kZeroProbability yield the zero-state sentinel, matching the annihilated
/// branches at the (alpha, beta) = (1, 0) corner.
inline std::pair<DensityOperator, double> luders_update(const DensityOperator& rho,
                                                        const HermitianOperator& element) {
  if (element.dim() != rho.dim()) throw DimensionError("Luders update dimension mismatch");
  if (rho.is_zero()) return {DensityOperator::zero(rho.dim(), rho.basis()), 0.0};

  const double prob = trace(element.matrix() * rho.matrix()).real();
  if (prob <= kZeroProbability) return {DensityOperator::zero(rho.dim(), rho.basis()), 0.0};

  const HermitianOperator root = psd_sqrt(element);
  ComplexMatrix numerator = root.matrix() * rho.matrix() * root.matrix();
  const double norm = trace(numerator).real();
  numerator *= Complex{1.0 / norm, 0.0};
  return {DensityOperator(HermitianOperator(std::move(numerator)), rho.basis()), prob};
}

struct WeightedState {
  DensityOperator state;
  double prior;
};

/// P_succ = sum_i p_i Tr(pi_i rho_i); element i of the POVM is the "guess i"
/// outcome and must line up with ensemble entry i.
inline double success_probability(const Povm& povm, const std::vector<WeightedState>& ensemble) {
  if (povm.elements.size() != ensemble.size())
    throw std::invalid_argument("POVM and ensemble sizes differ");
  double total = 0.0;
  for (std::size_t i = 0; i < ensemble.size(); ++i) {
    const DensityOperator& rho = ensemble[i].state;
    if (rho.is_zero()) continue;
    if (rho.basis() != povm.basis)
      throw std::invalid_argument("POVM and state bases differ");
    if (rho.dim() != povm.dim) throw DimensionError("POVM and state dimensions differ");
    total += ensemble[i].prior * trace(povm.elements[i].op.matrix() * rho.matrix()).real();
  }
  return total;
}

// --- The concrete measurement families ----------------------------------------

/// Projectors onto the symmetric (rank 3) and antisymmetric (rank 1) two-qubit
/// subspaces; plus guesses "same pair" (rho_00), minus guesses "different pair"
/// (rho_01). Schur basis.
inline Povm optimal_two_qubit_povm() {
  Povm povm{4, Basis::Schur, {}};
  povm.elements.push_back({"plus", HermitianOperator(two_qubit_schur_diagonal(1.0, 0.0))});
  povm.elements.push_back({"minus", HermitianOperator(two_qubit_schur_diagonal(0.0, 1.0))});
  return povm;
}

/// Interpolation between the identity measurement and the optimal projective
/// one. Schur basis. The singlet entries are the substituted ab values, so the
/// boundary zeros here are the same exact zeros the closed forms use.
inline Povm weak_two_qubit_povm(const WeakParams& p) {
  validate_weak_params(p);
  const auto plus = detail::substituted(p, FirstOutcome::Plus);
  const auto minus = detail::substituted(p, FirstOutcome::Minus);
  Povm povm{4, Basis::Schur, {}};
  povm.elements.push_back(
      {"plus", HermitianOperator(two_qubit_schur_diagonal(plus.b, plus.ab))});
  povm.elements.push_back(
      {"minus", HermitianOperator(two_qubit_schur_diagonal(minus.b, minus.ab))});
  return povm;
}

/// Optimal discrimination of the four undisturbed three-qubit states. Schur
/// basis; element order 000, 001, 010, 011.
inline Povm optimal_three_qubit_povm() {
  const double s3 = std::sqrt(3.0);
  Povm povm{8, Basis::Schur, {}};
  povm.elements.push_back(
      {"000", HermitianOperator(schur_block_operator(1.0, ComplexMatrix::zero(2, 2)))});
  povm.elements.push_back(
      {"001", HermitianOperator(schur_block_operator(0.0, (2.0 / 3.0) * path_outer(1.0, 0.0)))});
  povm.elements.push_back(
      {"010", HermitianOperator(schur_block_operator(0.0, (1.0 / 6.0) * path_outer(1.0, -s3)))});
  povm.elements.push_back(
      {"011", HermitianOperator(schur_block_operator(0.0, (1.0 / 6.0) * path_outer(1.0, +s3)))});
  return povm;
}

// --- Disturbed ensemble ---------------------------------------------------------

struct DisturbedEntry {
  HypothesisLabel label;
  DensityOperator state;
  double prior;
};

/// Post-first-measurement three-qubit states with Bayes-updated priors; entry
/// order 000, 001, 010, 011 matches the POVM factories.
struct DisturbedEnsemble {
  FirstOutcome outcome;
  WeakParams params;
  std::vector<DisturbedEntry> entries;
  double outcome_probability = 0.0;

  std::vector<WeightedState> weighted() const {
    std::vector<WeightedState> out;
    out.reserve(entries.size());
    for (const DisturbedEntry& e : entries) out.push_back({e.state, e.prior});
    return out;
  }
};

namespace detail {

inline void require_possible(const SubstitutedParams& s, const WeakParams& p,
                             FirstOutcome outcome) {
  if (outcome_probability(s) <= kZeroProbability)
    throw ImpossibleOutcome(std::string("outcome ") + to_string(outcome) +
                            " has probability zero at alpha = " + std::to_string(p.alpha) +
                            ", beta = " + std::to_string(p.beta));
}

/// Per-hypothesis probability of the first outcome, Tr((pi (x) 1) rho_0ij):
/// b for j-patterns starting 00, (a + 4b)/4 = (ab + 3b)/4 for patterns 01k.
inline double first_outcome_prob(const SubstitutedParams& s, const HypothesisLabel& label) {
  return label.pattern()[1] == '0' ? s.b : (s.ab + 3.0 * s.b) / 4.0;
}

/// Unnormalised path vector of the disturbed 01k states,
/// sqrt(b)|1> -+ sqrt(3(a+b))|0> (minus sign for 010).
inline std::pair<double, double> disturbed_path_vector(const SubstitutedParams& s, char k) {
  const double c1 = std::sqrt(s.b);
  const double c0 = (k == '0' ? -1.0 : +1.0) * std::sqrt(3.0 * s.ab);
  return {c1, c0};
}

}  // namespace detail

/// Generic route: lift the outcome element to three qubits in the
/// computational basis and apply the Luders update to each analytic state;
/// priors by Bayes' rule on the per-hypothesis outcome probabilities.
inline DisturbedEnsemble disturbed_ensemble_via_luders(const WeakParams& p,
                                                       FirstOutcome outcome) {
  validate_weak_params(p);
  const auto s = detail::substituted(p, outcome);
  detail::require_possible(s, p, outcome);

  const Povm weak = weak_two_qubit_povm(p);
  const ComplexMatrix& pi_schur =
      weak.elements[outcome == FirstOutcome::Plus ? 0 : 1].op.matrix();
  const ComplexMatrix& u2 = schur_transform(2).unitary;
  const HermitianOperator lifted(
      tensor(u2.adjoint() * pi_schur * u2, ComplexMatrix::identity(2)));

  DisturbedEnsemble ens{outcome, p, {}, 0.0};
  std::vector<double> probs;
  for (const HypothesisLabel& label : three_qubit_labels()) {
    const DensityOperator rho = to_basis(analytic_state(label), Basis::Computational);
    auto [state, prob] = luders_update(rho, lifted);
    probs.push_back(prob);
    ens.entries.push_back({label, to_basis(state, Basis::Schur), 0.0});
  }
  double total = 0.0;
  for (double q : probs) total += 0.25 * q;
  ens.outcome_probability = total;
  for (std::size_t i = 0; i < probs.size(); ++i) ens.entries[i].prior = 0.25 * probs[i] / total;
  return ens;
}

/// Closed-form route, cross-checked entrywise against the generic Luders route
/// on every call (the closed forms were stated without intermediate steps, so
/// the identity is kept as a standing runtime check). Returned states and
/// priors are the closed forms.
inline DisturbedEnsemble disturbed_ensemble(const WeakParams& p, FirstOutcome outcome) {
  validate_weak_params(p);
  const auto s = detail::substituted(p, outcome);
  detail::require_possible(s, p, outcome);

  DisturbedEnsemble ens{outcome, p, {}, detail::outcome_probability(s)};
  const double denom = 6.0 * (s.ab + 3.0 * s.b);
  const double prior_00x = 2.0 * s.b / (s.ab + 7.0 * s.b);
  const double prior_01x = (s.ab + 3.0 * s.b) / (2.0 * (s.ab + 7.0 * s.b));

  for (const HypothesisLabel& label : three_qubit_labels()) {
    const char j = label.pattern()[1];
    const char k = label.pattern()[2];
    if (j == '0') {
      // rho_000 and rho_001 are left unchanged when they survive
      DensityOperator state = detail::first_outcome_prob(s, label) <= kZeroProbability
                                  ? DensityOperator::zero(8, Basis::Schur)
                                  : analytic_state(label);
      ens.entries.push_back({label, std::move(state), prior_00x});
    } else {
      const auto [c1, c0] = detail::disturbed_path_vector(s, k);
      ComplexMatrix m = schur_block_operator(4.0 * s.b / denom,
                                             (1.0 / denom) * path_outer(c1, c0));
      ens.entries.push_back(
          {label, DensityOperator(HermitianOperator(std::move(m)), Basis::Schur), prior_01x});
    }
  }

  const DisturbedEnsemble generic = disturbed_ensemble_via_luders(p, outcome);
  for (std::size_t i = 0; i < ens.entries.size(); ++i) {
    const DensityOperator& closed = ens.entries[i].state;
    const DensityOperator& fromLuders = generic.entries[i].state;
    if (closed.is_zero() != fromLuders.is_zero())
      throw ConsistencyError("closed-form and Luders-route disturbed states disagree on a "
                             "zero-probability branch");
    if (!closed.is_zero() &&
        max_abs_diff(closed.matrix(), fromLuders.matrix()) > kStructuralTol)
      throw ConsistencyError("closed-form and Luders-route disturbed states differ beyond "
                             "tolerance for hypothesis " + ens.entries[i].label.pattern());
    if (std::abs(ens.entries[i].prior - generic.entries[i].prior) > kStructuralTol)
      throw ConsistencyError("closed-form and Bayes-rule priors differ beyond tolerance for "
                             "hypothesis " + ens.entries[i].label.pattern());
  }
  return ens;
}

// --- Mirror-symmetric second measurement ---------------------------------------

/// Geometry of the conditional s=1/2 discrimination problem: tilted-state prior
/// p, tilt angle (cos/sin), and the mirror-symmetric measurement parameter a.
struct MirrorGeometry {
  double p = 0.0;
  double cos_theta = 0.0;
  double sin_theta = 0.0;
  double a = 0.0;
};

inline MirrorGeometry mirror_geometry(const WeakParams& params, FirstOutcome outcome) {
  validate_weak_params(params);
  const auto s = detail::substituted(params, outcome);
  // posterior s=1/2 mass is (a + 2b)/8 = (ab + b)/8; without it the tilt is undefined
  if (s.ab + s.b <= kZeroProbability)
    throw DegenerateGeometry(std::string("the s=1/2 subspace carries zero probability after "
                                         "outcome ") + to_string(outcome) +
                             "; mirror geometry undefined");

  MirrorGeometry g;
  g.cos_theta = std::sqrt(s.b / (3.0 * s.ab + s.b));
  g.sin_theta = std::sqrt(3.0 * s.ab / (3.0 * s.ab + s.b));
  g.p = (3.0 * s.ab + s.b) / (6.0 * (s.ab + s.b));
  // threshold rule: the a = 1 region is entered exactly at a >= 2b (boundary
  // closed on the a = 1 side; both branches give 1 there)
  g.a = s.a >= 2.0 * s.b ? 1.0 : std::sqrt(s.ab / (3.0 * s.b));
  return g;
}

/// Optimal measurement on the disturbed ensemble: I_{3/2} for 000 and the
/// mirror-symmetric family on the s=1/2 path plane, with a = a_- or a_+
/// depending on the first outcome. Complete for any a in [0,1] by
/// construction. Schur basis; element order 000, 001, 010, 011.
inline Povm second_povm(const WeakParams& params, FirstOutcome outcome) {
  const double a = mirror_geometry(params, outcome).a;
  if (!(a >= 0.0 && a <= 1.0))
    throw ConsistencyError("mirror parameter a outside [0,1]: " + std::to_string(a));

  Povm povm{8, Basis::Schur, {}};
  povm.elements.push_back(
      {"000", HermitianOperator(schur_block_operator(1.0, ComplexMatrix::zero(2, 2)))});
  povm.elements.push_back(
      {"001", HermitianOperator(schur_block_operator(0.0, (1.0 - a * a) * path_outer(1.0, 0.0)))});
  povm.elements.push_back(
      {"010", HermitianOperator(schur_block_operator(0.0, 0.5 * path_outer(a, -1.0)))});
  povm.elements.push_back(
      {"011", HermitianOperator(schur_block_operator(0.0, 0.5 * path_outer(a, +1.0)))});
  return povm;
}

/// Independent optimality oracle for the mirror parameter: scan the conditional
/// second-measurement success over a uniform grid on [0,1] and return the
/// argmax. Ties break toward larger a, so the exactly flat beta = 0 rows agree
/// with the closed form's a = 1.
inline double grid_search_a(const WeakParams& params, FirstOutcome outcome, std::size_t grid_n) {
  if (grid_n < 1000) throw std::invalid_argument("grid_n must be at least 1000");
  const DisturbedEnsemble ens = disturbed_ensemble(params, outcome);

  // reduce each state to its s=3/2 trace and spin-traced 2x2 path matrix
  struct Reduced {
    double prior, t32, r11, r00, re_r10;
  };
  std::vector<Reduced> reduced;
  for (const DisturbedEntry& e : ens.entries) {
    Reduced r{e.prior, 0.0, 0.0, 0.0, 0.0};
    if (!e.state.is_zero()) {
      const ComplexMatrix& m = e.state.matrix();
      for (std::size_t i = 0; i < 4; ++i) r.t32 += m(i, i).real();
      r.r11 = (m(4, 4) + m(5, 5)).real();
      r.r00 = (m(6, 6) + m(7, 7)).real();
      r.re_r10 = (m(4, 6) + m(5, 7)).real();
    }
    reduced.push_back(r);
  }

  const Reduced& s000 = reduced[0];
  const Reduced& s001 = reduced[1];
  const Reduced& s010 = reduced[2];
  const Reduced& s011 = reduced[3];
  auto conditional_success = [&](double a) {
    double f = s000.prior * s000.t32;
    f += s001.prior * (1.0 - a * a) * s001.r11;
    f += s010.prior * 0.5 * (a * a * s010.r11 - 2.0 * a * s010.re_r10 + s010.r00);
    f += s011.prior * 0.5 * (a * a * s011.r11 + 2.0 * a * s011.re_r10 + s011.r00);
    return f;
  };

  double best_a = 0.0;
  double best_f = conditional_success(0.0);
  for (std::size_t i = 1; i < grid_n; ++i) {
    const double a = static_cast<double>(i) / static_cast<double>(grid_n - 1);
    const double f = conditional_success(a);
    if (f >= best_f) {
      best_f = f;
      best_a = a;
    }
  }
  return best_a;
}

}  // namespace sqc
