#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sqc/linalg.hpp"
#include "sqc/rng.hpp"
#include "sqc/schur.hpp"

namespace sqc {

enum class Basis { Computational, Schur };

inline const char* to_string(Basis b) {
  return b == Basis::Computational ? "computational" : "schur";
}

class InvalidLabel : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Pattern of qubit types, first symbol always 0 (only relative labels survive
/// the Haar average): 00, 01 for two qubits; 000, 001, 010, 011 for three.
class HypothesisLabel {
 public:
  explicit HypothesisLabel(std::string_view pattern) : pattern_(pattern) {
    if (!is_valid(pattern))
      throw InvalidLabel("invalid hypothesis label '" + pattern_ +
                         "' (expected 00, 01, 000, 001, 010 or 011)");
  }

  static bool is_valid(std::string_view pattern) {
    if (pattern.size() != 2 && pattern.size() != 3) return false;
    if (pattern.front() != '0') return false;
    for (char c : pattern)
      if (c != '0' && c != '1') return false;
    return true;
  }

  int n_qubits() const { return static_cast<int>(pattern_.size()); }
  const std::string& pattern() const { return pattern_; }

  friend bool operator==(const HypothesisLabel&, const HypothesisLabel&) = default;

 private:
  std::string pattern_;
};

inline const std::array<HypothesisLabel, 4>& three_qubit_labels() {
  static const std::array<HypothesisLabel, 4> labels{
      HypothesisLabel("000"), HypothesisLabel("001"), HypothesisLabel("010"),
      HypothesisLabel("011")};
  return labels;
}

/// Unit-trace positive-semidefinite operator with explicit basis bookkeeping.
/// A distinguished all-zero sentinel represents the state after an outcome of
/// probability zero; it is exempt from the trace/positivity invariants and
/// contributes nothing to success sums.
class DensityOperator {
 public:
  DensityOperator(HermitianOperator op, Basis basis)
      : op_(std::move(op)), basis_(basis), zero_(false) {
    const double tr = trace(op_.matrix()).real();
    if (std::abs(tr - 1.0) > kStructuralTol)
      throw std::invalid_argument("density operator trace " + std::to_string(tr) +
                                  " is not 1");
    const double min_eig = min_eigenvalue(op_);
    if (min_eig < -kStructuralTol) throw NotPositiveSemidefinite(min_eig, kStructuralTol);
  }

  static DensityOperator zero(std::size_t dim, Basis basis) {
    return DensityOperator(HermitianOperator(ComplexMatrix::zero(dim, dim)), basis, true);
  }

  bool is_zero() const { return zero_; }
  std::size_t dim() const { return op_.dim(); }
  Basis basis() const { return basis_; }
  const HermitianOperator& op() const { return op_; }
  const ComplexMatrix& matrix() const { return op_.matrix(); }

 private:
  DensityOperator(HermitianOperator op, Basis basis, bool zero)
      : op_(std::move(op)), basis_(basis), zero_(zero) {}

  HermitianOperator op_;
  Basis basis_;
  bool zero_;
};

/// Basis conversion through the Schur transform of the matching qubit count.
inline DensityOperator to_basis(const DensityOperator& rho, Basis target) {
  if (rho.basis() == target) return rho;
  const int n = rho.dim() == 4 ? 2 : rho.dim() == 8 ? 3 : 0;
  if (n == 0) throw DimensionError("basis conversion supports dim 4 or 8 only");
  if (rho.is_zero()) return DensityOperator::zero(rho.dim(), target);
  const ComplexMatrix& u = schur_transform(n).unitary;
  const ComplexMatrix m = target == Basis::Schur
                              ? u * rho.matrix() * u.adjoint()
                              : u.adjoint() * rho.matrix() * u;
  return DensityOperator(HermitianOperator(m), target);
}

/// Pure qubit cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>.
struct PureQubit {
  double theta = 0.0;  // [0, pi]
  double phi = 0.0;    // [0, 2 pi)

  std::array<Complex, 2> amplitudes() const {
    return {Complex{std::cos(theta / 2.0), 0.0},
            std::polar(std::sin(theta / 2.0), phi)};
  }
};

/// Haar-uniform point on the Bloch sphere via inverse CDF: cos(theta) uniform
/// on [-1,1], phi uniform on [0, 2 pi). Consumes exactly two draws.
inline PureQubit haar_sample_qubit(RngStream& rng) {
  const double cos_theta = rng.uniform(-1.0, 1.0);
  const double phi = rng.uniform(0.0, 2.0 * std::numbers::pi);
  return {std::acos(cos_theta), phi};
}

/// Haar-averaged classification states in the Schur basis, exactly as derived:
///   rho_00  = (1/3) P_triplet                rho_01  = (1/4) I_4
///   rho_000 = (1/4) I_{3/2}
///   rho_001 = (1/6) I_{3/2} + (1/6) (|1><1|) (x) I_{1/2}
///   rho_01k = (1/6) I_{3/2} + (1/24) (|1> -+ sqrt(3)|0>)(...)^dag (x) I_{1/2}
inline DensityOperator analytic_state(const HypothesisLabel& label) {
  const double s3 = std::sqrt(3.0);
  const std::string& p = label.pattern();
  ComplexMatrix m;
  if (p == "00") {
    m = two_qubit_schur_diagonal(1.0 / 3.0, 0.0);
  } else if (p == "01") {
    m = two_qubit_schur_diagonal(0.25, 0.25);
  } else if (p == "000") {
    m = schur_block_operator(0.25, ComplexMatrix::zero(2, 2));
  } else if (p == "001") {
    m = schur_block_operator(1.0 / 6.0, (1.0 / 6.0) * path_outer(1.0, 0.0));
  } else if (p == "010") {
    m = schur_block_operator(1.0 / 6.0, (1.0 / 24.0) * path_outer(1.0, -s3));
  } else {  // "011"
    m = schur_block_operator(1.0 / 6.0, (1.0 / 24.0) * path_outer(1.0, +s3));
  }
  return {HermitianOperator(std::move(m)), Basis::Schur};
}

/// Empirical average of n_samples Haar product states, in the computational
/// basis. The estimate from disjoint substreams may be averaged; this routine
/// itself draws sequentially from the stream it is given.
inline DensityOperator monte_carlo_state(const HypothesisLabel& label, std::size_t n_samples,
                                         RngStream& rng) {
  if (n_samples == 0) throw std::invalid_argument("n_samples must be positive");
  const int n = label.n_qubits();
  const std::size_t dim = n == 2 ? 4 : 8;
  ComplexMatrix acc(dim, dim);

  for (std::size_t s = 0; s < n_samples; ++s) {
    const auto a = haar_sample_qubit(rng).amplitudes();
    const auto b = haar_sample_qubit(rng).amplitudes();
    std::vector<Complex> v(dim);
    const std::string& p = label.pattern();
    for (std::size_t idx = 0; idx < dim; ++idx) {
      Complex amp{1.0, 0.0};
      for (int q = 0; q < n; ++q) {
        const std::size_t bit = (idx >> (n - 1 - q)) & 1;
        amp *= (p[static_cast<std::size_t>(q)] == '0') ? a[bit] : b[bit];
      }
      v[idx] = amp;
    }
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) acc(i, j) += v[i] * std::conj(v[j]);
  }

  acc *= Complex{1.0 / static_cast<double>(n_samples), 0.0};
  return {HermitianOperator(std::move(acc)), Basis::Computational};
}

}  // namespace sqc
