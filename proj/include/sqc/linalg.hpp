#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace sqc {

using Complex = std::complex<double>;

/// Absolute max-norm tolerance for structural checks: hermiticity, positivity,
/// POVM completeness. Everything in this library lives in dimension <= 8 with
/// analytically exact entries, so structural residuals are pure rounding noise.
inline constexpr double kStructuralTol = 1e-12;

/// Tolerance for spectral reconstructions (eigendecomposition, psd_sqrt).
inline constexpr double kSpectralTol = 1e-10;

/// Probabilities at or below this threshold are treated as exactly zero.
inline constexpr double kZeroProbability = 1e-15;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotHermitian : public std::invalid_argument {
 public:
  NotHermitian(double deviation, double tol)
      : std::invalid_argument("matrix is not Hermitian: max |A - A^dag| = " +
                              std::to_string(deviation) + " > " + std::to_string(tol)),
        deviation(deviation) {}
  double deviation;
};

class NotPositiveSemidefinite : public std::domain_error {
 public:
  NotPositiveSemidefinite(double eigenvalue, double tol)
      : std::domain_error("operator has eigenvalue " + std::to_string(eigenvalue) +
                          " below -" + std::to_string(tol)),
        eigenvalue(eigenvalue) {}
  double eigenvalue;
};

class EigenSolverError : public std::runtime_error {
 public:
  explicit EigenSolverError(double residual)
      : std::runtime_error("hermitian eigensolver did not converge (residual " +
                           std::to_string(residual) + ")"),
        residual(residual) {}
  double residual;
};

/// Raised when two independently computed routes to the same quantity disagree.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Dense complex matrix, row-major. The carrier type for every operator here;
/// nothing in this library needs dimensions beyond 8.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;

  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols) {
    if (rows == 0 || cols == 0) throw DimensionError("matrix dimensions must be positive");
  }

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static ComplexMatrix zero(std::size_t rows, std::size_t cols) { return {rows, cols}; }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Complex& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  const std::vector<Complex>& entries() const { return entries_; }

  ComplexMatrix adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
  }

  bool all_finite() const {
    for (const Complex& z : entries_)
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
  }

  double max_abs() const {
    double m = 0.0;
    for (const Complex& z : entries_) m = std::max(m, std::abs(z));
    return m;
  }

  ComplexMatrix& operator+=(const ComplexMatrix& other) {
    require_same_shape(other);
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += other.entries_[k];
    return *this;
  }

  ComplexMatrix& operator-=(const ComplexMatrix& other) {
    require_same_shape(other);
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= other.entries_[k];
    return *this;
  }

  ComplexMatrix& operator*=(Complex s) {
    for (Complex& z : entries_) z *= s;
    return *this;
  }

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols_ != b.rows_) throw DimensionError("matrix product shape mismatch");
    ComplexMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Complex aik = a(i, k);
        if (aik == Complex{}) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }

  /// Matrix-vector product.
  std::vector<Complex> apply(const std::vector<Complex>& v) const {
    if (v.size() != cols_) throw DimensionError("matrix-vector shape mismatch");
    std::vector<Complex> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      Complex acc{};
      for (std::size_t j = 0; j < cols_; ++j) acc += (*this)(i, j) * v[j];
      out[i] = acc;
    }
    return out;
  }

 private:
  void require_same_shape(const ComplexMatrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_)
      throw DimensionError("matrix shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> entries_;
};

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError("matrix shape mismatch in max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

inline double hermiticity_deviation(const ComplexMatrix& m) {
  double dev = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      dev = std::max(dev, std::abs(m(i, j) - std::conj(m(j, i))));
  return dev;
}

/// Kronecker product; index convention out(i_a*rows_b + i_b, j_a*cols_b + j_b).
inline ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ia = 0; ia < a.rows(); ++ia)
    for (std::size_t ja = 0; ja < a.cols(); ++ja) {
      const Complex aij = a(ia, ja);
      if (aij == Complex{}) continue;
      for (std::size_t ib = 0; ib < b.rows(); ++ib)
        for (std::size_t jb = 0; jb < b.cols(); ++jb)
          out(ia * b.rows() + ib, ja * b.cols() + jb) = aij * b(ib, jb);
    }
  return out;
}

inline std::vector<Complex> tensor(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  std::vector<Complex> out(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i * b.size() + j] = a[i] * b[j];
  return out;
}

inline Complex trace(const ComplexMatrix& m) {
  if (!m.is_square()) throw DimensionError("trace requires a square matrix");
  Complex t{};
  for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
  return t;
}

/// Square matrix that is Hermitian within kStructuralTol (max-norm), checked on
/// construction.
class HermitianOperator {
 public:
  explicit HermitianOperator(ComplexMatrix m, double tol = kStructuralTol) : m_(std::move(m)) {
    if (!m_.is_square()) throw DimensionError("Hermitian operator must be square");
    if (!m_.all_finite())
      throw std::invalid_argument("Hermitian operator has non-finite entries");
    const double dev = hermiticity_deviation(m_);
    if (dev > tol) throw NotHermitian(dev, tol);
  }

  std::size_t dim() const { return m_.rows(); }
  const ComplexMatrix& matrix() const { return m_; }

 private:
  ComplexMatrix m_;
};

struct Eigendecomposition {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix eigenvectors;       // unitary; column k pairs with eigenvalues[k]
};

inline Eigendecomposition hermitian_eigendecomposition(const HermitianOperator& h) {
  const std::size_t n = h.dim();
  Eigen::MatrixXcd m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = h.matrix()(i, j);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
  if (solver.info() != Eigen::Success) {
    const double residual =
        (m * solver.eigenvectors() - solver.eigenvectors() * solver.eigenvalues().asDiagonal())
            .cwiseAbs()
            .maxCoeff();
    throw EigenSolverError(residual);
  }

  Eigendecomposition out;
  out.eigenvalues.resize(n);
  out.eigenvectors = ComplexMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = solver.eigenvalues()(static_cast<Eigen::Index>(k));
    for (std::size_t i = 0; i < n; ++i)
      out.eigenvectors(i, k) =
          solver.eigenvectors()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
  }
  return out;
}

/// Positive-semidefinite square root. Eigenvalues in [-tol, 0) clamp to zero so
/// exactly singular operators (rank-deficient POVM elements) pass; anything
/// below -tol is a genuine positivity violation. Eigenvalues in [0, tol] also
/// collapse to zero: sqrt would blow rounding noise in a mathematically null
/// direction up to ~1e-8, wrecking entrywise identities downstream.
inline HermitianOperator psd_sqrt(const HermitianOperator& h, double tol = kStructuralTol) {
  const Eigendecomposition eig = hermitian_eigendecomposition(h);
  const std::size_t n = h.dim();

  std::vector<double> roots(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double lambda = eig.eigenvalues[k];
    if (lambda < -tol) throw NotPositiveSemidefinite(lambda, tol);
    roots[k] = lambda > tol ? std::sqrt(lambda) : 0.0;
  }

  const ComplexMatrix& v = eig.eigenvectors;
  ComplexMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Complex acc{};
      for (std::size_t k = 0; k < n; ++k) acc += v(i, k) * roots[k] * std::conj(v(j, k));
      out(i, j) = acc;
    }
  // kill rounding asymmetry so downstream hermiticity checks stay exact
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const Complex s = 0.5 * (out(i, j) + std::conj(out(j, i)));
      out(i, j) = s;
      out(j, i) = std::conj(s);
    }
  return HermitianOperator(std::move(out));
}

inline double min_eigenvalue(const HermitianOperator& h) {
  return hermitian_eigendecomposition(h).eigenvalues.front();
}

}  // namespace sqc
