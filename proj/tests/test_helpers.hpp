#pragma once

#include <cmath>
#include <numbers>

#include "sqc/linalg.hpp"
#include "sqc/rng.hpp"

namespace sqc_test {

inline double normal(sqc::RngStream& rng) {
  const double u1 = 1.0 - rng.uniform01();  // (0, 1]
  const double u2 = rng.uniform01();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

inline sqc::Complex complex_normal(sqc::RngStream& rng) {
  const double re = normal(rng);
  const double im = normal(rng);
  return {re, im};
}

inline sqc::ComplexMatrix random_ginibre(std::size_t dim, sqc::RngStream& rng) {
  sqc::ComplexMatrix g(dim, dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) g(i, j) = complex_normal(rng);
  return g;
}

inline sqc::HermitianOperator random_hermitian(std::size_t dim, sqc::RngStream& rng) {
  const sqc::ComplexMatrix g = random_ginibre(dim, rng);
  sqc::ComplexMatrix h(dim, dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      h(i, j) = 0.5 * (g(i, j) + std::conj(g(j, i)));
  return sqc::HermitianOperator(std::move(h));
}

inline sqc::HermitianOperator random_psd(std::size_t dim, sqc::RngStream& rng) {
  const sqc::ComplexMatrix g = random_ginibre(dim, rng);
  return sqc::HermitianOperator(g.adjoint() * g);
}

/// Haar-random 2x2 unitary via QR of a Ginibre sample (Gram-Schmidt with the
/// R-diagonal phase fix).
inline sqc::ComplexMatrix random_unitary2(sqc::RngStream& rng) {
  sqc::Complex a = complex_normal(rng), b = complex_normal(rng);
  sqc::Complex c = complex_normal(rng), d = complex_normal(rng);
  const double n1 = std::sqrt(std::norm(a) + std::norm(c));
  a /= n1;
  c /= n1;
  const sqc::Complex overlap = std::conj(a) * b + std::conj(c) * d;
  b -= overlap * a;
  d -= overlap * c;
  const double n2 = std::sqrt(std::norm(b) + std::norm(d));
  b /= n2;
  d /= n2;
  sqc::ComplexMatrix u(2, 2);
  u(0, 0) = a;
  u(0, 1) = b;
  u(1, 0) = c;
  u(1, 1) = d;
  return u;
}

}  // namespace sqc_test
