#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "sqc/linalg.hpp"

namespace sqc {

/// Label |s, m_s>|p_s> of a Schur basis vector. Spins are stored doubled
/// (twice_s = 2s) so every label is an exact integer triple; path is 0
/// whenever the multiplicity space is one-dimensional.
struct SchurLabel {
  int twice_s = 0;
  int twice_m = 0;
  int path = 0;

  friend bool operator==(const SchurLabel&, const SchurLabel&) = default;
};

inline bool is_valid_schur_label(const SchurLabel& l, int n_qubits) {
  if (std::abs(l.twice_m) > l.twice_s) return false;
  if ((l.twice_m & 1) != (l.twice_s & 1)) return false;
  if (n_qubits == 2) return (l.twice_s == 0 || l.twice_s == 2) && l.path == 0;
  if (n_qubits == 3) {
    if (l.twice_s == 3) return l.path == 0;
    if (l.twice_s == 1) return l.path == 0 || l.path == 1;
    return false;
  }
  return false;
}

/// Unitary change of basis from computational coordinates to Schur coordinates,
/// with one label per row.
struct SchurTransform {
  int n_qubits = 0;
  ComplexMatrix unitary;
  std::vector<SchurLabel> labels;
};

namespace detail {

inline SchurTransform build_schur_transform_2() {
  const double r2 = 1.0 / std::sqrt(2.0);
  SchurTransform t;
  t.n_qubits = 2;
  t.unitary = ComplexMatrix(4, 4);
  // row order: (1,1), (1,0), (1,-1), (0,0); columns |00>,|01>,|10>,|11>
  t.unitary(0, 0) = 1.0;
  t.unitary(1, 1) = r2;
  t.unitary(1, 2) = r2;
  t.unitary(2, 3) = 1.0;
  t.unitary(3, 1) = r2;
  t.unitary(3, 2) = -r2;
  t.labels = {{2, 2, 0}, {2, 0, 0}, {2, -2, 0}, {0, 0, 0}};
  return t;
}

inline SchurTransform build_schur_transform_3() {
  const double r2 = 1.0 / std::sqrt(2.0);
  const double r3 = 1.0 / std::sqrt(3.0);
  const double r6 = 1.0 / std::sqrt(6.0);
  SchurTransform t;
  t.n_qubits = 3;
  t.unitary = ComplexMatrix(8, 8);
  auto row = [&](std::size_t r, std::initializer_list<std::pair<int, double>> terms) {
    for (auto [bits, coeff] : terms) t.unitary(r, static_cast<std::size_t>(bits)) = coeff;
  };
  // s=3/2 quadruplet
  row(0, {{0b000, 1.0}});
  row(1, {{0b100, r3}, {0b010, r3}, {0b001, r3}});
  row(2, {{0b011, r3}, {0b101, r3}, {0b110, r3}});
  row(3, {{0b111, 1.0}});
  // s=1/2, path |1> (descends from the triplet of qubits 1,2)
  row(4, {{0b100, r6}, {0b010, r6}, {0b001, -2 * r6}});
  row(5, {{0b011, -r6}, {0b101, -r6}, {0b110, 2 * r6}});
  // s=1/2, path |0> (descends from the singlet of qubits 1,2)
  row(6, {{0b100, r2}, {0b010, -r2}});
  row(7, {{0b101, r2}, {0b011, -r2}});
  t.labels = {{3, 3, 0},  {3, 1, 0},  {3, -1, 0}, {3, -3, 0},
              {1, 1, 1},  {1, -1, 1}, {1, 1, 0},  {1, -1, 0}};
  return t;
}

}  // namespace detail

/// Schur transform for two or three qubits. Row order:
///   n=2: (1,1), (1,0), (1,-1), (0,0)
///   n=3: (3/2,3/2), (3/2,1/2), (3/2,-1/2), (3/2,-3/2),
///        (1/2,1/2)|1>, (1/2,-1/2)|1>, (1/2,1/2)|0>, (1/2,-1/2)|0>
/// The path ket |1> is the spin-1/2 doublet built on the triplet of the first
/// two qubits, |0> the doublet built on their singlet.
inline const SchurTransform& schur_transform(int n_qubits) {
  static const SchurTransform two = detail::build_schur_transform_2();
  static const SchurTransform three = detail::build_schur_transform_3();
  if (n_qubits == 2) return two;
  if (n_qubits == 3) return three;
  throw DimensionError("schur_transform supports n_qubits in {2, 3}");
}

struct LiftedTerm {
  SchurLabel label;
  double weight;
};

/// Couple one extra spin-1/2 (added_twice_m = +1 or -1, i.e. m = +-1/2) onto a
/// two-qubit Schur label. Returns the weighted three-qubit labels of the
/// raising (s+1/2, path appended 0) and lowering (s-1/2, path appended 1)
/// branches; branches whose resulting m falls off the ladder are pruned.
///
/// Note the multiplicity-basis phases: the s=1/2 kets these weights generate
/// are -1 times the tabulated schur_transform(3) rows. Operators built from
/// whole path projectors are unaffected; amplitude-level comparisons must flip
/// the s=1/2 block sign.
inline std::vector<LiftedTerm> clebsch_lift(const SchurLabel& label, int added_twice_m) {
  if (!is_valid_schur_label(label, 2))
    throw std::invalid_argument("clebsch_lift requires a valid two-qubit Schur label");
  if (added_twice_m != 1 && added_twice_m != -1)
    throw std::invalid_argument("added spin-z must be +-1/2 (added_twice_m = +-1)");

  const double s = label.twice_s / 2.0;
  const double m = label.twice_m / 2.0;
  const double pm = added_twice_m;  // +1 or -1
  const int twice_m_out = label.twice_m + added_twice_m;

  std::vector<LiftedTerm> out;
  // raising branch |s+1/2, m+-1/2>|p,0>; the appended 0 keeps path = 0 here
  // because both two-qubit multiplicity spaces are one-dimensional
  out.push_back({{label.twice_s + 1, twice_m_out, 0},
                 std::sqrt((s + pm * m + 1.0) / (2.0 * s + 1.0))});
  // lowering branch -+ sqrt((s -+ m)/(2s+1)) |s-1/2, m+-1/2>|p,1>
  if (label.twice_s >= 1 && std::abs(twice_m_out) <= label.twice_s - 1) {
    out.push_back({{label.twice_s - 1, twice_m_out, 1},
                   -pm * std::sqrt((s - pm * m) / (2.0 * s + 1.0))});
  }
  return out;
}

/// Permutation of three qubit slots, given as images: sigma[k] is the slot the
/// qubit in slot k moves to (0-based).
using Permutation3 = std::array<int, 3>;

inline constexpr Permutation3 kPermIdentity{0, 1, 2};
inline constexpr Permutation3 kPermCycle123{1, 2, 0};  // |i1 i2 i3> -> |i3 i1 i2>
inline constexpr Permutation3 kPermCycle132{2, 0, 1};  // |i1 i2 i3> -> |i2 i3 i1>
inline constexpr Permutation3 kPermSwap12{1, 0, 2};
inline constexpr Permutation3 kPermSwap13{2, 1, 0};
inline constexpr Permutation3 kPermSwap23{0, 2, 1};

/// 8x8 permutation matrix in the computational basis,
///   P(sigma)|i_1 i_2 i_3> = |i_{sigma^-1(1)} i_{sigma^-1(2)} i_{sigma^-1(3)}>,
/// so e.g. P((123))|001> = |100>. Composition is a left action:
/// P(sigma o tau) = P(sigma) P(tau).
inline ComplexMatrix permutation_operator(const Permutation3& sigma) {
  std::array<int, 3> seen{0, 0, 0};
  for (int v : sigma) {
    if (v < 0 || v > 2) throw std::invalid_argument("permutation entries must be in {0,1,2}");
    ++seen[static_cast<std::size_t>(v)];
  }
  if (seen != std::array<int, 3>{1, 1, 1})
    throw std::invalid_argument("not a permutation of {0,1,2}");

  std::array<int, 3> inv{};
  for (int k = 0; k < 3; ++k) inv[static_cast<std::size_t>(sigma[static_cast<std::size_t>(k)])] = k;

  ComplexMatrix out(8, 8);
  for (int src = 0; src < 8; ++src) {
    const std::array<int, 3> bits{(src >> 2) & 1, (src >> 1) & 1, src & 1};
    const int dst = (bits[static_cast<std::size_t>(inv[0])] << 2) |
                    (bits[static_cast<std::size_t>(inv[1])] << 1) |
                    bits[static_cast<std::size_t>(inv[2])];
    out(static_cast<std::size_t>(dst), static_cast<std::size_t>(src)) = 1.0;
  }
  return out;
}

// --- Schur-structured operator builders -------------------------------------
//
// Three-qubit Schur index layout (see schur_transform(3)):
//   0..3  s=3/2 block
//   4,5   s=1/2, path |1>, spin m = +1/2, -1/2
//   6,7   s=1/2, path |0>, spin m = +1/2, -1/2
// Path operators are 2x2 in the basis order {|1>, |0>}.

/// Rank-one path operator (c1|1> + c0|0>)(c1|1> + c0|0>)^dag.
inline ComplexMatrix path_outer(Complex c1, Complex c0) {
  ComplexMatrix v(2, 2);
  v(0, 0) = c1 * std::conj(c1);
  v(0, 1) = c1 * std::conj(c0);
  v(1, 0) = c0 * std::conj(c1);
  v(1, 1) = c0 * std::conj(c0);
  return v;
}

/// 8x8 Schur-basis operator  spin32_coeff * I_{3/2}  (+)  path_op (x) I_{1/2}.
inline ComplexMatrix schur_block_operator(double spin32_coeff, const ComplexMatrix& path_op) {
  if (path_op.rows() != 2 || path_op.cols() != 2)
    throw DimensionError("path operator must be 2x2");
  ComplexMatrix out(8, 8);
  for (std::size_t i = 0; i < 4; ++i) out(i, i) = spin32_coeff;
  for (std::size_t p = 0; p < 2; ++p)
    for (std::size_t q = 0; q < 2; ++q)
      for (std::size_t s = 0; s < 2; ++s) out(4 + 2 * p + s, 4 + 2 * q + s) = path_op(p, q);
  return out;
}

/// 4x4 two-qubit Schur-basis operator t*P_triplet + s*P_singlet.
inline ComplexMatrix two_qubit_schur_diagonal(double triplet, double singlet) {
  ComplexMatrix out(4, 4);
  out(0, 0) = out(1, 1) = out(2, 2) = triplet;
  out(3, 3) = singlet;
  return out;
}

}  // namespace sqc
