#pragma once

// Shared test fixtures: seeded random contractions with prescribed defect
// structure, random isotropic subspaces, and the handful of closed-form
// operators the anchors are frozen against.

#include "cmod/contraction.hpp"
#include "cmod/symplectic.hpp"

#include <random>

namespace cmod::testing {

// Contraction with exactly `unit` singular values equal to 1; the rest lie in
// [0.2, 0.9]. Retries until the result is c.n.u. (generic on the first try).
inline Matrix random_cnu(Index n, Index unit, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> sig(0.2, 0.9);
  for (int attempt = 0; attempt < 50; ++attempt) {
    RealVector s(n);
    for (Index i = 0; i < n; ++i) s(i) = i < unit ? 1.0 : sig(rng);
    Matrix T = random_unitary(n, rng) * s.asDiagonal().toDenseMatrix().cast<Complex>() *
               random_unitary(n, rng);
    if (cnu_split(T).first.rank() == 0) return T;
  }
  throw std::runtime_error("random_cnu: could not generate a c.n.u. contraction");
}

// Mixed population: roughly half with a nontrivial unitary map part.
inline Matrix random_cnu(Index n, std::mt19937_64& rng) {
  std::uniform_int_distribution<Index> unit(0, n - 1);
  return random_cnu(n, n > 1 ? unit(rng) : 0, rng);
}

// Isotropic subspace of the given rank in standard(n_plus, n_minus):
// span{(v e_i, u e_i)} for random isometries v, u into the two legs.
inline Subspace random_isotropic(const SymplecticSpace& space, Index rank,
                                 std::mt19937_64& rng) {
  const Index np = space.signature.n_plus, nm = space.signature.n_minus;
  Matrix v = random_unitary(np, rng).leftCols(rank);
  Matrix u = random_unitary(nm, rng).leftCols(rank);
  Matrix frame = Matrix::Zero(np + nm, rank);
  frame.topRows(np) = v / std::sqrt(2.0);
  frame.bottomRows(nm) = u / std::sqrt(2.0);
  return Subspace::from_orthonormal(frame);
}

inline Matrix jordan2() {
  Matrix t = Matrix::Zero(2, 2);
  t(0, 1) = 1.0;
  return t;
}

inline Matrix scalar(Complex c) {
  Matrix t(1, 1);
  t(0, 0) = c;
  return t;
}

// B(lambda) = lambda as a realization (n_plus = n_minus = 1).
inline SchurRealization lambda_realization() {
  SchurRealization r;
  r.n_plus = r.n_minus = 1;
  r.A = Matrix::Zero(1, 1);
  r.B_in = Matrix::Identity(1, 1);
  r.C = Matrix::Identity(1, 1);
  r.D = Matrix::Zero(1, 1);
  return r;
}

// B(lambda) = lambda^2.
inline SchurRealization lambda_sq_realization() {
  SchurRealization r;
  r.n_plus = r.n_minus = 1;
  r.A = Matrix::Zero(2, 2);
  r.A(0, 1) = 1.0;
  r.B_in = Matrix::Zero(2, 1);
  r.B_in(1, 0) = 1.0;
  r.C = Matrix::Zero(1, 2);
  r.C(0, 0) = 1.0;
  r.D = Matrix::Zero(1, 1);
  return r;
}

// B(lambda) = lambda Id_n.
inline SchurRealization lambda_id_realization(Index n) {
  SchurRealization r;
  r.n_plus = r.n_minus = n;
  r.A = Matrix::Zero(n, n);
  r.B_in = Matrix::Identity(n, n);
  r.C = Matrix::Identity(n, n);
  r.D = Matrix::Zero(n, n);
  return r;
}

}  // namespace cmod::testing
