#pragma once

// Dense complex linear-algebra helpers shared by all modules: rank-revealing
// orthonormalization, null spaces, principal angles between subspaces, and
// Hermitian functional calculus. Everything is Eigen-backed and sized for
// desk-scale matrices (n <~ 100).

#include <Eigen/Dense>

#include <complex>
#include <random>

namespace cmod {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

// Relative singular-value cutoff for all rank decisions.
inline constexpr double kRankTol = 1e-8;
// Principal-angle tolerance for subspace equality.
inline constexpr double kAngleTol = 1e-9;

double spectral_norm(const Matrix& m);

// Orthonormal basis of the column span; rank cut at
// sigma > max(rel_tol * sigma_max, abs_floor).
Matrix orthonormal_range(const Matrix& m, double rel_tol = kRankTol, double abs_floor = 0.0);

// Orthonormal basis of ker(m), same cut policy. Pass an absolute floor when
// the input may be pure roundoff noise (unit-scale operands only).
Matrix null_space(const Matrix& m, double rel_tol = kRankTol, double abs_floor = 0.0);

Index numerical_rank(const Matrix& m, double rel_tol = kRankTol);

// Largest principal angle between the column spans of two orthonormal frames.
// Returns pi/2 when the ranks differ.
double max_principal_angle(const Matrix& a, const Matrix& b);

// Orthonormal frame of span(a) ∩ span(b); inputs must have orthonormal columns.
Matrix span_intersection(const Matrix& a, const Matrix& b, double rel_tol = kRankTol);

// Hermitian square root with negative eigenvalues clamped to zero.
Matrix hermitian_sqrt(const Matrix& m);

// Inverse Hermitian square root; throws std::runtime_error unless m is
// positive definite relative to rel_tol.
Matrix hermitian_inv_sqrt(const Matrix& m, double rel_tol = 1e-12);

// iid complex standard Gaussian entries.
Matrix random_matrix(Index rows, Index cols, std::mt19937_64& rng);

// Haar-distributed unitary (QR of a Ginibre matrix with phase fix).
Matrix random_unitary(Index n, std::mt19937_64& rng);

}  // namespace cmod
