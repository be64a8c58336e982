#pragma once

// Defect and symplectic analysis of a finite-dimensional contraction T:
// defect subspaces K = ker(Id - T^*T) and K_* = ker(Id - TT^*), the c.n.u.
// splitting, the isotropic subspace A_T and its symplectic complement inside
// the doubled space C^n (+) C^n with the standard form, boundary quadruples
// satisfying the abstract Green formula, the defect fibers N_lambda with their
// gamma-fields, the characteristic function Theta_T, and contractive Weyl
// functions.

#include "cmod/schur.hpp"
#include "cmod/symplectic.hpp"

namespace cmod {

struct ContractionAnalysis {
  Matrix T;
  double tol = 1e-9;

  // frames in C^n
  Subspace K, K_perp, K_star, K_star_perp;
  Matrix defect;       // D  = (Id - T^*T)^{1/2}
  Matrix defect_star;  // D* = (Id - TT^*)^{1/2}
  Matrix Dt;           // D restricted to K_perp, in the K_perp frame
  Matrix t;            // T|K_perp : K_perp -> K*_perp, n_minus x n_plus
  Signature indices;   // (dim K_perp, dim K*_perp); equal at finite dimension

  SymplecticSpace doubled;  // standard(n, n) on C^{2n}
  Subspace A_T, Q, Q_star, A_T_perp;

  bool cnu = false;
  Index unitary_part_dim = 0;

  Index dim() const { return T.rows(); }
  double norm_t() const { return t.size() ? spectral_norm(t) : 0.0; }
};

// Throws std::invalid_argument when ||T|| > 1 + tol. Kernels are read off the
// SVD of T (singular values within kRankTol of 1), which also fixes the
// K_perp / K*_perp frames used by every matrix below.
ContractionAnalysis defect_analysis(const Matrix& T, double tol = 1e-9);

// (unitary_subspace, cnu_subspace): the largest reducing subspace on which T
// is unitary, computed as the intersection of ker(Id - T^{*m}T^m) and
// ker(Id - T^m T^{*m}) for m = 1..n, and its orthocomplement.
std::pair<Subspace, Subspace> cnu_split(const Matrix& T, double tol = 1e-9);

// Boundary maps on A_T^{perp_s}, acting on coordinates w.r.t. the stored
// A_T^{perp_s} frame. Green's formula reads
//   [a,b] = i (G+ a, G+ b) - i (G- a, G- b).
struct BoundaryQuadruple {
  Index h_plus_dim = 0;
  Index h_minus_dim = 0;
  Matrix gamma_plus;   // h_plus_dim  x dim(A_T^{perp_s})
  Matrix gamma_minus;  // h_minus_dim x dim(A_T^{perp_s})
  Matrix coord_frame;  // the A_T^{perp_s} frame the maps act through
  bool cnu_warning = false;  // set when T was not c.n.u. at construction

  // apply to ambient vectors of C^{2n}; off-subspace components are projected
  Vector plus(const Vector& a) const { return gamma_plus * (coord_frame.adjoint() * a); }
  Vector minus(const Vector& a) const { return gamma_minus * (coord_frame.adjoint() * a); }
  Matrix plus(const Matrix& cols) const { return gamma_plus * (coord_frame.adjoint() * cols); }
  Matrix minus(const Matrix& cols) const { return gamma_minus * (coord_frame.adjoint() * cols); }
};

// The canonical quadruple (K_perp, K*_perp, Gamma_pm): Gamma_+ a is the
// K_perp-component of the first half of a, Gamma_- a the K*_perp-component of
// the second half. The graph of T is {a : Gamma_- a = t Gamma_+ a}.
BoundaryQuadruple canonical_quadruple(const ContractionAnalysis& an);

// The quadruple polarized by t itself (requires ||t|| < 1):
//   G+' = (Id-t^*t)^{-1/2} G+ - t^*(Id-tt^*)^{-1/2} G-,
//   G-' = t(Id-t^*t)^{-1/2} G+ - (Id-tt^*)^{-1/2} G-.
// The graph of T becomes {a : G-' a = 0}.
BoundaryQuadruple primed_quadruple(const ContractionAnalysis& an, double tol = 1e-9);

// Composes a quadruple with a constant pseudo-unitary block matrix
// [[m11,m12],[m21,m22]] on H_+ (+) H_-.
BoundaryQuadruple transform_quadruple(const BoundaryQuadruple& q, const Matrix& m11,
                                      const Matrix& m12, const Matrix& m21, const Matrix& m22);

enum class QuadrupleKind { Canonical, Primed };

// The defect fiber N_lambda = W_lambda ∩ A_T^{perp_s} together with the
// boundary-normalized gamma-field section (Gamma_+ gamma_+ = Id on D_+,
// Gamma_- gamma_- = Id on D_-) and its projection phi into C^n.
struct DefectFiber {
  DiscPoint point;
  Subspace N;    // orthonormal frame in C^{2n}
  Matrix gamma;  // 2n x n_pm
  Matrix phi;    // n  x n_pm  (pr_1 gamma on D_+, pr_2 gamma on D_-)
};

DefectFiber defect_fiber(const ContractionAnalysis& an, const BoundaryQuadruple& quad,
                         DiscPoint point);

// Theta_T(lambda) = (-T + lambda D*(Id - lambda T^*)^{-1} D)|K_perp as a
// matrix K_perp -> K*_perp in the stored frames.
Matrix theta(const ContractionAnalysis& an, Complex lambda);

// Contractive Weyl function through the gamma-field: B(lambda) on D_+ and
// B(conj lambda)^* on D_-.
Matrix weyl_function(const ContractionAnalysis& an, const BoundaryQuadruple& quad,
                     DiscPoint point);

// Closed form of the canonical-quadruple Weyl function:
//   B(lambda) a+ = t a+ - (T - lambda)(Id - lambda T^*)^{-1} R(lambda) a+
// with R(lambda) the inverse of Dt^{-1} D (Id - lambda T^*)^{-1} on K_perp.
Matrix weyl_canonical_closed_form(const ContractionAnalysis& an, Complex lambda);

// | [a,b] - i(G+a, G+b) + i(G-a, G-b) | for ambient a, b in A_T^{perp_s}.
double green_residual(const ContractionAnalysis& an, const BoundaryQuadruple& quad,
                      const Vector& a, const Vector& b);

// Exact transfer-function realizations. theta_realization encodes Theta_T as
// (A, B_in, C, D) = (T^*, D Kp, Ksp^* D_*, -t) in the stored frames; the Weyl
// realizations follow by the constant Moebius transforms induced by the
// quadruple change.
SchurRealization theta_realization(const ContractionAnalysis& an);
SchurRealization weyl_realization(const ContractionAnalysis& an, QuadrupleKind kind);

}  // namespace cmod
