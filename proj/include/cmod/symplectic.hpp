#pragma once

// Finite-dimensional strong symplectic Hilbert spaces. The form is stored as a
// matrix J with [u,v] = v^* J u (linear in u, conjugate-linear in v); -iJ is a
// nondegenerate Hermitian matrix whose inertia is the signature. On top of the
// spaces: subspace classification, symplectic complements, quotients by
// isotropic subspaces, the graph parameterization of maximal positive-definite
// subspaces, the pseudo-unitary Moebius action, and the Cayley transform
// between the graph form and the standard form on H (+) H.

#include "cmod/linalg.hpp"

namespace cmod {

// A subspace held as a Euclidean-orthonormal frame. Frame choice is not
// canonical; comparisons go through principal angles.
struct Subspace {
  Matrix frame;

  Index ambient_dim() const { return frame.rows(); }
  Index rank() const { return frame.cols(); }

  static Subspace zero(Index ambient) { return Subspace{Matrix(ambient, 0)}; }
  // Orthonormalizes the column span.
  static Subspace from_span(const Matrix& span, double rel_tol = kRankTol);
  // Validates frame^* frame = Id.
  static Subspace from_orthonormal(Matrix frame, double tol = 1e-10);
};

bool same_subspace(const Subspace& a, const Subspace& b, double tol = kAngleTol);

struct Signature {
  Index n_plus = 0;
  Index n_minus = 0;
  bool operator==(const Signature&) const = default;
};

struct SymplecticSpace {
  Matrix form;  // J
  Signature signature;

  Index dim() const { return form.rows(); }
  Complex pair(const Vector& u, const Vector& v) const { return (v.adjoint() * form * u)(0); }

  // [x,y]_st = i(x1,y1) - i(x2,y2) on C^{n+} (+) C^{n-}:  J = diag(i,..,i,-i,..,-i)
  static SymplecticSpace standard(Index n_plus, Index n_minus);
  // [(x1,y1),(x2,y2)]_new = (y1,x2) - (x1,y2) on C^n (+) C^n:  J = [[0,I],[-I,0]]
  static SymplecticSpace graph(Index n);
  // Validates skew-adjointness and nondegeneracy, computes the signature.
  static SymplecticSpace from_form(Matrix j, double tol = 1e-12);
};

SymplecticSpace direct_sum(const SymplecticSpace& a, const SymplecticSpace& b);

// {x : [x,y] = 0 for all y in s} = ker(frame^* J).
Subspace symp_complement(const SymplecticSpace& space, const Subspace& s);

enum class SubspaceClass {
  Isotropic,
  MaxPositiveDefinite,
  PositiveDefiniteNotMaximal,
  MaxNegativeDefinite,
  NegativeDefiniteNotMaximal,
  Indefinite,
  Degenerate,  // singular compressed form, but not totally isotropic
};

const char* to_string(SubspaceClass c);

// Classifies from the eigenvalues of the compressed Hermitian form
// -i frame^* J frame. At finite dimension maximal definite subspaces are
// automatically maximally *completely* definite, so the verdict collapses the
// two notions.
SubspaceClass classify_subspace(const SymplecticSpace& space, const Subspace& s,
                                double tol = 1e-10);

// A^{perp_s}/A presented on concrete representatives: the Euclidean
// orthocomplement of A inside A^{perp_s}.
struct QuotientSpace {
  Subspace iso;        // A
  Subspace rep_frame;  // frame of the chosen representatives
  SymplecticSpace reduced;  // induced form on rep_frame coordinates

  // Coordinates of [x] for x in A^{perp_s}.
  Vector project(const Vector& x) const { return rep_frame.frame.adjoint() * x; }
  Matrix project(const Matrix& cols) const { return rep_frame.frame.adjoint() * cols; }
};

QuotientSpace quotient(const SymplecticSpace& space, const Subspace& iso,
                       double tol = 1e-10);

// A polarization L (maximal completely positive-definite) together with
// L^{perp_s}. Besides the Euclidean frames we keep form-orthonormal bases:
// -i P^* J P = Id on L and +i M^* J M = Id on L^{perp_s}, so that graph
// parameters B are matrices w.r.t. the (.,.)_+/(.,.)_- inner products and the
// matrix adjoint agrees with the form adjoint.
struct Polarization {
  SymplecticSpace space;
  Subspace plus;
  Subspace minus;
  Matrix plus_basis;
  Matrix minus_basis;

  Index n_plus() const { return plus_basis.cols(); }
  Index n_minus() const { return minus_basis.cols(); }
  // Coordinates of the L / L^{perp_s} parts of an ambient vector.
  Vector plus_coords(const Vector& x) const;
  Vector minus_coords(const Vector& x) const;
  Matrix plus_coords(const Matrix& cols) const;
  Matrix minus_coords(const Matrix& cols) const;

  static Polarization from_plus(const SymplecticSpace& space, const Subspace& plus,
                                double tol = 1e-10);
  // Polarization by the first n_plus coordinate directions; valid for spaces
  // in standard form.
  static Polarization standard(const SymplecticSpace& space, double tol = 1e-10);
};

// W = {x + Bx : x in L} for a pure contraction B (n_minus x n_plus).
Subspace graph_of_param(const Polarization& pol, const Matrix& b);
// Inverse: the graph coordinate of a maximal positive-definite subspace.
Matrix graph_param_of(const Polarization& pol, const Subspace& w);

struct PseudoUnitary {
  Matrix matrix;  // ambient dim x dim, satisfies M^* J M = J
};

// The block operator [[(Id-B^*B)^{-1/2}, -B^*(Id-BB^*)^{-1/2}],
//                     [B(Id-B^*B)^{-1/2}, -(Id-BB^*)^{-1/2}]]
// w.r.t. the polarization, as an ambient matrix. Moves L to the graph of B.
PseudoUnitary pseudo_unitary_of_contraction(const Polarization& pol, const Matrix& b);

// Graph parameter of M . graph_of_param(B):
// B' = (M21 + M22 B)(M11 + M12 B)^{-1}. Throws when the image is not a graph.
Matrix mobius_apply(const PseudoUnitary& m, const Polarization& pol, const Matrix& b);

// Cayley transform beta(x,y) = ((y+ix)/sqrt2, (y-ix)/sqrt2) as a 2n x 2n
// matrix: a symplectic isomorphism graph(n) -> standard(n,n).
Matrix cayley_matrix(Index n);
Vector cayley(const Vector& v);
Subspace cayley(const Subspace& s);

}  // namespace cmod
