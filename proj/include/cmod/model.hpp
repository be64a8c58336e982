#pragma once

// The functional model: hat transform of vectors into sampled sections over
// the doubled disc, the explicit model operator
//   (Tf)(l) = l f(l) - (B(l) - C)(Id - B(0+)^* C)^{-1} f(0-)      on D+,
//   (Tf)(l) = [f(l) - (Id - B(conj l)^* C)(Id - B(0+)^* C)^{-1} f(0-)] / l on D-,
// graph membership for section pairs, model verification against a
// contraction, synthesis of a contraction from a marked Nevanlinna disc, and
// unitary-equivalence / congruence certificates.

#include "cmod/kernel.hpp"

#include <optional>
#include <vector>

namespace cmod {

// A section known through its values on a tagged grid. Values live in H_-
// coordinates on D+ points and H_+ coordinates on D- points (the psi_pm
// trivializations). The value at 0- drives the model operator.
struct SampledSection {
  std::vector<DiscPoint> grid;
  std::vector<Vector> values;
  Index zero_minus_index = -1;

  bool has_zero_minus() const { return zero_minus_index >= 0; }
  const Vector& at_zero_minus() const;
  double max_norm() const;
};

Index find_zero_minus(const std::vector<DiscPoint>& grid);

// f_xhat(l) = phi_-(conj l)^* x on D+ and phi_+(conj l)^* x on D-. The grid
// must contain 0-. For c.n.u. T and a generic grid with >= dim(T) points the
// map x -> section is injective.
SampledSection hat_section(const ContractionAnalysis& an, const BoundaryQuadruple& quad,
                           const Vector& x, const std::vector<DiscPoint>& grid);

struct MarkedDisc {
  SchurRealization schur;  // the disc in the coordinates of a polarization
  Matrix mark;             // pure contraction C, n_minus x n_plus
};

// Applies the model operator pointwise. 0- is dropped from the output grid
// unless the derivative of f at 0- is supplied (the D- formula divides by l;
// at 0- the bracket vanishes and the value is its derivative).
SampledSection model_apply(const SchurRealization& b, const Matrix& mark,
                           const SampledSection& f,
                           const std::optional<Vector>& f_prime_at_zero_minus = std::nullopt);

struct ModelReport {
  double max_residual_boundary = 0.0;
  double max_residual_model = 0.0;
};

// max_residual_boundary: defect of
//   l f_xhat - f_yhat = B(l) G+ a - G- a            (D+)
//   f_xhat - l f_yhat = G+ a - B(conj l)^* G- a     (D-)
// over random a in A_T^{perp_s}. max_residual_model: defect of
// model_apply(B, mark, hat x) = hat(Tx) over the basis of C^n. Residuals are
// reported, never thrown on.
ModelReport verify_model(const ContractionAnalysis& an, QuadrupleKind kind, const Matrix& mark,
                         const std::vector<DiscPoint>& grid, int n_random = 8,
                         std::uint64_t seed = 0);

enum class Membership { InHatA, InHatAPerp, Neither };

const char* to_string(Membership m);

struct MembershipResult {
  Membership verdict = Membership::Neither;
  Vector x_plus, x_minus;    // recovered boundary values for InHatAPerp
  double residual_a = 0.0;      // defect of g(l)=l f(l) / f(l)=l g(l)
  double residual_aperp = 0.0;  // least-squares defect of the boundary system
};

// Tests the pair (f,g) against hat(A_T) pointwise, then against
// hat(A_T^{perp_s}) by solving for (x+, x-) in
//   l f(l) - g(l) = B(l) x+ - x-        (D+)
//   f(l) - l g(l) = x+ - B(conj l)^* x- (D-)
// by least squares. Grids of f and g must agree and cover both discs.
MembershipResult graph_membership(const SchurRealization& b, const SampledSection& f,
                                  const SampledSection& g, double tol = 1e-9);

struct ModelOperator {
  Index dim = 0;
  Matrix matrix;  // the model operator in an orthonormal basis of the model space
  std::vector<DiscPoint> grid;
  RealVector gram_eigenvalues;  // the retained eigenvalues, descending
  Matrix basis_coefficients;    // kernel coefficients of the basis sections
  double residual = 0.0;        // least-squares defect of the operator fit
};

// Builds the model space from the Gram eigendecomposition over the grid
// (which must contain 0-), checks that the numerical rank is stable under a
// deterministic grid enrichment, and expresses the model operator in the
// eigenbasis. Throws std::runtime_error("model space not finite-dimensional
// at this scale") when the rank grows with the grid.
ModelOperator synthesize(const MarkedDisc& md, const std::vector<DiscPoint>& grid,
                         double tol = 1e-9);

enum class Equivalence { Equivalent, NotEquivalent, Inconclusive };

const char* to_string(Equivalence e);

// Numerical unitary-equivalence certificate: spectra and singular values
// within tol_spectra, traces of all words in (S, S^*) up to length 2n within
// tol_trace. Inconclusive is reserved for the band between the tolerances and
// ten times them.
Equivalence equivalence_check(const Matrix& s1, const Matrix& s2, double tol_spectra = 1e-7,
                              double tol_trace = 1e-6);

struct CongruenceData {
  Matrix u_plus;   // U restricted K1_perp -> K2_perp, in the stored frames
  Matrix u_minus;  // U restricted K1*_perp -> K2*_perp
  double max_weyl_residual = 0.0;  // sup over the grid of ||B2 - u- B1 u+^{-1}||
  double mark_residual = 0.0;      // ||t_2 - u_- t_1 u_+^{-1}||
};

// For a unitary U with U T1 U^* = T2, returns the induced congruence of the
// marked Weyl data and its verification residuals. Throws when U does not
// intertwine or is not unitary.
CongruenceData congruence_data(const ContractionAnalysis& an1, const ContractionAnalysis& an2,
                               const Matrix& U, const std::vector<DiscPoint>& grid,
                               double tol = 1e-9);

}  // namespace cmod
