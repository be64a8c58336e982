#pragma once

// The four-block reproducing kernel over the doubled disc,
//   K(l,m) = (Id - B(l)B(m)^*) / (1 - l conj(m))          on D+ x D+,
//   K(l,m) = (Id - B(conj l)^* B(conj m)) / (1 - l conj(m)) on D- x D-,
//   K(l,m) = (B(l) - B(conj m)) / (l - conj(m))            on D+ x D-,
//   K(l,m) = (B(conj l)^* - B(m)^*) / (l - conj(m))        on D- x D+,
// plus two independent oracles for it: the projection construction on the
// ambient symplectic space, and ambient inner products of gamma-field
// sections of a contraction. Gram assembly over sample grids with cached
// eigenstructure closes the module.

#include "cmod/contraction.hpp"
#include "cmod/schur.hpp"

#include <functional>
#include <vector>

namespace cmod {

// A Schur function known only through evaluations; enough for everything
// except exact confluent cross-disc points.
struct SchurFunction {
  Index n_plus = 0;
  Index n_minus = 0;
  std::function<Matrix(Complex)> eval;
};

// Output/input block dims at a point: n_minus on D+, n_plus on D-.
Index fiber_dim(const SchurRealization& r, const DiscPoint& p);

// Closed-form kernel block. The realization variant evaluates the cross-disc
// cases through the exact divided difference C(Id-lA)^{-1}(Id-conj(m)A)^{-1}B_in,
// so the confluent limit l = conj(m) costs nothing.
Matrix kernel_block(const SchurRealization& b, DiscPoint p, DiscPoint q);

// Sampled-evaluator variant; throws std::invalid_argument on a confluent
// cross-disc pair ("confluent point unsupported for sampled input").
Matrix kernel_block(const SchurFunction& b, DiscPoint p, DiscPoint q,
                    double confluence_tol = 1e-12);

// Projection-definition oracle. The realization is read as a Nevanlinna disc
// in the standard space C^{n+} (+) C^{n-}; the block is computed from the
// decomposition H = F'_p (+) F'_{conj p} and the fiber Hermitian structure,
// with Szegoe/difference denominators applied afterwards. Independent of the
// case table above. Throws on exact cross-disc confluence.
Matrix kernel_oracle_projection(const SchurRealization& b, DiscPoint p, DiscPoint q);

// Inner-product oracle: K(p,q) = Psi(p)^* Psi(q) where Psi(r) is the
// phi-section of the defect fiber at conj(r). Fully independent of any
// realization; requires the quadruple that normalizes the gamma-fields.
Matrix kernel_oracle_sections(const ContractionAnalysis& an, const BoundaryQuadruple& quad,
                              DiscPoint p, DiscPoint q);

struct GramMatrix {
  std::vector<DiscPoint> grid;
  std::vector<Index> fiber_dims;
  std::vector<Index> offsets;  // block start indices; size grid.size() + 1
  Matrix blocks;               // assembled Hermitian matrix
  RealVector eigenvalues;      // ascending
  Matrix eigenvectors;

  Index total_dim() const { return offsets.empty() ? 0 : offsets.back(); }
  Index rank(double rel_tol = kRankTol) const;
  double min_eigenvalue() const { return eigenvalues.size() ? eigenvalues(0) : 0.0; }
  double norm() const { return eigenvalues.size() ? eigenvalues.cwiseAbs().maxCoeff() : 0.0; }
};

// Assembles all K(p_i, p_j) blocks, symmetrizes, and caches the
// eigendecomposition. Throws when the assembly is non-Hermitian beyond tol.
GramMatrix gram_assemble(const SchurRealization& b, const std::vector<DiscPoint>& grid,
                         double hermiticity_tol = 1e-10);

}  // namespace cmod
