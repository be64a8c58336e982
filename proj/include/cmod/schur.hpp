#pragma once

// Tagged points of the doubled disc, deterministic sample grids, and rational
// matrix Schur functions in transfer-function form
//     B(lambda) = D + lambda C (Id - lambda A)^{-1} B_in.
// Realizations make derivatives and divided differences exact, which is what
// the confluent kernel blocks need.

#include "cmod/linalg.hpp"

#include <cstdint>
#include <vector>

namespace cmod {

enum class Disc { Plus, Minus };

// A point of D_+ or D_-. The minus disc is the reciprocal chart of the
// exterior, so the coordinate always satisfies |coord| < 1 and 0_+ != 0_-.
struct DiscPoint {
  Complex coord;
  Disc disc;

  bool plus() const { return disc == Disc::Plus; }
  // Same coordinate conjugated, placed on the other disc.
  DiscPoint conj() const {
    return DiscPoint{std::conj(coord), plus() ? Disc::Minus : Disc::Plus};
  }

  static DiscPoint zero_plus() { return {Complex{0, 0}, Disc::Plus}; }
  static DiscPoint zero_minus() { return {Complex{0, 0}, Disc::Minus}; }
};

bool is_zero_minus(const DiscPoint& p, double tol = 0.0);

struct GridOptions {
  std::vector<double> radii{0.3, 0.6};
  int angles = 8;
  double r_max = 0.85;
  std::uint64_t seed = 0;
  bool include_zero_plus = true;
  bool include_zero_minus = true;
};

// Equispaced angles per radius per disc with a small seeded angular jitter, so
// exact conjugate coincidences between the discs cannot occur by accident.
std::vector<DiscPoint> make_grid(const GridOptions& opts);

struct SchurRealization {
  Index n_plus = 0;   // input dimension
  Index n_minus = 0;  // output dimension
  Matrix A;           // s x s state matrix, spectral radius < 1
  Matrix B_in;        // s x n_plus
  Matrix C;           // n_minus x s
  Matrix D;           // n_minus x n_plus

  Index state_dim() const { return A.rows(); }

  // B(lambda)
  Matrix eval(Complex lambda) const;
  // B(conj(lambda))^*, holomorphic in lambda; the D_- branch of the Weyl data
  Matrix eval_conj_adjoint(Complex lambda) const;
  // (B(x) - B(y)) / (x - y) = C (Id - xA)^{-1} (Id - yA)^{-1} B_in, valid
  // verbatim at x = y where it is the derivative
  Matrix divided_difference(Complex x, Complex y) const;
  Matrix derivative(Complex lambda) const { return divided_difference(lambda, lambda); }
  // derivative of lambda -> B(conj(lambda))^*
  Matrix derivative_conj_adjoint(Complex lambda) const;

  static SchurRealization constant(Matrix d);
};

// Spectral-radius check plus sampled pure-contraction validation (the Schur
// condition is pointwise on the open disc and can only be certified on a
// sample; we use a boundary-adjacent ring).
void validate_realization(const SchurRealization& r, double ring_radius = 0.99,
                          int ring_points = 64);

// sup of ||B(lambda)|| over the sample ring.
double schur_sup_sample(const SchurRealization& r, double ring_radius = 0.99,
                        int ring_points = 64);

// Transfer function of (m21 + m22 B)(m11 + m12 B)^{-1} with constant blocks;
// the state dimension is preserved.
SchurRealization mobius_realization(const Matrix& m11, const Matrix& m12, const Matrix& m21,
                                    const Matrix& m22, const SchurRealization& r);

}  // namespace cmod
