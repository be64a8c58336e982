#include "cmod/schur.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <random>
#include <stdexcept>

namespace cmod {

bool is_zero_minus(const DiscPoint& p, double tol) {
  return p.disc == Disc::Minus && std::abs(p.coord) <= tol;
}

std::vector<DiscPoint> make_grid(const GridOptions& opts) {
  if (opts.angles < 1) throw std::invalid_argument("make_grid: needs at least one angle");
  if (opts.r_max >= 1.0) throw std::invalid_argument("make_grid: r_max must be < 1");
  for (double r : opts.radii)
    if (r <= 0.0 || r > opts.r_max)
      throw std::invalid_argument("make_grid: radii must lie in (0, r_max]");
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  std::vector<DiscPoint> grid;
  if (opts.include_zero_plus) grid.push_back(DiscPoint::zero_plus());
  if (opts.include_zero_minus) grid.push_back(DiscPoint::zero_minus());
  for (Disc disc : {Disc::Plus, Disc::Minus}) {
    for (double r : opts.radii) {
      const double offset = u(rng) * 2.0 * M_PI / opts.angles;
      for (int k = 0; k < opts.angles; ++k) {
        const double phi = offset + 2.0 * M_PI * k / opts.angles;
        grid.push_back(DiscPoint{std::polar(r, phi), disc});
      }
    }
  }
  return grid;
}

Matrix SchurRealization::eval(Complex lambda) const {
  if (state_dim() == 0) return D;
  Matrix res = Matrix::Identity(state_dim(), state_dim()) - lambda * A;
  return D + lambda * C * res.partialPivLu().solve(B_in);
}

Matrix SchurRealization::eval_conj_adjoint(Complex lambda) const {
  if (state_dim() == 0) return D.adjoint();
  Matrix res = Matrix::Identity(state_dim(), state_dim()) - lambda * A.adjoint();
  return D.adjoint() + lambda * B_in.adjoint() * res.partialPivLu().solve(C.adjoint());
}

Matrix SchurRealization::divided_difference(Complex x, Complex y) const {
  if (state_dim() == 0) return Matrix::Zero(n_minus, n_plus);
  const Matrix id = Matrix::Identity(state_dim(), state_dim());
  Matrix rx = (id - x * A).partialPivLu().solve(B_in);
  return C * (id - y * A).partialPivLu().solve(rx);
}

Matrix SchurRealization::derivative_conj_adjoint(Complex lambda) const {
  // d/dlambda [D^* + lambda B^*(I - lambda A^*)^{-1} C^*]
  if (state_dim() == 0) return Matrix::Zero(n_plus, n_minus);
  const Matrix id = Matrix::Identity(state_dim(), state_dim());
  Matrix rc = (id - lambda * A.adjoint()).partialPivLu().solve(C.adjoint());
  return B_in.adjoint() * (id - lambda * A.adjoint()).partialPivLu().solve(rc);
}

SchurRealization SchurRealization::constant(Matrix d) {
  SchurRealization r;
  r.n_minus = d.rows();
  r.n_plus = d.cols();
  r.A = Matrix(0, 0);
  r.B_in = Matrix(0, r.n_plus);
  r.C = Matrix(r.n_minus, 0);
  r.D = std::move(d);
  return r;
}

double schur_sup_sample(const SchurRealization& r, double ring_radius, int ring_points) {
  double sup = 0.0;
  for (int k = 0; k < ring_points; ++k) {
    Complex lambda = std::polar(ring_radius, 2.0 * M_PI * k / ring_points);
    sup = std::max(sup, spectral_norm(r.eval(lambda)));
  }
  return sup;
}

void validate_realization(const SchurRealization& r, double ring_radius, int ring_points) {
  if (r.B_in.cols() != r.n_plus || r.C.rows() != r.n_minus || r.D.rows() != r.n_minus ||
      r.D.cols() != r.n_plus || r.A.rows() != r.A.cols() || r.B_in.rows() != r.A.rows() ||
      r.C.cols() != r.A.rows())
    throw std::invalid_argument("realization: inconsistent shapes");
  if (r.state_dim() > 0) {
    double rho = r.A.eigenvalues().cwiseAbs().maxCoeff();
    if (rho >= 1.0)
      throw std::invalid_argument("realization: state matrix has spectral radius >= 1");
  }
  if (schur_sup_sample(r, ring_radius, ring_points) >= 1.0)
    throw std::invalid_argument("realization: not a pure contraction on the sample ring");
}

SchurRealization mobius_realization(const Matrix& m11, const Matrix& m12, const Matrix& m21,
                                    const Matrix& m22, const SchurRealization& r) {
  // F = m21 + m22 B, G = m11 + m12 B; the transfer function of F G^{-1} is
  //   A~ = A - B_in Dg^{-1} Cg,  B~ = B_in Dg^{-1},
  //   C~ = Cf - Df Dg^{-1} Cg,   D~ = Df Dg^{-1},
  // with Dg = m11 + m12 D, Cg = m12 C, Df = m21 + m22 D, Cf = m22 C.
  Matrix dg = m11 + m12 * r.D;
  Eigen::FullPivLU<Matrix> lu(dg);
  if (!lu.isInvertible())
    throw std::runtime_error("mobius_realization: denominator block singular at 0");
  Matrix dgi = lu.inverse();
  Matrix cg = m12 * r.C;
  Matrix df = m21 + m22 * r.D;
  Matrix cf = m22 * r.C;
  SchurRealization out;
  out.n_plus = r.n_plus;
  out.n_minus = m21.rows();
  out.A = r.A - r.B_in * dgi * cg;
  out.B_in = r.B_in * dgi;
  out.C = cf - df * dgi * cg;
  out.D = df * dgi;
  return out;
}

}  // namespace cmod
