#include "cmod/contraction.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <stdexcept>

namespace cmod {

namespace {
constexpr Complex kI{0.0, 1.0};

Matrix resolvent_adj(const Matrix& T, Complex lambda, const Matrix& rhs) {
  // (Id - lambda T^*)^{-1} rhs
  Matrix m = Matrix::Identity(T.rows(), T.rows()) - lambda * T.adjoint();
  return m.partialPivLu().solve(rhs);
}

Matrix resolvent(const Matrix& T, Complex lambda, const Matrix& rhs) {
  // (Id - lambda T)^{-1} rhs
  Matrix m = Matrix::Identity(T.rows(), T.rows()) - lambda * T;
  return m.partialPivLu().solve(rhs);
}
}  // namespace

ContractionAnalysis defect_analysis(const Matrix& T, double tol) {
  if (T.rows() != T.cols() || T.rows() == 0)
    throw std::invalid_argument("defect_analysis: operator must be square and nonempty");
  const Index n = T.rows();
  Eigen::JacobiSVD<Matrix> svd(T, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RealVector& sv = svd.singularValues();
  if (sv.size() > 0 && sv(0) > 1.0 + tol)
    throw std::invalid_argument("defect_analysis: operator is not a contraction");

  std::vector<Index> unit, rest;
  for (Index i = 0; i < n; ++i)
    (std::abs(sv(i) - 1.0) <= kRankTol ? unit : rest).push_back(i);

  auto pick = [&](const Matrix& m, const std::vector<Index>& idx) {
    Matrix out(n, static_cast<Index>(idx.size()));
    for (Index j = 0; j < out.cols(); ++j) out.col(j) = m.col(idx[j]);
    return out;
  };

  ContractionAnalysis an;
  an.T = T;
  an.tol = tol;
  an.K = Subspace{pick(svd.matrixV(), unit)};
  an.K_perp = Subspace{pick(svd.matrixV(), rest)};
  an.K_star = Subspace{pick(svd.matrixU(), unit)};
  an.K_star_perp = Subspace{pick(svd.matrixU(), rest)};
  an.indices = Signature{static_cast<Index>(rest.size()), static_cast<Index>(rest.size())};

  RealVector d(n), ds(n);
  for (Index i = 0; i < n; ++i) {
    double v = std::max(0.0, 1.0 - sv(i) * sv(i));
    d(i) = ds(i) = std::sqrt(v);
  }
  an.defect = svd.matrixV() * d.asDiagonal() * svd.matrixV().adjoint();
  an.defect_star = svd.matrixU() * ds.asDiagonal() * svd.matrixU().adjoint();
  an.Dt = an.K_perp.frame.adjoint() * an.defect * an.K_perp.frame;
  an.t = an.K_star_perp.frame.adjoint() * T * an.K_perp.frame;

  an.doubled = SymplecticSpace::standard(n, n);

  const Index k = an.K.rank(), np = an.indices.n_plus;
  Matrix at(2 * n, k);
  at.topRows(n) = an.K.frame / std::sqrt(2.0);
  at.bottomRows(n) = T * an.K.frame / std::sqrt(2.0);
  an.A_T = Subspace{std::move(at)};
  Matrix q = Matrix::Zero(2 * n, np), qs = Matrix::Zero(2 * n, np);
  q.topRows(n) = an.K_perp.frame;
  qs.bottomRows(n) = an.K_star_perp.frame;
  an.Q = Subspace{std::move(q)};
  an.Q_star = Subspace{std::move(qs)};
  Matrix perp(2 * n, k + 2 * np);
  perp.leftCols(k) = an.A_T.frame;
  perp.middleCols(k, np) = an.Q.frame;
  perp.rightCols(np) = an.Q_star.frame;
  an.A_T_perp = Subspace{std::move(perp)};

  auto [uni, cnu_part] = cnu_split(T, tol);
  an.unitary_part_dim = uni.rank();
  an.cnu = uni.rank() == 0;
  (void)cnu_part;
  return an;
}

std::pair<Subspace, Subspace> cnu_split(const Matrix& T, double tol) {
  if (T.rows() != T.cols() || T.rows() == 0)
    throw std::invalid_argument("cnu_split: operator must be square and nonempty");
  const Index n = T.rows();
  if (spectral_norm(T) > 1.0 + tol)
    throw std::invalid_argument("cnu_split: operator is not a contraction");
  const Matrix id = Matrix::Identity(n, n);
  Matrix uni = id;  // running intersection
  Matrix p = id;    // T^m
  for (Index m = 1; m <= n && uni.cols() > 0; ++m) {
    p = p * T;
    // ker(Id - T^{*m}T^m) / ker(Id - T^m T^{*m}) as unit singular subspaces
    Eigen::JacobiSVD<Matrix> svd(p, Eigen::ComputeFullU | Eigen::ComputeFullV);
    std::vector<Index> unit_idx;
    for (Index i = 0; i < n; ++i)
      if (std::abs(svd.singularValues()(i) - 1.0) <= kRankTol) unit_idx.push_back(i);
    Matrix ker1(n, static_cast<Index>(unit_idx.size()));
    Matrix ker2(n, static_cast<Index>(unit_idx.size()));
    for (Index j = 0; j < ker1.cols(); ++j) {
      ker1.col(j) = svd.matrixV().col(unit_idx[j]);
      ker2.col(j) = svd.matrixU().col(unit_idx[j]);
    }
    uni = span_intersection(uni, ker1);
    if (uni.cols() > 0) uni = span_intersection(uni, ker2);
  }
  Matrix comp = null_space(uni.adjoint());
  if (uni.cols() == 0) comp = id;
  return {Subspace{std::move(uni)}, Subspace{std::move(comp)}};
}

BoundaryQuadruple canonical_quadruple(const ContractionAnalysis& an) {
  const Index n = an.dim();
  BoundaryQuadruple q;
  q.h_plus_dim = an.indices.n_plus;
  q.h_minus_dim = an.indices.n_minus;
  q.coord_frame = an.A_T_perp.frame;
  // Gamma_+ a = K_perp-coordinates of pr_1 a;  Gamma_- a = K*_perp-coordinates
  // of pr_2 a. The A_T-component contributes nothing: its halves lie in K and
  // K_* respectively.
  q.gamma_plus = an.K_perp.frame.adjoint() * q.coord_frame.topRows(n);
  q.gamma_minus = an.K_star_perp.frame.adjoint() * q.coord_frame.bottomRows(n);
  q.cnu_warning = !an.cnu;
  return q;
}

BoundaryQuadruple primed_quadruple(const ContractionAnalysis& an, double tol) {
  if (an.t.size() > 0 && an.norm_t() >= 1.0 - tol)
    throw std::invalid_argument("primed_quadruple: ||t|| too close to 1, t is not a polarization");
  const Index np = an.indices.n_plus, nm = an.indices.n_minus;
  Matrix sp = hermitian_inv_sqrt(Matrix::Identity(np, np) - an.t.adjoint() * an.t);
  Matrix sm = hermitian_inv_sqrt(Matrix::Identity(nm, nm) - an.t * an.t.adjoint());
  return transform_quadruple(canonical_quadruple(an), sp, -an.t.adjoint() * sm, an.t * sp, -sm);
}

BoundaryQuadruple transform_quadruple(const BoundaryQuadruple& q, const Matrix& m11,
                                      const Matrix& m12, const Matrix& m21, const Matrix& m22) {
  BoundaryQuadruple out;
  out.h_plus_dim = m11.rows();
  out.h_minus_dim = m21.rows();
  out.gamma_plus = m11 * q.gamma_plus + m12 * q.gamma_minus;
  out.gamma_minus = m21 * q.gamma_plus + m22 * q.gamma_minus;
  out.coord_frame = q.coord_frame;
  out.cnu_warning = q.cnu_warning;
  return out;
}

DefectFiber defect_fiber(const ContractionAnalysis& an, const BoundaryQuadruple& quad,
                         DiscPoint point) {
  if (std::abs(point.coord) >= 1.0)
    throw std::invalid_argument("defect_fiber: point must lie in the open disc");
  const Index n = an.dim();
  Matrix raw(2 * n, point.plus() ? an.indices.n_plus : an.indices.n_minus);
  if (point.plus()) {
    // {((Id - lambda T^*)^{-1} f, lambda (Id - lambda T^*)^{-1} f) : f in K_perp}
    Matrix r = resolvent_adj(an.T, point.coord, an.K_perp.frame);
    raw.topRows(n) = r;
    raw.bottomRows(n) = point.coord * r;
  } else {
    // 1/lambda chart: {(lambda (Id - lambda T)^{-1} f, (Id - lambda T)^{-1} f) : f in K*_perp}
    Matrix r = resolvent(an.T, point.coord, an.K_star_perp.frame);
    raw.topRows(n) = point.coord * r;
    raw.bottomRows(n) = r;
  }
  DefectFiber fib;
  fib.point = point;
  fib.N = Subspace::from_span(raw);
  Matrix boundary = point.plus() ? quad.plus(fib.N.frame) : quad.minus(fib.N.frame);
  Eigen::FullPivLU<Matrix> lu(boundary);
  if (!lu.isInvertible())
    throw std::runtime_error("defect_fiber: boundary map is singular on the fiber");
  fib.gamma = fib.N.frame * lu.inverse();
  fib.phi = point.plus() ? fib.gamma.topRows(n) : fib.gamma.bottomRows(n);
  return fib;
}

Matrix theta(const ContractionAnalysis& an, Complex lambda) {
  if (std::abs(lambda) >= 1.0)
    throw std::invalid_argument("theta: point must lie in the open disc");
  Matrix inner = resolvent_adj(an.T, lambda, an.defect * an.K_perp.frame);
  return an.K_star_perp.frame.adjoint() * (-an.T * an.K_perp.frame + lambda * an.defect_star * inner);
}

Matrix weyl_function(const ContractionAnalysis& an, const BoundaryQuadruple& quad,
                     DiscPoint point) {
  DefectFiber fib = defect_fiber(an, quad, point);
  return point.plus() ? quad.minus(fib.gamma) : quad.plus(fib.gamma);
}

Matrix weyl_canonical_closed_form(const ContractionAnalysis& an, Complex lambda) {
  if (std::abs(lambda) >= 1.0)
    throw std::invalid_argument("weyl_canonical_closed_form: point must lie in the open disc");
  const Index np = an.indices.n_plus;
  // R(lambda) = [Dt^{-1} D (Id - lambda T^*)^{-1}]^{-1} on K_perp. At finite
  // dimension ker D = K, so Dt is invertible outright.
  Matrix res = resolvent_adj(an.T, lambda, an.K_perp.frame);
  Matrix m = an.Dt.partialPivLu().solve(an.K_perp.frame.adjoint() * an.defect * res);
  Matrix r = Matrix::Identity(np, np);
  r = m.partialPivLu().solve(r);
  Matrix rf = resolvent_adj(an.T, lambda, an.K_perp.frame * r);
  return an.t - an.K_star_perp.frame.adjoint() * (an.T * rf - lambda * rf);
}

double green_residual(const ContractionAnalysis& an, const BoundaryQuadruple& quad,
                      const Vector& a, const Vector& b) {
  Complex lhs = an.doubled.pair(a, b);
  Vector pa = quad.plus(a), pb = quad.plus(b);
  Vector ma = quad.minus(a), mb = quad.minus(b);
  Complex rhs = kI * (pb.adjoint() * pa)(0) - kI * (mb.adjoint() * ma)(0);
  return std::abs(lhs - rhs);
}

SchurRealization theta_realization(const ContractionAnalysis& an) {
  SchurRealization r;
  r.n_plus = an.indices.n_plus;
  r.n_minus = an.indices.n_minus;
  r.A = an.T.adjoint();
  r.B_in = an.defect * an.K_perp.frame;
  r.C = an.K_star_perp.frame.adjoint() * an.defect_star;
  r.D = -an.t;
  return r;
}

SchurRealization weyl_realization(const ContractionAnalysis& an, QuadrupleKind kind) {
  SchurRealization primed = theta_realization(an);
  primed.C = -primed.C;  // B'(lambda) = -Theta_T(lambda)
  primed.D = -primed.D;
  if (kind == QuadrupleKind::Primed) return primed;
  // Canonical = inverse of the primed-quadruple block transform applied to
  // the primed data. For a block pseudo-unitary [[a,b],[c,d]] the inverse w.r.t. the
  // standard form is [[a^*, -c^*],[-b^*, d^*]].
  const Index np = an.indices.n_plus, nm = an.indices.n_minus;
  Matrix sp = hermitian_inv_sqrt(Matrix::Identity(np, np) - an.t.adjoint() * an.t);
  Matrix sm = hermitian_inv_sqrt(Matrix::Identity(nm, nm) - an.t * an.t.adjoint());
  Matrix e11 = sp, e12 = -an.t.adjoint() * sm, e21 = an.t * sp, e22 = -sm;
  return mobius_realization(e11.adjoint(), -e21.adjoint(), -e12.adjoint(), e22.adjoint(), primed);
}

}  // namespace cmod
