#include "cmod/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>
#include <stdexcept>

namespace cmod {

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return m.jacobiSvd().singularValues()(0);
}

Matrix orthonormal_range(const Matrix& m, double rel_tol, double abs_floor) {
  if (m.cols() == 0 || m.rows() == 0) return Matrix(m.rows(), 0);
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  const double cut = std::max(rel_tol * sv(0), abs_floor);
  Index r = 0;
  while (r < sv.size() && sv(r) > cut && sv(r) > 0.0) ++r;
  return svd.matrixU().leftCols(r);
}

Matrix null_space(const Matrix& m, double rel_tol, double abs_floor) {
  if (m.rows() == 0 || m.cols() == 0) return Matrix::Identity(m.cols(), m.cols());
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cut = std::max(rel_tol * sv(0), abs_floor);
  Index r = 0;
  while (r < sv.size() && sv(r) > cut && sv(r) > 0.0) ++r;
  return svd.matrixV().rightCols(m.cols() - r);
}

Index numerical_rank(const Matrix& m, double rel_tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& sv = svd.singularValues();
  const double cut = rel_tol * sv(0);
  Index r = 0;
  while (r < sv.size() && sv(r) > cut && sv(r) > 0.0) ++r;
  return r;
}

double max_principal_angle(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) return M_PI / 2.0;
  if (a.cols() == 0) return 0.0;
  // cosines of the principal angles are the singular values of a^* b
  Eigen::JacobiSVD<Matrix> svd(a.adjoint() * b);
  double c = svd.singularValues().minCoeff();
  c = std::min(1.0, std::max(-1.0, c));
  if (c < 0.7) return std::acos(c);
  // small angles: the cosine route bottoms out at sqrt(eps); the singular
  // values of (Id - aa^*) b are the sines and stay accurate near zero
  double s = spectral_norm(b - a * (a.adjoint() * b));
  return std::asin(std::min(1.0, std::max(0.0, s)));
}

Matrix span_intersection(const Matrix& a, const Matrix& b, double rel_tol) {
  const Index n = a.rows();
  if (a.cols() == 0 || b.cols() == 0) return Matrix(n, 0);
  // x in both spans iff x is annihilated by both orthogonal projectors' complements
  Matrix stacked(2 * n, n);
  stacked.topRows(n) = Matrix::Identity(n, n) - a * a.adjoint();
  stacked.bottomRows(n) = Matrix::Identity(n, n) - b * b.adjoint();
  Eigen::JacobiSVD<Matrix> svd(stacked, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  // absolute cut: projector deficits are O(1), intersection directions give
  // singular values at roundoff level
  Index r = 0;
  while (r < sv.size() && sv(r) > rel_tol) ++r;
  return svd.matrixV().rightCols(n - r);
}

Matrix hermitian_sqrt(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  RealVector d = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
}

Matrix hermitian_inv_sqrt(const Matrix& m, double rel_tol) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  const RealVector& d = es.eigenvalues();
  if (d.size() == 0) return m;
  const double floor = rel_tol * std::max(1.0, d.maxCoeff());
  if (d.minCoeff() <= floor)
    throw std::runtime_error("hermitian_inv_sqrt: operand not positive definite");
  RealVector di = d.cwiseSqrt().cwiseInverse();
  return es.eigenvectors() * di.asDiagonal() * es.eigenvectors().adjoint();
}

Matrix random_matrix(Index rows, Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = Complex(g(rng), g(rng)) / std::sqrt(2.0);
  return m;
}

Matrix random_unitary(Index n, std::mt19937_64& rng) {
  Matrix g = random_matrix(n, n, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // fix phases so the distribution is Haar
  for (Index j = 0; j < n; ++j) {
    Complex d = r(j, j);
    q.col(j) *= d / std::abs(d);
  }
  return q;
}

}  // namespace cmod
