#include "cmod/symplectic.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>

namespace cmod {

namespace {
constexpr Complex kI{0.0, 1.0};

Signature signature_of(const Matrix& j, double tol) {
  Matrix h = -kI * j;  // Hermitian when J is skew-adjoint
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const RealVector& d = es.eigenvalues();
  const double scale = d.size() ? d.cwiseAbs().maxCoeff() : 0.0;
  if (d.size() == 0 || d.cwiseAbs().minCoeff() < tol * scale)
    throw std::invalid_argument("symplectic form is degenerate");
  Signature sig;
  for (Index i = 0; i < d.size(); ++i) (d(i) > 0 ? sig.n_plus : sig.n_minus)++;
  return sig;
}
}  // namespace

Subspace Subspace::from_span(const Matrix& span, double rel_tol) {
  return Subspace{orthonormal_range(span, rel_tol)};
}

Subspace Subspace::from_orthonormal(Matrix frame, double tol) {
  if (frame.cols() > 0) {
    Matrix g = frame.adjoint() * frame;
    if ((g - Matrix::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff() > tol)
      throw std::invalid_argument("frame columns are not orthonormal");
  }
  return Subspace{std::move(frame)};
}

bool same_subspace(const Subspace& a, const Subspace& b, double tol) {
  if (a.ambient_dim() != b.ambient_dim() || a.rank() != b.rank()) return false;
  return max_principal_angle(a.frame, b.frame) < tol;
}

SymplecticSpace SymplecticSpace::standard(Index n_plus, Index n_minus) {
  if (n_plus + n_minus < 1) throw std::invalid_argument("zero total dimension");
  Matrix j = Matrix::Zero(n_plus + n_minus, n_plus + n_minus);
  j.topLeftCorner(n_plus, n_plus) = kI * Matrix::Identity(n_plus, n_plus);
  j.bottomRightCorner(n_minus, n_minus) = -kI * Matrix::Identity(n_minus, n_minus);
  return SymplecticSpace{std::move(j), Signature{n_plus, n_minus}};
}

SymplecticSpace SymplecticSpace::graph(Index n) {
  if (n < 1) throw std::invalid_argument("zero total dimension");
  Matrix j = Matrix::Zero(2 * n, 2 * n);
  j.topRightCorner(n, n) = Matrix::Identity(n, n);
  j.bottomLeftCorner(n, n) = -Matrix::Identity(n, n);
  return SymplecticSpace{std::move(j), Signature{n, n}};
}

SymplecticSpace SymplecticSpace::from_form(Matrix j, double tol) {
  if (j.rows() != j.cols() || j.rows() == 0)
    throw std::invalid_argument("form matrix must be square and nonempty");
  if ((j + j.adjoint()).cwiseAbs().maxCoeff() > tol * std::max(1.0, j.cwiseAbs().maxCoeff()))
    throw std::invalid_argument("form matrix is not skew-adjoint");
  Signature sig = signature_of(j, tol);
  return SymplecticSpace{std::move(j), sig};
}

SymplecticSpace direct_sum(const SymplecticSpace& a, const SymplecticSpace& b) {
  Matrix j = Matrix::Zero(a.dim() + b.dim(), a.dim() + b.dim());
  j.topLeftCorner(a.dim(), a.dim()) = a.form;
  j.bottomRightCorner(b.dim(), b.dim()) = b.form;
  return SymplecticSpace{std::move(j), Signature{a.signature.n_plus + b.signature.n_plus,
                                                 a.signature.n_minus + b.signature.n_minus}};
}

Subspace symp_complement(const SymplecticSpace& space, const Subspace& s) {
  if (s.ambient_dim() != space.dim())
    throw std::invalid_argument("symp_complement: ambient dimension mismatch");
  if (s.rank() == 0) return Subspace{Matrix::Identity(space.dim(), space.dim())};
  return Subspace{null_space(s.frame.adjoint() * space.form)};
}

const char* to_string(SubspaceClass c) {
  switch (c) {
    case SubspaceClass::Isotropic: return "isotropic";
    case SubspaceClass::MaxPositiveDefinite: return "max_pos_definite";
    case SubspaceClass::PositiveDefiniteNotMaximal: return "pos_definite_not_maximal";
    case SubspaceClass::MaxNegativeDefinite: return "max_neg_definite";
    case SubspaceClass::NegativeDefiniteNotMaximal: return "neg_definite_not_maximal";
    case SubspaceClass::Indefinite: return "indefinite";
    case SubspaceClass::Degenerate: return "degenerate";
  }
  return "?";
}

SubspaceClass classify_subspace(const SymplecticSpace& space, const Subspace& s, double tol) {
  if (s.ambient_dim() != space.dim())
    throw std::invalid_argument("classify_subspace: ambient dimension mismatch");
  if (s.rank() == 0) return SubspaceClass::Isotropic;
  Matrix h = -kI * (s.frame.adjoint() * space.form * s.frame);
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const RealVector& d = es.eigenvalues();
  Index pos = 0, neg = 0, zero = 0;
  for (Index i = 0; i < d.size(); ++i) {
    if (d(i) > tol) ++pos;
    else if (d(i) < -tol) ++neg;
    else ++zero;
  }
  if (zero == d.size()) return SubspaceClass::Isotropic;
  if (pos > 0 && neg == 0 && zero == 0)
    return s.rank() == space.signature.n_plus ? SubspaceClass::MaxPositiveDefinite
                                              : SubspaceClass::PositiveDefiniteNotMaximal;
  if (neg > 0 && pos == 0 && zero == 0)
    return s.rank() == space.signature.n_minus ? SubspaceClass::MaxNegativeDefinite
                                               : SubspaceClass::NegativeDefiniteNotMaximal;
  if (zero == 0) return SubspaceClass::Indefinite;
  return SubspaceClass::Degenerate;
}

QuotientSpace quotient(const SymplecticSpace& space, const Subspace& iso, double tol) {
  if (classify_subspace(space, iso, tol) != SubspaceClass::Isotropic)
    throw std::invalid_argument("quotient: subspace is not isotropic");
  Subspace comp = symp_complement(space, iso);
  Matrix rep;
  if (iso.rank() == 0) {
    rep = comp.frame;
  } else {
    // orthocomplement of A inside A^{perp_s}: kernel of A^* restricted to
    // comp. The overlap entries are principal-angle cosines, so the rank cut
    // is absolute on the unit scale.
    Matrix overlap = iso.frame.adjoint() * comp.frame;
    rep = comp.frame * null_space(overlap, kRankTol, kRankTol);
  }
  const Index k = iso.rank();
  Matrix jq = rep.adjoint() * space.form * rep;
  SymplecticSpace reduced =
      jq.rows() == 0
          ? SymplecticSpace{jq, Signature{0, 0}}
          : SymplecticSpace::from_form(std::move(jq));
  if (reduced.signature.n_plus != space.signature.n_plus - k ||
      reduced.signature.n_minus != space.signature.n_minus - k)
    throw std::runtime_error("quotient: unexpected signature");
  return QuotientSpace{iso, Subspace{std::move(rep)}, std::move(reduced)};
}

Vector Polarization::plus_coords(const Vector& x) const {
  return -kI * (plus_basis.adjoint() * (space.form * x));
}
Vector Polarization::minus_coords(const Vector& x) const {
  return kI * (minus_basis.adjoint() * (space.form * x));
}
Matrix Polarization::plus_coords(const Matrix& cols) const {
  return -kI * (plus_basis.adjoint() * (space.form * cols));
}
Matrix Polarization::minus_coords(const Matrix& cols) const {
  return kI * (minus_basis.adjoint() * (space.form * cols));
}

Polarization Polarization::from_plus(const SymplecticSpace& space, const Subspace& plus,
                                     double tol) {
  if (classify_subspace(space, plus, tol) != SubspaceClass::MaxPositiveDefinite)
    throw std::invalid_argument("polarization subspace is not maximal positive-definite");
  Subspace minus = symp_complement(space, plus);
  if (classify_subspace(space, minus, tol) != SubspaceClass::MaxNegativeDefinite)
    throw std::runtime_error("polarization complement is not maximal negative-definite");
  // form-orthonormalize the frames
  Matrix gp = -kI * (plus.frame.adjoint() * space.form * plus.frame);
  Matrix gm = kI * (minus.frame.adjoint() * space.form * minus.frame);
  Matrix pb = plus.frame * hermitian_inv_sqrt(gp);
  Matrix mb = minus.frame * hermitian_inv_sqrt(gm);
  return Polarization{space, plus, minus, std::move(pb), std::move(mb)};
}

Polarization Polarization::standard(const SymplecticSpace& space, double tol) {
  const Index np = space.signature.n_plus;
  Matrix frame = Matrix::Identity(space.dim(), space.dim()).leftCols(np);
  return from_plus(space, Subspace{std::move(frame)}, tol);
}

Subspace graph_of_param(const Polarization& pol, const Matrix& b) {
  if (b.rows() != pol.n_minus() || b.cols() != pol.n_plus())
    throw std::invalid_argument("graph_of_param: parameter shape mismatch");
  if (b.size() > 0 && spectral_norm(b) >= 1.0)
    throw std::invalid_argument("graph_of_param: parameter is not a strict contraction");
  return Subspace::from_span(pol.plus_basis + pol.minus_basis * b);
}

Matrix graph_param_of(const Polarization& pol, const Subspace& w) {
  SubspaceClass c = classify_subspace(pol.space, w);
  if (c != SubspaceClass::MaxPositiveDefinite && c != SubspaceClass::PositiveDefiniteNotMaximal)
    throw std::invalid_argument("graph_param_of: subspace is not positive-definite");
  if (w.rank() != pol.n_plus())
    throw std::invalid_argument("graph_param_of: subspace is not maximal");
  Matrix a = pol.plus_coords(w.frame);
  Matrix bm = pol.minus_coords(w.frame);
  return bm * a.inverse();
}

PseudoUnitary pseudo_unitary_of_contraction(const Polarization& pol, const Matrix& b) {
  if (b.size() > 0 && spectral_norm(b) >= 1.0)
    throw std::invalid_argument("pseudo_unitary_of_contraction: ||B|| >= 1");
  const Index np = pol.n_plus(), nm = pol.n_minus();
  Matrix sp = hermitian_inv_sqrt(Matrix::Identity(np, np) - b.adjoint() * b);
  Matrix sm = hermitian_inv_sqrt(Matrix::Identity(nm, nm) - b * b.adjoint());
  Matrix blocks(np + nm, np + nm);
  blocks.topLeftCorner(np, np) = sp;
  blocks.topRightCorner(np, nm) = -b.adjoint() * sm;
  blocks.bottomLeftCorner(nm, np) = b * sp;
  blocks.bottomRightCorner(nm, nm) = -sm;
  // conjugate into ambient coordinates: columns of [P M] are the polarization basis
  Matrix basis(pol.space.dim(), np + nm);
  basis.leftCols(np) = pol.plus_basis;
  basis.rightCols(nm) = pol.minus_basis;
  Matrix ambient = basis * blocks * basis.inverse();
  return PseudoUnitary{std::move(ambient)};
}

Matrix mobius_apply(const PseudoUnitary& m, const Polarization& pol, const Matrix& b) {
  const Index np = pol.n_plus(), nm = pol.n_minus();
  if (b.rows() != nm || b.cols() != np)
    throw std::invalid_argument("mobius_apply: parameter shape mismatch");
  Matrix image = m.matrix * (pol.plus_basis + pol.minus_basis * b);
  Matrix denom = pol.plus_coords(image);
  Matrix numer = pol.minus_coords(image);
  Eigen::FullPivLU<Matrix> lu(denom);
  if (!lu.isInvertible())
    throw std::runtime_error("mobius_apply: image is not a graph over the polarization");
  return numer * lu.inverse();
}

Matrix cayley_matrix(Index n) {
  const double s = 1.0 / std::sqrt(2.0);
  Matrix beta = Matrix::Zero(2 * n, 2 * n);
  beta.topLeftCorner(n, n) = kI * s * Matrix::Identity(n, n);
  beta.topRightCorner(n, n) = s * Matrix::Identity(n, n);
  beta.bottomLeftCorner(n, n) = -kI * s * Matrix::Identity(n, n);
  beta.bottomRightCorner(n, n) = s * Matrix::Identity(n, n);
  return beta;
}

Vector cayley(const Vector& v) {
  if (v.size() % 2 != 0) throw std::invalid_argument("cayley: odd ambient dimension");
  return cayley_matrix(v.size() / 2) * v;
}

Subspace cayley(const Subspace& s) {
  if (s.ambient_dim() % 2 != 0) throw std::invalid_argument("cayley: odd ambient dimension");
  return Subspace::from_span(cayley_matrix(s.ambient_dim() / 2) * s.frame);
}

}  // namespace cmod
