#include "cmod/kernel.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>

namespace cmod {

namespace {
constexpr Complex kI{0.0, 1.0};

void check_in_disc(const DiscPoint& p) {
  if (std::abs(p.coord) >= 1.0)
    throw std::invalid_argument("kernel: point must lie in the open disc");
}

// Trivializing frame of F'_p = E_{conj p} inside C^{n+ + n-}:
//   p in D+:  x in H- -> (B(p)^* x, x)
//   p in D-:  x in H+ -> (x, B(conj p) x)
Matrix conj_fiber_frame(const SchurRealization& b, const DiscPoint& p) {
  const Index np = b.n_plus, nm = b.n_minus;
  Matrix f(np + nm, p.plus() ? nm : np);
  if (p.plus()) {
    f.topRows(np) = b.eval(p.coord).adjoint();
    f.bottomRows(nm) = Matrix::Identity(nm, nm);
  } else {
    f.topRows(np) = Matrix::Identity(np, np);
    f.bottomRows(nm) = b.eval(std::conj(p.coord));
  }
  return f;
}

// Localized Q(p,q): project the F'_q frame onto F'_p along F'_{conj p}, then
// pair with the fiber Hermitian structure (+i[.,.] on W_- fibers, -i[.,.] on
// W_+ fibers).
Matrix oracle_q(const SchurRealization& b, const DiscPoint& p, const DiscPoint& q) {
  const Index np = b.n_plus, nm = b.n_minus;
  Matrix jform = Matrix::Zero(np + nm, np + nm);
  jform.topLeftCorner(np, np) = kI * Matrix::Identity(np, np);
  jform.bottomRightCorner(nm, nm) = -kI * Matrix::Identity(nm, nm);

  Matrix fp = conj_fiber_frame(b, p);
  Matrix fp_c = conj_fiber_frame(b, p.conj());
  Matrix fq = conj_fiber_frame(b, q);
  Matrix basis(np + nm, np + nm);
  basis.leftCols(fp.cols()) = fp;
  basis.rightCols(fp_c.cols()) = fp_c;
  Eigen::FullPivLU<Matrix> lu(basis);
  if (!lu.isInvertible())
    throw std::runtime_error("kernel oracle: fiber decomposition is singular");
  Matrix coords = lu.solve(fq);
  Matrix projected = fp * coords.topRows(fp.cols());
  const Complex sign = p.plus() ? kI : -kI;
  return sign * (fp.adjoint() * (jform * projected));
}
}  // namespace

Index fiber_dim(const SchurRealization& r, const DiscPoint& p) {
  return p.plus() ? r.n_minus : r.n_plus;
}

Matrix kernel_block(const SchurRealization& b, DiscPoint p, DiscPoint q) {
  check_in_disc(p);
  check_in_disc(q);
  const Complex l = p.coord, m = q.coord;
  if (p.plus() && q.plus())
    return (Matrix::Identity(b.n_minus, b.n_minus) - b.eval(l) * b.eval(m).adjoint()) /
           (1.0 - l * std::conj(m));
  if (!p.plus() && !q.plus())
    return (Matrix::Identity(b.n_plus, b.n_plus) -
            b.eval(std::conj(l)).adjoint() * b.eval(std::conj(m))) /
           (1.0 - l * std::conj(m));
  if (p.plus() && !q.plus())
    // (B(l) - B(conj m))/(l - conj m), exact through the resolvent product
    return b.divided_difference(l, std::conj(m));
  // (B(conj l)^* - B(m)^*)/(l - conj m) = [(B(conj m...)] adjoint route
  return b.divided_difference(m, std::conj(l)).adjoint();
}

Matrix kernel_block(const SchurFunction& b, DiscPoint p, DiscPoint q, double confluence_tol) {
  check_in_disc(p);
  check_in_disc(q);
  const Complex l = p.coord, m = q.coord;
  if (p.plus() == q.plus()) {
    Matrix id = Matrix::Identity(p.plus() ? b.n_minus : b.n_plus, p.plus() ? b.n_minus : b.n_plus);
    if (p.plus()) return (id - b.eval(l) * b.eval(m).adjoint()) / (1.0 - l * std::conj(m));
    return (id - b.eval(std::conj(l)).adjoint() * b.eval(std::conj(m))) /
           (1.0 - l * std::conj(m));
  }
  if (std::abs(l - std::conj(m)) <= confluence_tol)
    throw std::invalid_argument("kernel_block: confluent point unsupported for sampled input");
  if (p.plus()) return (b.eval(l) - b.eval(std::conj(m))) / (l - std::conj(m));
  return (b.eval(std::conj(l)) - b.eval(m)).adjoint() / (l - std::conj(m));
}

Matrix kernel_oracle_projection(const SchurRealization& b, DiscPoint p, DiscPoint q) {
  check_in_disc(p);
  check_in_disc(q);
  const Complex l = p.coord, m = q.coord;
  Matrix qq = oracle_q(b, p, q);
  if (p.plus() == q.plus()) return qq / (1.0 - l * std::conj(m));
  if (std::abs(l - std::conj(m)) == 0.0)
    throw std::invalid_argument("kernel_oracle_projection: confluent cross-disc point");
  return -qq / (l - std::conj(m));
}

Matrix kernel_oracle_sections(const ContractionAnalysis& an, const BoundaryQuadruple& quad,
                              DiscPoint p, DiscPoint q) {
  Matrix psi_p = defect_fiber(an, quad, p.conj()).phi;
  Matrix psi_q = defect_fiber(an, quad, q.conj()).phi;
  return psi_p.adjoint() * psi_q;
}

Index GramMatrix::rank(double rel_tol) const {
  if (eigenvalues.size() == 0) return 0;
  const double cut = rel_tol * std::max(0.0, eigenvalues.maxCoeff());
  Index r = 0;
  for (Index i = 0; i < eigenvalues.size(); ++i)
    if (eigenvalues(i) > cut) ++r;
  return r;
}

GramMatrix gram_assemble(const SchurRealization& b, const std::vector<DiscPoint>& grid,
                         double hermiticity_tol) {
  if (grid.empty()) throw std::invalid_argument("gram_assemble: empty grid");
  GramMatrix g;
  g.grid = grid;
  g.offsets.resize(grid.size() + 1);
  g.offsets[0] = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    g.fiber_dims.push_back(fiber_dim(b, grid[i]));
    g.offsets[i + 1] = g.offsets[i] + g.fiber_dims[i];
  }
  const Index total = g.offsets.back();
  g.blocks.resize(total, total);
  for (std::size_t i = 0; i < grid.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      Matrix blk = kernel_block(b, grid[i], grid[j]);
      g.blocks.block(g.offsets[i], g.offsets[j], blk.rows(), blk.cols()) = blk;
      if (i != j)
        g.blocks.block(g.offsets[j], g.offsets[i], blk.cols(), blk.rows()) = blk.adjoint();
    }
  double asym = (g.blocks - Matrix(g.blocks.adjoint())).cwiseAbs().maxCoeff();
  if (asym > hermiticity_tol * std::max(1.0, g.blocks.cwiseAbs().maxCoeff()))
    throw std::runtime_error("gram_assemble: assembly is not Hermitian");
  g.blocks = 0.5 * (g.blocks + Matrix(g.blocks.adjoint()));
  Eigen::SelfAdjointEigenSolver<Matrix> es(g.blocks);
  g.eigenvalues = es.eigenvalues();
  g.eigenvectors = es.eigenvectors();
  return g;
}

}  // namespace cmod
