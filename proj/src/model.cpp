#include "cmod/model.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace cmod {

namespace {
constexpr Complex kI{0.0, 1.0};

double vec_norm(const Vector& v) { return v.size() ? v.norm() : 0.0; }

// Gram-eigenbasis section values: column k holds the stacked grid values of
// the k-th orthonormal basis section.
struct GramBasis {
  RealVector eigenvalues;  // descending, retained ones
  Matrix coefficients;     // kernel coefficients, total x m
  Matrix values;           // stacked section values, total x m
};

GramBasis gram_basis(const GramMatrix& g, double rel_cut) {
  const Index total = g.total_dim();
  const double cut = rel_cut * std::max(0.0, g.eigenvalues.maxCoeff());
  std::vector<Index> keep;
  for (Index i = g.eigenvalues.size() - 1; i >= 0; --i)
    if (g.eigenvalues(i) > cut) keep.push_back(i);
  GramBasis basis;
  basis.eigenvalues.resize(static_cast<Index>(keep.size()));
  basis.coefficients.resize(total, static_cast<Index>(keep.size()));
  basis.values.resize(total, static_cast<Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k) {
    const double ev = g.eigenvalues(keep[k]);
    basis.eigenvalues(k) = ev;
    basis.coefficients.col(k) = g.eigenvectors.col(keep[k]) / std::sqrt(ev);
    basis.values.col(k) = std::sqrt(ev) * g.eigenvectors.col(keep[k]);
  }
  return basis;
}

SampledSection section_from_stacked(const GramMatrix& g, const Vector& stacked) {
  SampledSection s;
  s.grid = g.grid;
  for (std::size_t i = 0; i < g.grid.size(); ++i)
    s.values.push_back(stacked.segment(g.offsets[i], g.fiber_dims[i]));
  s.zero_minus_index = find_zero_minus(s.grid);
  return s;
}
}  // namespace

const Vector& SampledSection::at_zero_minus() const {
  if (!has_zero_minus()) throw std::invalid_argument("section grid is missing 0-");
  return values[static_cast<std::size_t>(zero_minus_index)];
}

double SampledSection::max_norm() const {
  double m = 0.0;
  for (const auto& v : values) m = std::max(m, vec_norm(v));
  return m;
}

Index find_zero_minus(const std::vector<DiscPoint>& grid) {
  for (std::size_t i = 0; i < grid.size(); ++i)
    if (is_zero_minus(grid[i])) return static_cast<Index>(i);
  return -1;
}

SampledSection hat_section(const ContractionAnalysis& an, const BoundaryQuadruple& quad,
                           const Vector& x, const std::vector<DiscPoint>& grid) {
  if (find_zero_minus(grid) < 0)
    throw std::invalid_argument("hat_section: grid is missing 0-");
  SampledSection s;
  s.grid = grid;
  s.values.reserve(grid.size());
  for (const DiscPoint& p : grid) {
    Matrix phi = defect_fiber(an, quad, p.conj()).phi;
    s.values.push_back(phi.adjoint() * x);
  }
  s.zero_minus_index = find_zero_minus(grid);
  return s;
}

SampledSection model_apply(const SchurRealization& b, const Matrix& mark,
                           const SampledSection& f,
                           const std::optional<Vector>& f_prime_at_zero_minus) {
  if (mark.rows() != b.n_minus || mark.cols() != b.n_plus)
    throw std::invalid_argument("model_apply: mark shape mismatch");
  const Matrix b0 = b.D;  // B(0+)
  Matrix gate = Matrix::Identity(b.n_plus, b.n_plus) - b0.adjoint() * mark;
  Eigen::FullPivLU<Matrix> lu(gate);
  if (!lu.isInvertible())
    throw std::runtime_error("model_apply: Id - B(0+)^* C is singular");
  Vector w = lu.solve(f.at_zero_minus());

  SampledSection out;
  for (std::size_t i = 0; i < f.grid.size(); ++i) {
    const DiscPoint& p = f.grid[i];
    const Complex l = p.coord;
    if (p.plus()) {
      out.grid.push_back(p);
      out.values.push_back(l * f.values[i] - (b.eval(l) - mark) * w);
    } else if (!is_zero_minus(p)) {
      Vector bracket =
          f.values[i] - (Matrix::Identity(b.n_plus, b.n_plus) - b.eval_conj_adjoint(l) * mark) * w;
      out.grid.push_back(p);
      out.values.push_back(bracket / l);
    } else if (f_prime_at_zero_minus) {
      // limit of bracket/l at 0-: the bracket vanishes there by construction
      out.grid.push_back(p);
      out.values.push_back(*f_prime_at_zero_minus + b.derivative_conj_adjoint(l) * mark * w);
    }
  }
  out.zero_minus_index = find_zero_minus(out.grid);
  return out;
}

ModelReport verify_model(const ContractionAnalysis& an, QuadrupleKind kind, const Matrix& mark,
                         const std::vector<DiscPoint>& grid, int n_random, std::uint64_t seed) {
  BoundaryQuadruple quad =
      kind == QuadrupleKind::Canonical ? canonical_quadruple(an) : primed_quadruple(an);
  SchurRealization b = weyl_realization(an, kind);
  const Index n = an.dim();

  ModelReport report;
  std::mt19937_64 rng(seed);
  for (int trial = 0; trial < n_random; ++trial) {
    Vector coords = random_matrix(an.A_T_perp.rank(), 1, rng).col(0);
    Vector a = an.A_T_perp.frame * (coords / std::max(1e-12, coords.norm()));
    Vector x = a.head(n), y = a.tail(n);
    Vector gp = quad.plus(a), gm = quad.minus(a);
    SampledSection fx = hat_section(an, quad, x, grid);
    SampledSection fy = hat_section(an, quad, y, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const Complex l = grid[i].coord;
      Vector defect = grid[i].plus()
                          ? Vector(l * fx.values[i] - fy.values[i] - (b.eval(l) * gp - gm))
                          : Vector(fx.values[i] - l * fy.values[i] -
                                   (gp - b.eval_conj_adjoint(l) * gm));
      report.max_residual_boundary = std::max(report.max_residual_boundary, vec_norm(defect));
    }
  }

  for (Index j = 0; j < n; ++j) {
    Vector e = Vector::Zero(n);
    e(j) = 1.0;
    SampledSection f = hat_section(an, quad, e, grid);
    SampledSection target = hat_section(an, quad, an.T * e, grid);
    SampledSection image = model_apply(b, mark, f);  // grid minus 0-, order kept
    std::size_t img_i = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (is_zero_minus(grid[i])) continue;
      report.max_residual_model = std::max(
          report.max_residual_model, vec_norm(image.values[img_i++] - target.values[i]));
    }
  }
  return report;
}

const char* to_string(Membership m) {
  switch (m) {
    case Membership::InHatA: return "in_hat_A";
    case Membership::InHatAPerp: return "in_hat_Aperp";
    case Membership::Neither: return "neither";
  }
  return "?";
}

MembershipResult graph_membership(const SchurRealization& b, const SampledSection& f,
                                  const SampledSection& g, double tol) {
  if (f.grid.size() != g.grid.size())
    throw std::invalid_argument("graph_membership: inconsistent grids");
  int n_plus_pts = 0, n_minus_pts = 0;
  for (std::size_t i = 0; i < f.grid.size(); ++i) {
    if (f.grid[i].disc != g.grid[i].disc || std::abs(f.grid[i].coord - g.grid[i].coord) > 0)
      throw std::invalid_argument("graph_membership: inconsistent grids");
    (f.grid[i].plus() ? n_plus_pts : n_minus_pts)++;
  }
  if (n_plus_pts < 2 || n_minus_pts < 2 || find_zero_minus(f.grid) < 0)
    throw std::invalid_argument("graph_membership: grid must cover both discs and contain 0-");

  const double scale = std::max(1.0, std::max(f.max_norm(), g.max_norm()));
  MembershipResult res;
  for (std::size_t i = 0; i < f.grid.size(); ++i) {
    const Complex l = f.grid[i].coord;
    Vector d = f.grid[i].plus() ? Vector(g.values[i] - l * f.values[i])
                                : Vector(f.values[i] - l * g.values[i]);
    res.residual_a = std::max(res.residual_a, vec_norm(d));
  }
  if (res.residual_a <= tol * scale) {
    res.verdict = Membership::InHatA;
    res.x_plus = Vector::Zero(b.n_plus);
    res.x_minus = Vector::Zero(b.n_minus);
    return res;
  }

  // stack the boundary system for (x+, x-)
  Index rows = 0;
  for (const auto& p : f.grid) rows += p.plus() ? b.n_minus : b.n_plus;
  Matrix lhs = Matrix::Zero(rows, b.n_plus + b.n_minus);
  Vector rhs(rows);
  Index r = 0;
  for (std::size_t i = 0; i < f.grid.size(); ++i) {
    const Complex l = f.grid[i].coord;
    if (f.grid[i].plus()) {
      lhs.block(r, 0, b.n_minus, b.n_plus) = b.eval(l);
      lhs.block(r, b.n_plus, b.n_minus, b.n_minus) = -Matrix::Identity(b.n_minus, b.n_minus);
      rhs.segment(r, b.n_minus) = l * f.values[i] - g.values[i];
      r += b.n_minus;
    } else {
      lhs.block(r, 0, b.n_plus, b.n_plus) = Matrix::Identity(b.n_plus, b.n_plus);
      lhs.block(r, b.n_plus, b.n_plus, b.n_minus) = -b.eval_conj_adjoint(l);
      rhs.segment(r, b.n_plus) = f.values[i] - l * g.values[i];
      r += b.n_plus;
    }
  }
  Vector z = lhs.colPivHouseholderQr().solve(rhs);
  res.residual_aperp = (lhs * z - rhs).norm();
  res.x_plus = z.head(b.n_plus);
  res.x_minus = z.tail(b.n_minus);
  res.verdict = res.residual_aperp <= tol * scale ? Membership::InHatAPerp : Membership::Neither;
  return res;
}

ModelOperator synthesize(const MarkedDisc& md, const std::vector<DiscPoint>& grid, double tol) {
  validate_realization(md.schur);
  if (md.mark.rows() != md.schur.n_minus || md.mark.cols() != md.schur.n_plus)
    throw std::invalid_argument("synthesize: mark shape mismatch");
  if (md.mark.size() > 0 && spectral_norm(md.mark) >= 1.0)
    throw std::invalid_argument("synthesize: mark is not a strict contraction");
  if (find_zero_minus(grid) < 0) throw std::invalid_argument("synthesize: grid is missing 0-");

  GramMatrix g = gram_assemble(md.schur, grid);
  const Index rank = g.rank();

  // rank stabilization probe: twist every nonzero point and re-assemble
  std::vector<DiscPoint> enriched = grid;
  const Complex twist = 0.9 * std::exp(kI * 0.4);
  for (const DiscPoint& p : grid)
    if (std::abs(p.coord) > 0) enriched.push_back(DiscPoint{p.coord * twist, p.disc});
  if (gram_assemble(md.schur, enriched).rank() != rank)
    throw std::runtime_error("model space not finite-dimensional at this scale");

  GramBasis basis = gram_basis(g, kRankTol);
  const Index m = static_cast<Index>(basis.eigenvalues.size());

  // sample the model operator on every basis section, then fit back
  std::vector<SampledSection> images;
  images.reserve(m);
  for (Index k = 0; k < m; ++k)
    images.push_back(
        model_apply(md.schur, md.mark, section_from_stacked(g, basis.values.col(k))));

  const Index out_rows = g.total_dim() - md.schur.n_plus;  // 0- block removed
  Matrix value_mat(out_rows, m), image_mat(out_rows, m);
  for (Index k = 0; k < m; ++k) {
    SampledSection ek = section_from_stacked(g, basis.values.col(k));
    Index r = 0;
    std::size_t img_i = 0;
    for (std::size_t i = 0; i < ek.grid.size(); ++i) {
      if (is_zero_minus(ek.grid[i])) continue;
      value_mat.block(r, k, ek.values[i].size(), 1) = ek.values[i];
      image_mat.block(r, k, ek.values[i].size(), 1) = images[k].values[img_i++];
      r += ek.values[i].size();
    }
  }

  ModelOperator op;
  op.dim = m;
  op.grid = grid;
  op.gram_eigenvalues = basis.eigenvalues;
  op.basis_coefficients = basis.coefficients;
  op.matrix = value_mat.colPivHouseholderQr().solve(image_mat);
  op.residual = (value_mat * op.matrix - image_mat).norm();
  if (m > 0 && spectral_norm(op.matrix) > 1.0 + std::max(tol, 1e-8))
    throw std::runtime_error("synthesize: model operator exceeds unit norm");
  return op;
}

const char* to_string(Equivalence e) {
  switch (e) {
    case Equivalence::Equivalent: return "equivalent";
    case Equivalence::NotEquivalent: return "not_equivalent";
    case Equivalence::Inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {
void trace_words(const Matrix& s, const Matrix& sa, const Matrix& cur, int depth,
                 std::vector<Complex>& out) {
  if (depth == 0) return;
  Matrix p1 = s * cur, p2 = sa * cur;
  out.push_back(p1.trace());
  out.push_back(p2.trace());
  trace_words(s, sa, p1, depth - 1, out);
  trace_words(s, sa, p2, depth - 1, out);
}

double eigen_match_distance(const Matrix& a, const Matrix& b) {
  Eigen::ComplexEigenSolver<Matrix> ea(a, false), eb(b, false);
  std::vector<Complex> va(ea.eigenvalues().data(), ea.eigenvalues().data() + a.rows());
  std::vector<Complex> vb(eb.eigenvalues().data(), eb.eigenvalues().data() + b.rows());
  double worst = 0.0;
  std::vector<bool> used(vb.size(), false);
  for (const Complex& x : va) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t arg = 0;
    for (std::size_t j = 0; j < vb.size(); ++j) {
      if (used[j]) continue;
      double d = std::abs(x - vb[j]);
      if (d < best) best = d, arg = j;
    }
    used[arg] = true;
    worst = std::max(worst, best);
  }
  return worst;
}
}  // namespace

Equivalence equivalence_check(const Matrix& s1, const Matrix& s2, double tol_spectra,
                              double tol_trace) {
  if (s1.rows() != s1.cols() || s2.rows() != s2.cols())
    throw std::invalid_argument("equivalence_check: operators must be square");
  if (s1.rows() != s2.rows()) return Equivalence::NotEquivalent;
  const Index n = s1.rows();
  if (n == 0) return Equivalence::Equivalent;

  double d_eig = eigen_match_distance(s1, s2);
  RealVector sv1 = s1.jacobiSvd().singularValues();
  RealVector sv2 = s2.jacobiSvd().singularValues();
  double d_sv = (sv1 - sv2).cwiseAbs().maxCoeff();

  std::vector<Complex> w1, w2;
  const Matrix id = Matrix::Identity(n, n);
  trace_words(s1, Matrix(s1.adjoint()), id, static_cast<int>(2 * n), w1);
  trace_words(s2, Matrix(s2.adjoint()), id, static_cast<int>(2 * n), w2);
  double d_tr = 0.0;
  for (std::size_t i = 0; i < w1.size(); ++i) d_tr = std::max(d_tr, std::abs(w1[i] - w2[i]));

  if (d_eig <= tol_spectra && d_sv <= tol_spectra && d_tr <= tol_trace)
    return Equivalence::Equivalent;
  if (d_eig > 10 * tol_spectra || d_sv > 10 * tol_spectra || d_tr > 10 * tol_trace)
    return Equivalence::NotEquivalent;
  return Equivalence::Inconclusive;
}

CongruenceData congruence_data(const ContractionAnalysis& an1, const ContractionAnalysis& an2,
                               const Matrix& U, const std::vector<DiscPoint>& grid,
                               double tol) {
  const Index n = an1.dim();
  if (an2.dim() != n || U.rows() != n || U.cols() != n)
    throw std::invalid_argument("congruence_data: dimension mismatch");
  if ((U.adjoint() * U - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() > tol)
    throw std::invalid_argument("congruence_data: U is not unitary");
  if (spectral_norm(U * an1.T * U.adjoint() - an2.T) > tol * std::max(1.0, spectral_norm(an2.T)))
    throw std::invalid_argument("congruence_data: U does not intertwine the operators");
  if (max_principal_angle(U * an1.K.frame, an2.K.frame) > 1e-7)
    throw std::runtime_error("congruence_data: U does not map K1 onto K2");

  CongruenceData out;
  out.u_plus = an2.K_perp.frame.adjoint() * U * an1.K_perp.frame;
  out.u_minus = an2.K_star_perp.frame.adjoint() * U * an1.K_star_perp.frame;
  Matrix u_plus_inv = out.u_plus.adjoint();  // unitary by the frame mapping
  SchurRealization b1 = weyl_realization(an1, QuadrupleKind::Canonical);
  SchurRealization b2 = weyl_realization(an2, QuadrupleKind::Canonical);
  for (const DiscPoint& p : grid) {
    if (!p.plus()) continue;
    out.max_weyl_residual =
        std::max(out.max_weyl_residual,
                 spectral_norm(b2.eval(p.coord) - out.u_minus * b1.eval(p.coord) * u_plus_inv));
  }
  out.mark_residual = an2.t.size() ? spectral_norm(an2.t - out.u_minus * an1.t * u_plus_inv) : 0.0;
  return out;
}

}  // namespace cmod
