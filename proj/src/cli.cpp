#include "cmod/cli.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>

namespace cmod {

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9e", x);
  return buf;
}

std::string fmt(const Complex& z) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.9e%+.9ei", z.real(), z.imag());
  return buf;
}

std::string fmt_matrix(const Matrix& m) {
  std::string s;
  for (Index i = 0; i < m.rows(); ++i) {
    s += "  [";
    for (Index j = 0; j < m.cols(); ++j) {
      if (j) s += ", ";
      s += fmt(m(i, j));
    }
    s += "]\n";
  }
  if (m.rows() == 0) s += "  []\n";
  return s;
}

struct CheckTable {
  std::ostream& out;
  double tol;
  bool all_pass = true;

  void row(const std::string& name, double residual, double limit) {
    bool ok = residual <= limit;
    all_pass = all_pass && ok;
    out << "check " << name << " residual=" << fmt(residual) << " tol=" << fmt(limit) << " "
        << (ok ? "PASS" : "FAIL") << "\n";
  }
};

}  // namespace

GridOptions grid_options(const CliOptions& opts) {
  GridOptions g;
  g.radii = opts.radii;
  g.angles = opts.angles;
  g.r_max = opts.r_max;
  g.seed = opts.seed;
  return g;
}

int run_analyze(const std::string& path, const CliOptions& opts, std::ostream& out,
                std::ostream& err) {
  try {
    Matrix T = read_operator_file(path, opts.tol);
    ContractionAnalysis an = defect_analysis(T, opts.tol);
    out << "operator: " << path << "\n";
    out << "dim: " << an.dim() << "\n";
    out << "norm: " << fmt(spectral_norm(T)) << "\n";
    out << "indices: (" << an.indices.n_plus << ", " << an.indices.n_minus << ")\n";
    out << "dim_K: " << an.K.rank() << "\n";
    out << "cnu: " << (an.cnu ? "true" : "false") << "\n";
    out << "unitary_part_dim: " << an.unitary_part_dim << "\n";
    out << "norm_t: " << fmt(an.norm_t()) << "\n";
    out << "K_perp frame:\n" << fmt_matrix(an.K_perp.frame);
    out << "K_star_perp frame:\n" << fmt_matrix(an.K_star_perp.frame);
    out << "t matrix:\n" << fmt_matrix(an.t);
    std::vector<DiscPoint> grid = make_grid(grid_options(opts));
    BoundaryQuadruple quad = canonical_quadruple(an);
    for (const DiscPoint& p : grid) {
      if (!p.plus()) continue;
      out << "theta(" << fmt(p.coord) << ") =\n" << fmt_matrix(theta(an, p.coord));
      out << "B(" << fmt(p.coord) << ") =\n" << fmt_matrix(weyl_function(an, quad, p));
    }
    return 0;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
}

int run_verify(const std::string& path, const CliOptions& opts, std::ostream& out,
               std::ostream& err) {
  try {
    Matrix T = read_operator_file(path, opts.tol);
    ContractionAnalysis an = defect_analysis(T, opts.tol);
    if (!an.cnu) {
      err << "error: not c.n.u. (unitary part of dimension " << an.unitary_part_dim << ")\n";
      return 3;
    }
    const bool canonical_mark = opts.mark.empty() || opts.mark == "canonical";
    Matrix mark = canonical_mark ? an.t : read_mark_file(opts.mark);
    if (mark.rows() != an.indices.n_minus || mark.cols() != an.indices.n_plus) {
      err << "error: mark has wrong shape\n";
      return 3;
    }

    std::vector<DiscPoint> grid = make_grid(grid_options(opts));
    out << "operator: " << path << "\n";
    out << "dim: " << an.dim() << " indices: (" << an.indices.n_plus << ", "
        << an.indices.n_minus << ") norm_t: " << fmt(an.norm_t()) << "\n";
    out << "grid: " << grid.size() << " points, seed " << opts.seed << "\n";
    CheckTable table{out, opts.tol};

    BoundaryQuadruple canon = canonical_quadruple(an);
    BoundaryQuadruple primed = primed_quadruple(an);
    std::mt19937_64 rng(opts.seed);
    double gc = 0, gp = 0;
    for (int k = 0; k < 16; ++k) {
      Vector a = an.A_T_perp.frame * random_matrix(an.A_T_perp.rank(), 1, rng).col(0);
      Vector b = an.A_T_perp.frame * random_matrix(an.A_T_perp.rank(), 1, rng).col(0);
      a /= std::max(1e-12, a.norm());
      b /= std::max(1e-12, b.norm());
      gc = std::max(gc, green_residual(an, canon, a, b));
      gp = std::max(gp, green_residual(an, primed, a, b));
    }
    table.row("green_canonical", gc, opts.tol);
    table.row("green_primed", gp, opts.tol);

    double wt = 0;
    for (const DiscPoint& p : grid) {
      if (!p.plus()) continue;
      wt = std::max(wt, spectral_norm(weyl_function(an, primed, p) + theta(an, p.coord)));
    }
    table.row("primed_weyl_vs_theta", wt, opts.tol);

    SchurRealization bcan = weyl_realization(an, QuadrupleKind::Canonical);
    double t2 = 0;
    for (std::size_t i = 0; i < grid.size(); ++i)
      for (std::size_t j = 0; j < grid.size(); ++j) {
        const DiscPoint &p = grid[i], &q = grid[j];
        const bool cross = p.plus() != q.plus();
        if (cross && std::abs(p.coord - std::conj(q.coord)) < 1e-12)
          continue;  // confluent pair: closed form only, oracles cannot divide
        Matrix ref = kernel_block(bcan, p, q);
        t2 = std::max(t2, (ref - kernel_oracle_projection(bcan, p, q)).cwiseAbs().maxCoeff());
        t2 = std::max(t2, (ref - kernel_oracle_sections(an, canon, p, q)).cwiseAbs().maxCoeff());
      }
    table.row("kernel_dual_route", t2, opts.tol);

    ModelReport rep = verify_model(an, QuadrupleKind::Canonical, mark, grid, 8, opts.seed);
    table.row("boundary_identity", rep.max_residual_boundary, opts.tol);
    table.row("model_identity", rep.max_residual_model, opts.tol);

    GramMatrix gram = gram_assemble(bcan, grid);
    double psd = std::max(0.0, -gram.min_eigenvalue() / std::max(1e-300, gram.norm()));
    table.row("gram_psd", psd, opts.tol);
    table.row("gram_rank", static_cast<double>(std::abs(gram.rank() - an.dim())), 0.5);

    out << "result: " << (table.all_pass ? "PASS" : "FAIL") << "\n";
    return table.all_pass ? 0 : 4;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
}

int run_synthesize(const std::string& path, const CliOptions& opts, std::ostream& out,
                   std::ostream& err) {
  try {
    MarkedDisc md = read_marked_disc_file(path);
    std::vector<DiscPoint> grid = make_grid(grid_options(opts));
    ModelOperator op;
    try {
      op = synthesize(md, grid, opts.tol);
    } catch (const std::runtime_error& e) {
      err << "error: " << e.what() << "\n";
      return 5;
    }
    out << "disc: " << path << "\n";
    out << "gram_rank: " << op.dim << "\n";
    out << "residual: " << fmt(op.residual) << "\n";
    out << "norm: " << fmt(op.dim ? spectral_norm(op.matrix) : 0.0) << "\n";
    out << "operator:\n" << fmt_matrix(op.matrix);
    std::string dest = opts.output.empty() ? path + ".operator.json" : opts.output;
    write_operator_file(dest, op.matrix);
    out << "written: " << dest << "\n";
    if (!opts.roundtrip.empty()) {
      Matrix orig = read_operator_file(opts.roundtrip, opts.tol);
      Equivalence verdict = equivalence_check(op.matrix, orig);
      out << "roundtrip: " << to_string(verdict) << "\n";
      if (verdict != Equivalence::Equivalent) return 4;
    }
    return 0;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace cmod
