#include "cmod/symplectic.hpp"

#include "support.hpp"

#include <doctest.h>

using namespace cmod;
using cmod::testing::random_isotropic;

namespace {
constexpr Complex kI{0.0, 1.0};

Subspace span_of(std::initializer_list<Complex> entries) {
  Vector v(static_cast<Index>(entries.size()));
  Index i = 0;
  for (Complex e : entries) v(i++) = e;
  return Subspace::from_span(v);
}
}  // namespace

TEST_SUITE_BEGIN("symplectic");

TEST_CASE("standard and graph forms") {
  SymplecticSpace st = SymplecticSpace::standard(1, 1);
  CHECK(st.form(0, 0) == kI);
  CHECK(st.form(1, 1) == -kI);
  CHECK(st.signature == Signature{1, 1});

  SymplecticSpace gr = SymplecticSpace::graph(1);
  CHECK(gr.form(0, 1) == Complex{1, 0});
  CHECK(gr.form(1, 0) == Complex{-1, 0});
  CHECK(gr.signature == Signature{1, 1});

  SymplecticSpace big = SymplecticSpace::standard(2, 3);
  CHECK(big.dim() == 5);
  CHECK(big.signature == Signature{2, 3});

  CHECK_THROWS_AS(SymplecticSpace::standard(0, 0), std::invalid_argument);
  CHECK_THROWS_AS(SymplecticSpace::graph(0), std::invalid_argument);
}

TEST_CASE("from_form validates skew-adjointness and nondegeneracy") {
  Matrix good(2, 2);
  good << Complex{0, 1}, 0, 0, Complex{0, -1};
  CHECK(SymplecticSpace::from_form(good).signature == Signature{1, 1});

  Matrix not_skew = Matrix::Identity(2, 2);
  CHECK_THROWS_AS(SymplecticSpace::from_form(not_skew), std::invalid_argument);

  Matrix degenerate = Matrix::Zero(3, 3);
  degenerate.topLeftCorner(2, 2) = good;
  CHECK_THROWS_AS(SymplecticSpace::from_form(degenerate), std::invalid_argument);
}

TEST_CASE("subspace constructors validate their input") {
  Matrix skewed(2, 2);
  skewed << 1, 1, 0, 1;
  CHECK_THROWS_AS(Subspace::from_orthonormal(skewed), std::invalid_argument);
  CHECK(Subspace::from_span(skewed).rank() == 2);
}

TEST_CASE("polarization rejects non-definite subspaces") {
  SymplecticSpace st = SymplecticSpace::standard(1, 1);
  CHECK_THROWS_AS(Polarization::from_plus(st, span_of({1, 1})), std::invalid_argument);
  CHECK_THROWS_AS(Polarization::from_plus(st, span_of({0, 1})), std::invalid_argument);
}

TEST_CASE("graph form matches the quoted pairing") {
  //  [(x1,y1),(x2,y2)]_new = (y1,x2) - (x1,y2)
  SymplecticSpace gr = SymplecticSpace::graph(2);
  std::mt19937_64 rng(11);
  Vector u = random_matrix(4, 1, rng).col(0), v = random_matrix(4, 1, rng).col(0);
  Complex expected = (u.tail(2).transpose() * v.head(2).conjugate())(0) -
                     (u.head(2).transpose() * v.tail(2).conjugate())(0);
  CHECK(std::abs(gr.pair(u, v) - expected) < 1e-13);
}

TEST_CASE("every constructed form is skew-adjoint and nondegenerate") {
  for (const SymplecticSpace& s :
       {SymplecticSpace::standard(2, 3), SymplecticSpace::graph(3),
        direct_sum(SymplecticSpace::standard(1, 2), SymplecticSpace::graph(2))}) {
    CHECK((s.form + s.form.adjoint()).cwiseAbs().maxCoeff() == 0.0);
    Eigen::SelfAdjointEigenSolver<Matrix> es(Matrix(-kI * s.form));
    double max_abs = es.eigenvalues().cwiseAbs().maxCoeff();
    CHECK(es.eigenvalues().cwiseAbs().minCoeff() >= 1e-12 * max_abs);
  }
}

TEST_CASE("direct sum adds signatures") {
  SymplecticSpace s = direct_sum(SymplecticSpace::standard(2, 1), SymplecticSpace::standard(1, 3));
  CHECK(s.signature == Signature{3, 4});
  CHECK(s.dim() == 7);
}

TEST_CASE("symplectic complement") {
  SymplecticSpace st = SymplecticSpace::standard(1, 1);
  CHECK(same_subspace(symp_complement(st, span_of({1, 0})), span_of({0, 1})));

  // Lagrangian line: solve i(x1 - x2) = 0
  Subspace lag = span_of({1, 1});
  CHECK(same_subspace(symp_complement(st, lag), lag));

  Subspace whole = Subspace::from_orthonormal(Matrix::Identity(2, 2));
  CHECK(symp_complement(st, whole).rank() == 0);

  CHECK_THROWS_AS(symp_complement(SymplecticSpace::standard(2, 2), span_of({1, 0})),
                  std::invalid_argument);
}

TEST_CASE("double complement returns the subspace") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 25; ++trial) {
    SymplecticSpace s = trial % 2 ? SymplecticSpace::standard(3, 2) : SymplecticSpace::graph(3);
    Index r = 1 + static_cast<Index>(trial % 4);
    Subspace sub = Subspace::from_span(random_matrix(s.dim(), r, rng));
    Subspace back = symp_complement(s, symp_complement(s, sub));
    CHECK(max_principal_angle(sub.frame, back.frame) < 1e-10);
  }
}

TEST_CASE("classification of lines in standard(1,1)") {
  SymplecticSpace st = SymplecticSpace::standard(1, 1);
  CHECK(classify_subspace(st, span_of({1, 0})) == SubspaceClass::MaxPositiveDefinite);
  CHECK(classify_subspace(st, span_of({1, 1})) == SubspaceClass::Isotropic);
  CHECK(classify_subspace(st, span_of({1, 0.5})) == SubspaceClass::MaxPositiveDefinite);
  CHECK(classify_subspace(st, span_of({0, 1})) == SubspaceClass::MaxNegativeDefinite);
  CHECK(classify_subspace(st, Subspace::from_orthonormal(Matrix::Identity(2, 2))) ==
        SubspaceClass::Indefinite);

  SymplecticSpace big = SymplecticSpace::standard(2, 1);
  CHECK(classify_subspace(big, span_of({1, 0, 0})) == SubspaceClass::PositiveDefiniteNotMaximal);
}

TEST_CASE("quotient by the zero subspace is the parent") {
  SymplecticSpace st = SymplecticSpace::standard(2, 2);
  QuotientSpace q = quotient(st, Subspace::zero(4));
  CHECK(q.reduced.signature == st.signature);
  CHECK(q.rep_frame.rank() == 4);
}

TEST_CASE("quotient of graph(2) by the Jordan unitary-part graph") {
  // A = span{(e2, e1)}: the graph of the unitary map part of the Jordan block
  SymplecticSpace gr = SymplecticSpace::graph(2);
  Vector a = Vector::Zero(4);
  a(1) = 1.0 / std::sqrt(2.0);
  a(2) = 1.0 / std::sqrt(2.0);
  QuotientSpace q = quotient(gr, Subspace::from_span(a));
  CHECK(q.reduced.signature == Signature{1, 1});
}

TEST_CASE("quotient by a Lagrangian is zero-dimensional") {
  SymplecticSpace st = SymplecticSpace::standard(1, 1);
  QuotientSpace q = quotient(st, span_of({1, 1}));
  CHECK(q.rep_frame.rank() == 0);
}

TEST_CASE("quotient rejects non-isotropic subspaces") {
  SymplecticSpace st = SymplecticSpace::standard(1, 1);
  CHECK_THROWS_AS(quotient(st, span_of({1, 0})), std::invalid_argument);
}

TEST_CASE("quotient signature additivity") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    Index np = 2 + trial % 3, nm = 2 + (trial / 3) % 3;
    SymplecticSpace s = SymplecticSpace::standard(np, nm);
    Index k = 1 + trial % std::min(np, nm);
    Subspace a = random_isotropic(s, k, rng);
    REQUIRE(classify_subspace(s, a) == SubspaceClass::Isotropic);
    QuotientSpace q = quotient(s, a);
    CHECK(q.reduced.signature == Signature{np - k, nm - k});
  }
}

TEST_CASE("graph parameterization round trip") {
  SymplecticSpace st = SymplecticSpace::standard(1, 1);
  Polarization pol = Polarization::standard(st);

  CHECK(same_subspace(graph_of_param(pol, Matrix::Zero(1, 1)), pol.plus));

  Matrix b = graph_param_of(pol, span_of({1, 0.5}));
  CHECK(std::abs(b(0, 0) - Complex{0.5, 0}) < 1e-12);

  // random 2x1 pure contraction in standard(1,2)
  std::mt19937_64 rng(8);
  SymplecticSpace tall = SymplecticSpace::standard(1, 2);
  Polarization pol2 = Polarization::standard(tall);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix b0 = random_matrix(2, 1, rng);
    b0 *= 0.8 / std::max(1.0, spectral_norm(b0));
    Matrix b1 = graph_param_of(pol2, graph_of_param(pol2, b0));
    CHECK(spectral_norm(b1 - b0) < 1e-12);
  }

  CHECK_THROWS_AS(graph_param_of(pol, span_of({1, 1})), std::invalid_argument);
  Matrix big = Matrix::Identity(1, 1) * 1.5;
  CHECK_THROWS_AS(graph_of_param(pol, big), std::invalid_argument);
}

TEST_CASE("pseudo-unitary of a contraction") {
  SymplecticSpace st = SymplecticSpace::standard(1, 1);
  Polarization pol = Polarization::standard(st);

  PseudoUnitary m0 = pseudo_unitary_of_contraction(pol, Matrix::Zero(1, 1));
  Matrix expect0 = Matrix::Identity(2, 2);
  expect0(1, 1) = -1.0;
  CHECK((m0.matrix - expect0).cwiseAbs().maxCoeff() < 1e-14);

  Matrix half = Matrix::Identity(1, 1) * 0.5;
  PseudoUnitary mh = pseudo_unitary_of_contraction(pol, half);
  const double s = 2.0 / std::sqrt(3.0);
  Matrix expect(2, 2);
  expect << s, -0.5 * s, 0.5 * s, -s;
  CHECK((mh.matrix - expect).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((mh.matrix.adjoint() * st.form * mh.matrix - st.form).cwiseAbs().maxCoeff() < 1e-12);

  // transforms L (parameterized by 0) into the graph of B
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    Matrix b0 = random_matrix(1, 1, rng);
    b0 *= 0.9 / std::max(1.0, spectral_norm(b0));
    PseudoUnitary m = pseudo_unitary_of_contraction(pol, b0);
    Matrix b1 = mobius_apply(m, pol, Matrix::Zero(1, 1));
    CHECK(spectral_norm(b1 - b0) < 1e-10);
  }
}

TEST_CASE("mobius action law") {
  std::mt19937_64 rng(10);
  SymplecticSpace st = SymplecticSpace::standard(2, 2);
  Polarization pol = Polarization::standard(st);
  for (int trial = 0; trial < 20; ++trial) {
    auto contraction = [&] {
      Matrix b = random_matrix(2, 2, rng);
      return Matrix(b * (0.7 / std::max(1.0, spectral_norm(b))));
    };
    PseudoUnitary m1 = pseudo_unitary_of_contraction(pol, contraction());
    PseudoUnitary m2 = pseudo_unitary_of_contraction(pol, contraction());
    Matrix b = contraction();
    PseudoUnitary m12{Matrix(m1.matrix * m2.matrix)};
    Matrix lhs = mobius_apply(m12, pol, b);
    Matrix rhs = mobius_apply(m1, pol, mobius_apply(m2, pol, b));
    CHECK(spectral_norm(lhs - rhs) < 1e-9);
  }
}

TEST_CASE("cayley transform") {
  // beta(x, y) = ((y+ix)/sqrt2, (y-ix)/sqrt2)
  Vector v(2);
  v << 1.0, 0.0;
  Vector image = cayley(v);
  CHECK(std::abs(image(0) - kI / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(image(1) + kI / std::sqrt(2.0)) < 1e-15);

  SymplecticSpace gr = SymplecticSpace::graph(1);
  SymplecticSpace st = SymplecticSpace::standard(1, 1);
  Vector a(2), b(2);
  a << 1, 0;
  b << 0, 1;
  CHECK(std::abs(gr.pair(a, b) - Complex{-1, 0}) < 1e-15);
  CHECK(std::abs(st.pair(cayley(a), cayley(b)) - Complex{-1, 0}) < 1e-15);

  std::mt19937_64 rng(12);
  for (int n : {1, 2, 3}) {
    SymplecticSpace g = SymplecticSpace::graph(n);
    SymplecticSpace s = SymplecticSpace::standard(n, n);
    for (int trial = 0; trial < 40; ++trial) {
      Vector u = random_matrix(2 * n, 1, rng).col(0), w = random_matrix(2 * n, 1, rng).col(0);
      CHECK(std::abs(g.pair(u, w) - s.pair(cayley(u), cayley(w))) < 1e-12);
    }
  }
}

TEST_CASE("cayley maps graph-form isotropics to standard-form Lagrangians") {
  SymplecticSpace gr = SymplecticSpace::graph(1);
  SymplecticSpace st = SymplecticSpace::standard(1, 1);
  Polarization pol = Polarization::standard(st);
  for (double t0 : {-2.0, 0.0, 0.3, 5.0}) {
    Subspace a = span_of({1.0, t0});
    REQUIRE(classify_subspace(gr, a) == SubspaceClass::Isotropic);
    Subspace image = cayley(a);
    CHECK(classify_subspace(st, image) == SubspaceClass::Isotropic);
    CHECK(same_subspace(symp_complement(st, image), image));  // Lagrangian
    // unimodular graph parameter (t0 - i)/(t0 + i)
    Complex ratio = pol.minus_coords(image.frame)(0, 0) / pol.plus_coords(image.frame)(0, 0);
    CHECK(std::abs(ratio - (t0 - kI) / (t0 + kI)) < 1e-12);
  }
}

TEST_SUITE_END();
