// Python bindings for the main operations: defect analysis, characteristic
// and Weyl functions, kernel blocks and Gram matrices, model synthesis, and
// the equivalence certificate. Matrices cross the boundary as numpy
// complex128 arrays.

#include "cmod/kernel.hpp"
#include "cmod/model.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace cmod;

namespace {

DiscPoint point(Complex coord, const std::string& disc) {
  if (disc != "+" && disc != "-") throw std::invalid_argument("disc must be '+' or '-'");
  return DiscPoint{coord, disc == "+" ? Disc::Plus : Disc::Minus};
}

GridOptions grid_options(const std::vector<double>& radii, int angles, std::uint64_t seed) {
  GridOptions opts;
  if (!radii.empty()) opts.radii = radii;
  opts.angles = angles;
  opts.seed = seed;
  return opts;
}

struct PyAnalysis {
  ContractionAnalysis an;
  BoundaryQuadruple canon;

  explicit PyAnalysis(const Matrix& T) : an(defect_analysis(T)), canon(canonical_quadruple(an)) {}

  Matrix theta_at(Complex l) const { return theta(an, l); }
  Matrix weyl_at(Complex l, const std::string& disc) const {
    return weyl_function(an, canon, point(l, disc));
  }
  SchurRealization realization(const std::string& kind) const {
    if (kind == "canonical") return weyl_realization(an, QuadrupleKind::Canonical);
    if (kind == "primed") return weyl_realization(an, QuadrupleKind::Primed);
    throw std::invalid_argument("kind must be 'canonical' or 'primed'");
  }
};

SchurRealization make_realization(const Matrix& a, const Matrix& b_in, const Matrix& c,
                                  const Matrix& d) {
  SchurRealization r;
  r.n_plus = d.cols();
  r.n_minus = d.rows();
  r.A = a;
  r.B_in = b_in;
  r.C = c;
  r.D = d;
  validate_realization(r);
  return r;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "functional models for completely non-unitary contractions";

  py::class_<SchurRealization>(m, "Realization")
      .def(py::init(&make_realization), py::arg("A"), py::arg("B_in"), py::arg("C"),
           py::arg("D"))
      .def("__call__", &SchurRealization::eval, py::arg("lam"))
      .def("derivative", &SchurRealization::derivative, py::arg("lam"))
      .def_readonly("n_plus", &SchurRealization::n_plus)
      .def_readonly("n_minus", &SchurRealization::n_minus)
      .def_readonly("A", &SchurRealization::A)
      .def_readonly("B_in", &SchurRealization::B_in)
      .def_readonly("C", &SchurRealization::C)
      .def_readonly("D", &SchurRealization::D);

  py::class_<PyAnalysis>(m, "Analysis")
      .def(py::init<const Matrix&>(), py::arg("T"))
      .def_property_readonly("dim", [](const PyAnalysis& a) { return a.an.dim(); })
      .def_property_readonly("n_plus", [](const PyAnalysis& a) { return a.an.indices.n_plus; })
      .def_property_readonly("n_minus", [](const PyAnalysis& a) { return a.an.indices.n_minus; })
      .def_property_readonly("dim_unitary",
                             [](const PyAnalysis& a) { return a.an.unitary_part_dim; })
      .def_property_readonly("cnu", [](const PyAnalysis& a) { return a.an.cnu; })
      .def_property_readonly("t", [](const PyAnalysis& a) { return a.an.t; })
      .def_property_readonly("norm_t", [](const PyAnalysis& a) { return a.an.norm_t(); })
      .def_property_readonly("defect", [](const PyAnalysis& a) { return a.an.defect; })
      .def_property_readonly("defect_star", [](const PyAnalysis& a) { return a.an.defect_star; })
      .def("theta", &PyAnalysis::theta_at, py::arg("lam"))
      .def("weyl", &PyAnalysis::weyl_at, py::arg("lam"), py::arg("disc") = "+")
      .def("weyl_realization", &PyAnalysis::realization, py::arg("kind") = "canonical")
      .def("green_residual", [](const PyAnalysis& a, const Vector& x, const Vector& y) {
        return green_residual(a.an, a.canon, x, y);
      });

  m.def(
      "kernel_block",
      [](const SchurRealization& b, Complex p, const std::string& pd, Complex q,
         const std::string& qd) { return kernel_block(b, point(p, pd), point(q, qd)); },
      py::arg("B"), py::arg("p"), py::arg("p_disc"), py::arg("q"), py::arg("q_disc"));

  m.def(
      "gram",
      [](const SchurRealization& b, const std::vector<double>& radii, int angles,
         std::uint64_t seed) {
        return gram_assemble(b, make_grid(grid_options(radii, angles, seed))).blocks;
      },
      py::arg("B"), py::arg("radii") = std::vector<double>{0.3, 0.6}, py::arg("angles") = 8,
      py::arg("seed") = 0);

  m.def(
      "synthesize",
      [](const SchurRealization& b, const Matrix& mark, const std::vector<double>& radii,
         int angles, std::uint64_t seed, double tol) {
        ModelOperator op =
            synthesize(MarkedDisc{b, mark}, make_grid(grid_options(radii, angles, seed)), tol);
        return py::make_tuple(op.matrix, op.dim, op.residual);
      },
      py::arg("B"), py::arg("mark"), py::arg("radii") = std::vector<double>{0.3, 0.6},
      py::arg("angles") = 8, py::arg("seed") = 0, py::arg("tol") = 1e-9);

  m.def(
      "equivalence_check",
      [](const Matrix& s1, const Matrix& s2, double tol_spectra, double tol_trace) {
        return std::string(to_string(equivalence_check(s1, s2, tol_spectra, tol_trace)));
      },
      py::arg("S1"), py::arg("S2"), py::arg("tol_spectra") = 1e-7, py::arg("tol_trace") = 1e-6);

  m.def(
      "cnu_split",
      [](const Matrix& T) {
        auto [uni, rest] = cnu_split(T);
        return py::make_tuple(uni.frame, rest.frame);
      },
      py::arg("T"));
}
