#include "cmod/io.hpp"

#include <json.hpp>

#include <fstream>

namespace cmod {

using nlohmann::json;

namespace {

json complex_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ParseError("complex scalar must be a [re, im] pair");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

Matrix matrix_from_json(const json& j, const char* what) {
  if (!j.is_array() || j.empty())
    throw ParseError(std::string(what) + ": matrix must be a nonempty array of rows");
  const Index rows = static_cast<Index>(j.size());
  const Index cols = static_cast<Index>(j[0].size());
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    if (!j[i].is_array() || static_cast<Index>(j[i].size()) != cols)
      throw ParseError(std::string(what) + ": ragged matrix rows");
    for (Index c = 0; c < cols; ++c) m(i, c) = complex_from_json(j[i][c]);
  }
  return m;
}

json load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  return j;
}

void store(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out << j.dump(1) << "\n";
}

}  // namespace

Matrix read_operator_file(const std::string& path, double tol) {
  json j = load(path);
  if (!j.contains("dim") || !j.contains("matrix")) throw ParseError(path + ": missing dim/matrix");
  Matrix T = matrix_from_json(j["matrix"], "matrix");
  const Index dim = j["dim"].get<Index>();
  if (T.rows() != dim || T.cols() != dim) throw ParseError(path + ": matrix is not dim x dim");
  if (spectral_norm(T) > 1.0 + tol)
    throw std::invalid_argument(path + ": operator is not a contraction");
  return T;
}

void write_operator_file(const std::string& path, const Matrix& T) {
  json j;
  j["dim"] = T.rows();
  j["matrix"] = matrix_to_json(T);
  store(path, j);
}

MarkedDisc read_marked_disc_file(const std::string& path) {
  json j = load(path);
  for (const char* key : {"n_plus", "n_minus", "state_dim", "A", "B_in", "C", "D", "mark"})
    if (!j.contains(key)) throw ParseError(path + ": missing field " + key);
  MarkedDisc md;
  md.schur.n_plus = j["n_plus"].get<Index>();
  md.schur.n_minus = j["n_minus"].get<Index>();
  const Index s = j["state_dim"].get<Index>();
  auto block = [&](const char* key, Index rows, Index cols) {
    if (rows == 0 || cols == 0) return Matrix(rows, cols);
    Matrix m = matrix_from_json(j[key], key);
    if (m.rows() != rows || m.cols() != cols)
      throw ParseError(path + ": field " + key + " has wrong shape");
    return m;
  };
  md.schur.A = block("A", s, s);
  md.schur.B_in = block("B_in", s, md.schur.n_plus);
  md.schur.C = block("C", md.schur.n_minus, s);
  md.schur.D = block("D", md.schur.n_minus, md.schur.n_plus);
  md.mark = block("mark", md.schur.n_minus, md.schur.n_plus);
  validate_realization(md.schur);
  if (md.mark.size() > 0 && spectral_norm(md.mark) >= 1.0)
    throw std::invalid_argument(path + ": mark is not a strict contraction");
  return md;
}

void write_marked_disc_file(const std::string& path, const MarkedDisc& md) {
  json j;
  j["n_plus"] = md.schur.n_plus;
  j["n_minus"] = md.schur.n_minus;
  j["state_dim"] = md.schur.state_dim();
  j["A"] = matrix_to_json(md.schur.A);
  j["B_in"] = matrix_to_json(md.schur.B_in);
  j["C"] = matrix_to_json(md.schur.C);
  j["D"] = matrix_to_json(md.schur.D);
  j["mark"] = matrix_to_json(md.mark);
  store(path, j);
}

Matrix read_mark_file(const std::string& path) {
  json j = load(path);
  if (!j.contains("mark")) throw ParseError(path + ": missing field mark");
  return matrix_from_json(j["mark"], "mark");
}

}  // namespace cmod
