#pragma once

// JSON file formats. Complex scalars are [re, im] pairs; matrices are
// row-major nested arrays of those pairs. This is the only wire
// representation.
//
// operator file:    {"dim": n, "matrix": [[[re,im],...],...]}
// marked-disc file: {"n_plus":, "n_minus":, "state_dim":,
//                    "A":, "B_in":, "C":, "D":, "mark": matrices}
// mark file:        {"mark": matrix}

#include "cmod/model.hpp"

#include <string>

namespace cmod {

// Thrown on malformed input files; the CLI maps it to exit code 2.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Matrix read_operator_file(const std::string& path, double tol = 1e-9);
void write_operator_file(const std::string& path, const Matrix& T);

MarkedDisc read_marked_disc_file(const std::string& path);
void write_marked_disc_file(const std::string& path, const MarkedDisc& md);

Matrix read_mark_file(const std::string& path);

}  // namespace cmod
