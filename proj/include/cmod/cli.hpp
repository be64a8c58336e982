#pragma once

// Command implementations behind the cmod binary, kept in the library so the
// tests can drive them in-process. Reports are plain structured text and are
// byte-identical for identical inputs and seed.
//
// Exit codes: 0 success, 2 parse error, 3 not a contraction / not c.n.u.,
// 4 a verification check failed, 5 the Gram rank did not stabilize.

#include "cmod/io.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace cmod {

struct CliOptions {
  double tol = 1e-9;
  std::vector<double> radii{0.3, 0.6};
  int angles = 8;
  double r_max = 0.85;
  std::uint64_t seed = 0;
  std::string mark;       // empty = canonical (C = t); otherwise a mark file
  std::string roundtrip;  // operator file for the synthesize round-trip check
  std::string output;     // synthesized operator destination
};

GridOptions grid_options(const CliOptions& opts);

int run_analyze(const std::string& path, const CliOptions& opts, std::ostream& out,
                std::ostream& err);
int run_verify(const std::string& path, const CliOptions& opts, std::ostream& out,
               std::ostream& err);
int run_synthesize(const std::string& path, const CliOptions& opts, std::ostream& out,
                   std::ostream& err);

}  // namespace cmod
