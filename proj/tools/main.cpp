// cmod: defect analysis, verification, and synthesis for finite-dimensional
// completely non-unitary contractions.

#include "cmod/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"functional-model toolkit for completely non-unitary contractions"};
  app.require_subcommand(1);

  cmod::CliOptions opts;
  if (const char* env = std::getenv("CONTRACTION_MODELS_SEED"))
    opts.seed = std::strtoull(env, nullptr, 10);

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--tol", opts.tol, "verification tolerance");
    cmd->add_option("--grid-radii", opts.radii, "grid radii")->delimiter(',');
    cmd->add_option("--grid-angles", opts.angles, "angles per radius per disc");
    cmd->add_option("--rmax", opts.r_max, "maximum grid radius");
    cmd->add_option("--seed", opts.seed, "grid jitter / sampling seed");
  };

  std::string path;
  CLI::App* analyze = app.add_subcommand("analyze", "defect and symplectic analysis");
  analyze->add_option("file", path, "operator file")->required();
  add_common(analyze);

  CLI::App* verify = app.add_subcommand("verify", "run the verification suite");
  verify->add_option("file", path, "operator file")->required();
  verify->add_option("--mark", opts.mark, "mark file (default: canonical, C = t)");
  add_common(verify);

  CLI::App* synth = app.add_subcommand("synthesize", "contraction from a marked disc");
  synth->add_option("file", path, "marked-disc file")->required();
  synth->add_option("--output", opts.output, "output operator file");
  synth->add_option("--roundtrip", opts.roundtrip, "compare against this operator file");
  add_common(synth);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? 2 : 0;
  }

  if (analyze->parsed()) return cmod::run_analyze(path, opts, std::cout, std::cerr);
  if (verify->parsed()) return cmod::run_verify(path, opts, std::cout, std::cerr);
  return cmod::run_synthesize(path, opts, std::cout, std::cerr);
}
