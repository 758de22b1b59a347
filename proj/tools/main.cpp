#include <iostream>

#include <CLI11.hpp>

#include "cli.hpp"

int main(int argc, char** argv) {
  using namespace nodal_morse;
  CLI::App app{"Nodal counts and magnetic Morse indices of graph eigenvectors"};
  app.require_subcommand(1);

  std::string file;
  int n = 0;
  auto* analyze = app.add_subcommand("analyze", "Full pipeline on one instance file");
  analyze->add_option("--file", file, "Instance JSON")->required();
  analyze->add_option("--n", n, "Eigenvalue index, 1-based")->required()->check(CLI::PositiveNumber);

  cli::VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "Random campaign over connected graphs");
  verify->add_option("--trials", verify_args.trials)->required()->check(CLI::PositiveNumber);
  verify->add_option("--max-vertices", verify_args.max_vertices)->required()->check(CLI::PositiveNumber);
  verify->add_option("--max-extra-edges", verify_args.max_extra_edges)->required()->check(CLI::NonNegativeNumber);
  verify->add_option("--seed", verify_args.seed)->required();
  verify->add_flag("--json", verify_args.full_json, "Emit every per-pair record");

  std::string potential;
  int band = 0;
  int samples = 0;
  bool csv = false;
  auto* hill = app.add_subcommand("hill", "Band edges and Floquet curves of a Hill operator");
  hill->add_option("--potential", potential, "zero | const:c | cos:a | fourier:a1,b1,...")->required();
  hill->add_option("--band", band)->required()->check(CLI::PositiveNumber);
  hill->add_option("--samples", samples)->required()->check(CLI::PositiveNumber);
  hill->add_flag("--csv", csv, "alpha,lambda rows instead of JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kInputError;
  }

  if (*analyze) return cli::run_analyze(file, n, std::cout, std::cerr);
  if (*verify) {
    verify_args.threads = cli::thread_count_from_env();
    return cli::run_verify(verify_args, std::cout, std::cerr);
  }
  return cli::run_hill(potential, band, samples, csv, std::cout, std::cerr);
}
