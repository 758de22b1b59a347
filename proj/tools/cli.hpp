#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace nodal_morse::cli {

/// Exit codes shared by all subcommands.
enum Exit : int {
  kPass = 0,
  kTheoremMismatch = 1,  ///< a theorem identity failed
  kInputError = 2,
  kHypothesesViolated = 3,
};

int run_analyze(const std::string& file, int n, std::ostream& out, std::ostream& log);

struct VerifyArgs {
  int trials = 0;
  int max_vertices = 0;
  int max_extra_edges = 0;
  std::uint64_t seed = 0;
  bool full_json = false;
  int threads = 1;
};
int run_verify(const VerifyArgs& args, std::ostream& out, std::ostream& log);

int run_hill(const std::string& potential, int band, int samples, bool csv, std::ostream& out, std::ostream& log);

/// NODAL_MORSE_THREADS, or 1 when unset or invalid.
int thread_count_from_env();

}  // namespace nodal_morse::cli
