#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "nodal_morse/hodge.hpp"
#include "nodal_morse/magnetic.hpp"
#include "nodal_morse/schrodinger.hpp"

namespace nodal_morse {

enum class PairStatus { Passed, Skipped, Failed };

const char* to_string(PairStatus status);

/// Outcome of the full pipeline for one (operator, n).
struct PairRecord {
  std::uint64_t seed = 0;
  int n = 0;
  PairStatus status = PairStatus::Skipped;
  std::string reason;  ///< empty when passed
  double lambda_n = 0.0;
  int nu = 0;
  int mu = 0;
  int beta = 0;
  int defect = 0;
  int index_q_grad = 0;
  int index_q_kernel = 0;
  int fd_index = 0;
  int fd_nullity = 0;
  bool bounds_ok = false;
  bool agreement = false;  ///< the index identities and zero nullity
  double relative_discrepancy = 0.0;  ///< analytic vs FD Hessian
  bool hessian_ok = false;
  bool ill_conditioned = false;
  double gradient_inf_norm = 0.0;
};

struct PairCheckOptions {
  FdOptions fd;
  /// Bound on max |analytic - FD| / max |analytic|.
  double hessian_tolerance = 1e-4;
  /// Relative index tolerance for restrictions of Q.
  double form_tolerance = kFormIndexTolerance;
};

/// Hypotheses, nodal counts, Q indices and the FD Hessian for eigenvalue n,
/// reusing a stencil built on `op`. Hypothesis violations and stencil
/// simplicity loss are Skipped; any falsified identity is Failed.
PairRecord check_pair(const SchrodingerOperator& op, int n, const FluxStencil& stencil,
                      const PairCheckOptions& options = {});

/// Every n of one operator, sharing one stencil.
std::vector<PairRecord> check_operator(const SchrodingerOperator& op, const PairCheckOptions& options = {});

struct CampaignOptions {
  int trials = 1;  ///< number of random instances
  int max_vertices = 10;
  int max_extra_edges = 6;
  std::uint64_t seed = 0;
  int threads = 1;
  PairCheckOptions check;
};

struct InstanceRecord {
  int index = 0;
  std::uint64_t seed = 0;
  SchrodingerOperator op;
  std::vector<PairRecord> pairs;
  std::string error;  ///< set when the instance could not be analysed at all
};

struct CampaignSummary {
  int instances = 0;
  int trials = 0;  ///< (instance, n) pairs
  int passed = 0;
  int skipped = 0;
  int failed = 0;
  double max_relative_discrepancy = 0.0;
  double max_gradient = 0.0;
};

struct CampaignReport {
  CampaignOptions options;
  std::vector<InstanceRecord> instances;  ///< in seed order
  CampaignSummary summary;
};

/// Connected G(V, p) graph with V uniform in [2, max_vertices] and at most
/// max_extra_edges independent cycles; p aims at a uniformly drawn cycle
/// count. Falls back to a random spanning tree plus chords after 1000
/// rejected draws.
Graph random_connected_graph(std::mt19937_64& rng, int max_vertices, int max_extra_edges);

/// Per-instance seeds, drawn in order from the campaign seed.
std::vector<std::uint64_t> instance_seeds(std::uint64_t seed, int count);

/// Operator of instance `seed`: graph and weights both derived from it.
SchrodingerOperator campaign_instance(std::uint64_t seed, int max_vertices, int max_extra_edges);

/// Runs the campaign on `threads` workers; records are assembled in seed order.
CampaignReport run_campaign(const CampaignOptions& options);

}  // namespace nodal_morse
