#include "nodal_morse/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <optional>
#include <string>
#include <thread>

#include "nodal_morse/errors.hpp"
#include "nodal_morse/hodge.hpp"
#include "nodal_morse/nodal.hpp"
#include "nodal_morse/spectral.hpp"

namespace nodal_morse {

const char* to_string(PairStatus status) {
  switch (status) {
    case PairStatus::Passed:
      return "passed";
    case PairStatus::Skipped:
      return "skipped";
    case PairStatus::Failed:
      return "failed";
  }
  return "unknown";
}

PairRecord check_pair(const SchrodingerOperator& op, int n, const FluxStencil& stencil,
                      const PairCheckOptions& options) {
  PairRecord r;
  r.n = n;
  r.beta = op.graph().beta();
  const HypothesisReport hyp = check_hypotheses(op, n, options.fd.spectral);
  r.lambda_n = hyp.lambda;
  if (!hyp.simple) {
    r.reason = "lambda_n is not simple";
    return r;
  }
  if (!hyp.nonvanishing) {
    r.reason = "phi_n vanishes at vertex " + std::to_string(hyp.vanishing_vertex);
    return r;
  }
  try {
    stencil.require_simple(n);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::SimplicityLost) throw;
    r.reason = e.what();
    return r;
  }

  try {
    const HessianComparison c = analytic_vs_fd_hessian(op, n, stencil, options.fd.spectral, options.form_tolerance);
    const NodalReport nodal = nodal_report(op, n, options.fd.spectral);
    r.nu = nodal.nu;
    r.mu = nodal.mu;
    r.defect = nodal.defect;
    r.bounds_ok = nodal.bounds_ok();
    r.index_q_grad = c.q_grad.index;
    r.index_q_kernel = c.q_kernel.index;
    r.fd_index = c.fd_morse.index;
    r.fd_nullity = c.fd_morse.nullity;
    r.relative_discrepancy = c.relative_discrepancy;
    r.ill_conditioned = c.ill_conditioned;
    r.gradient_inf_norm = c.fd_gradient.size() > 0 ? c.fd_gradient.lpNorm<Eigen::Infinity>() : 0.0;
    r.agreement = r.index_q_grad == n - 1 && r.index_q_kernel == r.defect && r.fd_index == r.defect &&
                  r.fd_nullity == 0;
    r.hessian_ok = r.beta == 0 || r.relative_discrepancy <= options.hessian_tolerance;
  } catch (const Error& e) {
    r.status = PairStatus::Failed;
    r.reason = e.what();
    return r;
  }

  std::vector<std::string> problems;
  if (!r.bounds_ok) problems.emplace_back("nodal bounds violated");
  if (r.index_q_grad != n - 1) problems.emplace_back("index of Q on gradients differs from n-1");
  if (r.index_q_kernel != r.defect) problems.emplace_back("index of Q on ker d* differs from the nodal defect");
  if (r.fd_index != r.defect) problems.emplace_back("FD Morse index differs from the nodal defect");
  if (r.fd_nullity != 0) problems.emplace_back("FD Hessian is degenerate");
  if (!r.hessian_ok) problems.emplace_back("analytic and FD Hessians disagree");
  if (problems.empty()) {
    r.status = PairStatus::Passed;
  } else {
    r.status = PairStatus::Failed;
    for (std::size_t k = 0; k < problems.size(); ++k) r.reason += (k ? "; " : "") + problems[k];
  }
  return r;
}

std::vector<PairRecord> check_operator(const SchrodingerOperator& op, const PairCheckOptions& options) {
  const FluxStencil stencil(op, options.fd);
  std::vector<PairRecord> out;
  for (int n = 1; n <= op.size(); ++n) out.push_back(check_pair(op, n, stencil, options));
  return out;
}

namespace {

bool connected(int nv, const std::vector<std::pair<int, int>>& edges) {
  DisjointSets sets(nv);
  for (const auto& [u, v] : edges) sets.unite(u, v);
  return sets.components() == 1;
}

}  // namespace

Graph random_connected_graph(std::mt19937_64& rng, int max_vertices, int max_extra_edges) {
  if (max_vertices < 1 || max_extra_edges < 0) {
    throw Error(ErrorCode::InvalidRange, "graph size parameters must be positive");
  }
  const int nv = max_vertices == 1 ? 1 : std::uniform_int_distribution<int>(2, max_vertices)(rng);
  const int pairs = nv * (nv - 1) / 2;
  const int max_beta = std::min(max_extra_edges, pairs - (nv - 1));
  const int target = std::uniform_int_distribution<int>(0, std::max(max_beta, 0))(rng);
  if (nv == 1) return Graph(1, {});

  const double p = static_cast<double>(nv - 1 + target) / pairs;
  std::bernoulli_distribution keep(p);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < nv; ++u) {
      for (int v = u + 1; v < nv; ++v) {
        if (keep(rng)) edges.emplace_back(u, v);
      }
    }
    const int beta = static_cast<int>(edges.size()) - nv + 1;
    if (beta < 0 || beta > max_extra_edges || !connected(nv, edges)) continue;
    return Graph(nv, edges);
  }

  // Random recursive tree plus `target` distinct chords.
  std::vector<std::pair<int, int>> edges;
  for (int v = 1; v < nv; ++v) edges.emplace_back(std::uniform_int_distribution<int>(0, v - 1)(rng), v);
  std::vector<std::pair<int, int>> spare;
  for (int u = 0; u < nv; ++u) {
    for (int v = u + 1; v < nv; ++v) {
      const bool used = std::any_of(edges.begin(), edges.end(), [&](const auto& e) {
        return std::minmax(e.first, e.second) == std::minmax(u, v);
      });
      if (!used) spare.emplace_back(u, v);
    }
  }
  std::shuffle(spare.begin(), spare.end(), rng);
  edges.insert(edges.end(), spare.begin(), spare.begin() + target);
  return Graph(nv, edges);
}

std::vector<std::uint64_t> instance_seeds(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::vector<std::uint64_t> out(static_cast<std::size_t>(std::max(count, 0)));
  for (auto& s : out) s = rng();
  return out;
}

SchrodingerOperator campaign_instance(std::uint64_t seed, int max_vertices, int max_extra_edges) {
  std::mt19937_64 rng(seed);
  const Graph g = random_connected_graph(rng, max_vertices, max_extra_edges);
  return random_operator(g, rng());
}

CampaignReport run_campaign(const CampaignOptions& options) {
  if (options.trials < 1 || options.max_vertices < 1 || options.max_extra_edges < 0) {
    throw Error(ErrorCode::InvalidRange, "campaign parameters must be positive");
  }
  const std::vector<std::uint64_t> seeds = instance_seeds(options.seed, options.trials);
  std::vector<std::optional<InstanceRecord>> slots(seeds.size());

  auto work = [&](std::size_t i) {
    SchrodingerOperator op = campaign_instance(seeds[i], options.max_vertices, options.max_extra_edges);
    InstanceRecord record{static_cast<int>(i), seeds[i], op, {}, {}};
    try {
      record.pairs = check_operator(op, options.check);
    } catch (const Error& e) {
      record.error = e.what();
    }
    for (PairRecord& p : record.pairs) p.seed = seeds[i];
    slots[i] = std::move(record);
  };

  const int threads = std::clamp(options.threads, 1, std::max(1, options.trials));
  if (threads == 1) {
    for (std::size_t i = 0; i < seeds.size(); ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < seeds.size(); i = next++) work(i);
      });
    }
    for (std::thread& t : pool) t.join();
  }

  CampaignReport report;
  report.options = options;
  CampaignSummary& s = report.summary;
  for (auto& slot : slots) {
    InstanceRecord& record = *slot;
    ++s.instances;
    if (!record.error.empty()) {
      ++s.trials;
      ++s.failed;
    }
    for (const PairRecord& p : record.pairs) {
      ++s.trials;
      switch (p.status) {
        case PairStatus::Passed:
          ++s.passed;
          break;
        case PairStatus::Skipped:
          ++s.skipped;
          break;
        case PairStatus::Failed:
          ++s.failed;
          break;
      }
      if (p.status != PairStatus::Skipped) {
        s.max_relative_discrepancy = std::max(s.max_relative_discrepancy, p.relative_discrepancy);
        s.max_gradient = std::max(s.max_gradient, p.gradient_inf_norm);
      }
    }
    report.instances.push_back(std::move(record));
  }
  return report;
}

}  // namespace nodal_morse
