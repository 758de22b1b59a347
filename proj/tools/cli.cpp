#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <ostream>

#include <nlohmann/json.hpp>

#include "nodal_morse/campaign.hpp"
#include "nodal_morse/errors.hpp"
#include "nodal_morse/hill.hpp"
#include "nodal_morse/hodge.hpp"
#include "nodal_morse/instance_io.hpp"
#include "nodal_morse/special_cases.hpp"
#include "nodal_morse/spectral.hpp"

namespace nodal_morse::cli {

namespace {

using nlohmann::ordered_json;

ordered_json matrix_json(const Eigen::MatrixXd& m) {
  ordered_json rows = ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

ordered_json record_json(const PairRecord& r) {
  ordered_json j;
  j["seed"] = r.seed;
  j["n"] = r.n;
  j["status"] = to_string(r.status);
  if (!r.reason.empty()) j["reason"] = r.reason;
  j["lambda_n"] = r.lambda_n;
  if (r.status == PairStatus::Skipped) return j;
  j["nu"] = r.nu;
  j["mu"] = r.mu;
  j["beta"] = r.beta;
  j["defect"] = r.defect;
  j["index_Q_grad"] = r.index_q_grad;
  j["index_Q_kernel"] = r.index_q_kernel;
  j["fd_index"] = r.fd_index;
  j["fd_nullity"] = r.fd_nullity;
  j["bounds_ok"] = r.bounds_ok;
  j["agreement"] = r.agreement;
  j["hessian_relative_discrepancy"] = r.relative_discrepancy;
  j["gradient_inf_norm"] = r.gradient_inf_norm;
  j["ill_conditioned"] = r.ill_conditioned;
  return j;
}

ordered_json instance_json(const SchrodingerOperator& op) {
  return ordered_json::parse(write_instance(op));
}

ordered_json vanishing_json(const VanishingReport& v) {
  ordered_json j;
  j["x0"] = v.x0;
  j["n_plus"] = v.n_plus;
  j["n_minus"] = v.n_minus;
  j["nullity_bound"] = v.nullity_bound;
  j["beta"] = v.beta;
  j["fd_index"] = v.fd_morse.index;
  j["fd_nullity"] = v.fd_nullity;
  j["fd_hessian"] = matrix_json(v.fd_hessian);
  j["bound_holds"] = v.bound_holds();
  return j;
}

}  // namespace

int thread_count_from_env() {
  const char* value = std::getenv("NODAL_MORSE_THREADS");
  if (value == nullptr) return 1;
  char* end = nullptr;
  const long parsed = std::strtol(value, &end, 10);
  if (end == value || *end != '\0' || parsed < 1) return 1;
  return static_cast<int>(std::min(parsed, 256L));
}

int run_analyze(const std::string& file, int n, std::ostream& out, std::ostream& log) {
  std::optional<SchrodingerOperator> op;
  try {
    op = load_instance(file);
  } catch (const Error& e) {
    log << "error: " << e.what() << '\n';
    return kInputError;
  }
  if (n < 1 || n > op->size()) {
    log << "error: --n must lie in [1, " << op->size() << "]\n";
    return kInputError;
  }

  ordered_json report;
  report["file"] = file;
  report["n"] = n;
  report["vertices"] = op->size();
  report["edges"] = op->graph().num_edges();
  report["beta"] = op->graph().beta();

  const HypothesisReport hyp = check_hypotheses(*op, n);
  report["lambda_n"] = hyp.lambda;
  report["hypotheses"] = {{"simple", hyp.simple},
                          {"gap", hyp.gap},
                          {"nonvanishing", hyp.nonvanishing},
                          {"vanishing_vertex", hyp.vanishing_vertex},
                          {"min_abs_ratio", hyp.min_abs_ratio}};

  if (!hyp.ok()) {
    report["status"] = "hypotheses_violated";
    log << "lambda_" << n << " = " << hyp.lambda << ": hypotheses violated ("
        << (hyp.simple ? "eigenvector vanishes at vertex " + std::to_string(hyp.vanishing_vertex)
                       : std::string("eigenvalue not simple"))
        << ")\n";
    if (hyp.simple) {
      try {
        const VanishingReport v = vanishing_analysis(*op, n);
        report["vanishing"] = vanishing_json(v);
        log << "vanishing at x0 = " << v.x0 << ": n+ = " << v.n_plus << ", n- = " << v.n_minus
            << ", FD nullity " << v.fd_nullity << " (bound " << v.nullity_bound << ")\n";
        if (!v.bound_holds()) {
          report["status"] = "failed";
          out << report.dump(2) << '\n';
          log << "FAIL: FD nullity below |n+ - n-|\n";
          return kTheoremMismatch;
        }
      } catch (const Error& e) {
        report["vanishing"] = {{"error", e.what()}};
      }
    }
    out << report.dump(2) << '\n';
    return kHypothesesViolated;
  }

  const FluxStencil stencil(*op);
  const PairRecord record = check_pair(*op, n, stencil);
  report["status"] = to_string(record.status);
  report["record"] = record_json(record);
  if (record.status != PairStatus::Skipped && op->graph().beta() > 0) {
    try {
      const HessianComparison c = analytic_vs_fd_hessian(*op, n, stencil, SpectralOptions{});
      report["analytic_hessian"] = matrix_json(c.analytic);
      report["fd_hessian"] = matrix_json(c.fd);
    } catch (const Error&) {
      // already reported through the record
    }
  }
  out << report.dump(2) << '\n';

  switch (record.status) {
    case PairStatus::Passed:
      log << "lambda_" << n << " = " << hyp.lambda << ": nu = " << record.nu << ", defect = " << record.defect
          << ", Morse index = " << record.fd_index << ": pass\n";
      return kPass;
    case PairStatus::Skipped:
      log << "skipped: " << record.reason << '\n';
      return kHypothesesViolated;
    case PairStatus::Failed:
      log << "FAIL: " << record.reason << '\n';
      return kTheoremMismatch;
  }
  return kTheoremMismatch;
}

int run_verify(const VerifyArgs& args, std::ostream& out, std::ostream& log) {
  CampaignOptions options;
  options.trials = args.trials;
  options.max_vertices = args.max_vertices;
  options.max_extra_edges = args.max_extra_edges;
  options.seed = args.seed;
  options.threads = args.threads;

  CampaignReport report;
  try {
    report = run_campaign(options);
  } catch (const Error& e) {
    log << "error: " << e.what() << '\n';
    return kInputError;
  }

  ordered_json doc;
  doc["parameters"] = {{"trials", args.trials},
                       {"max_vertices", args.max_vertices},
                       {"max_extra_edges", args.max_extra_edges},
                       {"seed", args.seed}};
  ordered_json failures = ordered_json::array();
  ordered_json instances = ordered_json::array();
  for (const InstanceRecord& inst : report.instances) {
    ordered_json pairs = ordered_json::array();
    for (const PairRecord& p : inst.pairs) {
      pairs.push_back(record_json(p));
      if (p.status == PairStatus::Failed) {
        failures.push_back({{"index", inst.index},
                            {"seed", inst.seed},
                            {"n", p.n},
                            {"reason", p.reason},
                            {"instance", instance_json(inst.op)}});
      }
    }
    if (!inst.error.empty()) {
      failures.push_back({{"index", inst.index},
                          {"seed", inst.seed},
                          {"reason", inst.error},
                          {"instance", instance_json(inst.op)}});
    }
    if (args.full_json) {
      ordered_json entry;
      entry["index"] = inst.index;
      entry["seed"] = inst.seed;
      entry["vertices"] = inst.op.size();
      entry["edges"] = inst.op.graph().num_edges();
      entry["beta"] = inst.op.graph().beta();
      if (!inst.error.empty()) entry["error"] = inst.error;
      entry["pairs"] = pairs;
      instances.push_back(entry);
    }
  }
  const CampaignSummary& s = report.summary;
  if (args.full_json) doc["instances"] = instances;
  doc["summary"] = {{"instances", s.instances},
                    {"trials", s.trials},
                    {"passed", s.passed},
                    {"skipped_hypotheses", s.skipped},
                    {"failures", s.failed},
                    {"max_hessian_relative_discrepancy", s.max_relative_discrepancy},
                    {"max_gradient_inf_norm", s.max_gradient}};
  doc["failures"] = failures;
  out << doc.dump(2) << '\n';

  log << s.instances << " instances, " << s.trials << " (instance, n) pairs: " << s.passed << " passed, "
      << s.skipped << " skipped, " << s.failed << " failed; max Hessian discrepancy "
      << s.max_relative_discrepancy << '\n';
  return s.failed == 0 ? kPass : kTheoremMismatch;
}

int run_hill(const std::string& potential, int band, int samples, bool csv, std::ostream& out, std::ostream& log) {
  std::optional<HillOperator> h;
  try {
    h = parse_potential(potential);
  } catch (const Error& e) {
    log << "error: " << e.what() << '\n';
    return kInputError;
  }
  if (band < 1 || samples < 1) {
    log << "error: --band and --samples must be positive\n";
    return kInputError;
  }

  BandStructure bands;
  try {
    bands = band_edges_through(*h, band);
  } catch (const Error& e) {
    log << "error: " << e.what() << '\n';
    return kTheoremMismatch;
  }

  std::vector<std::pair<double, double>> curve;
  for (int k = 0; k < samples; ++k) {
    const double alpha =
        samples == 1 ? 0.0 : -std::numbers::pi + 2.0 * std::numbers::pi * k / static_cast<double>(samples - 1);
    curve.emplace_back(alpha, floquet_eigenvalue(*h, bands, band, alpha));
  }

  ordered_json hessian;
  int code = kPass;
  try {
    const HillHessianReport r = hessian_identity_check(*h, bands, band);
    hessian = {{"edge", r.edge},
               {"delta_prime", r.delta_prime},
               {"identity", r.identity},
               {"fd_second_derivative", r.fd_second_derivative},
               {"alpha_step", r.alpha_step},
               {"relative_discrepancy", r.relative_discrepancy},
               {"morse_index", r.morse_index},
               {"expected_index", r.expected_index},
               {"sign_ok", r.sign_ok}};
    const bool ok = r.relative_discrepancy <= 1e-3 && r.morse_index == r.expected_index && r.sign_ok;
    log << "band " << band << ": lambda+ = " << r.edge << ", -2/Delta' = " << r.identity << ", FD "
        << r.fd_second_derivative << (ok ? ": pass\n" : ": FAIL\n");
    if (!ok) code = kTheoremMismatch;
  } catch (const Error& e) {
    hessian = {{"error", e.what()}};
    log << "band " << band << ": " << e.what() << '\n';
    // The identity is only claimed at simple edges.
    code = e.code() == ErrorCode::DegenerateEdge ? kHypothesesViolated : kTheoremMismatch;
  }

  if (csv) {
    out << "alpha,lambda\n";
    for (const auto& [alpha, lambda] : curve) out << format_double(alpha) << ',' << format_double(lambda) << '\n';
    return code;
  }
  ordered_json doc;
  doc["potential"] = h->description();
  doc["band"] = band;
  ordered_json edges = ordered_json::array();
  for (const BandEdge& e : bands.edges) {
    edges.push_back({{"n", e.n},
                     {"kind", to_string(e.kind)},
                     {"lambda", e.lambda},
                     {"delta_prime", e.delta_prime},
                     {"simple", e.simple}});
  }
  doc["edges"] = edges;
  ordered_json points = ordered_json::array();
  for (const auto& [alpha, lambda] : curve) points.push_back({{"alpha", alpha}, {"lambda", lambda}});
  doc["samples"] = points;
  doc["hessian"] = hessian;
  out << doc.dump(2) << '\n';
  return code;
}

}  // namespace nodal_morse::cli
