#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace nodal_morse {

/// -d^2/dx^2 + q(x) with 1-periodic q, integrated with fixed-step RK4.
///
/// q is sampled once on the half-step grid k / (2N), k = 0..2N, which holds
/// every abscissa the RK4 stages touch.
class HillOperator {
 public:
  explicit HillOperator(std::function<double(double)> potential, int steps = 4096,
                        std::string description = "custom");

  /// q(x mod 1)
  double potential(double x) const;
  int steps() const { return steps_; }
  const std::string& description() const { return description_; }
  /// q(x) = q(1 - x) on the sample grid (to 1e-12 relative) and N even.
  bool even() const { return even_; }
  double min_potential() const { return min_q_; }
  double max_potential() const { return max_q_; }
  /// q at k / (2N)
  const std::vector<double>& half_grid() const { return samples_; }

 private:
  std::function<double(double)> q_;
  int steps_;
  std::string description_;
  std::vector<double> samples_;
  double min_q_ = 0.0;
  double max_q_ = 0.0;
  bool even_ = false;
};

/// "zero", "const:c", "cos:a" (a cos 2 pi x), "fourier:a1,b1,a2,b2,..."
/// (sum a_k cos 2 pi k x + b_k sin 2 pi k x). Throws Error(ParseError).
HillOperator parse_potential(const std::string& spec, int steps = 4096);

/// [[y1(1), y2(1)], [y1'(1), y2'(1)]] for (H - lambda) y = 0 with
/// y1(0) = 1, y1'(0) = 0, y2(0) = 0, y2'(0) = 1.
Eigen::Matrix2d monodromy(const HillOperator& h, double lambda);

/// y1, y1', y2, y2' at x = 1/2, integrated over the first N/2 steps.
struct HalfPeriodValues {
  double y1 = 0.0;
  double d1 = 0.0;
  double y2 = 0.0;
  double d2 = 0.0;
};
HalfPeriodValues half_period(const HillOperator& h, double lambda);

/// y1(1) + y2'(1)
double discriminant(const HillOperator& h, double lambda);

enum class EdgeKind { Periodic, Antiperiodic };

const char* to_string(EdgeKind kind);

/// Delta - 2 (periodic) or Delta + 2 (antiperiodic). For even q these are
/// 4 y1'(1/2) y2(1/2) and 4 y1(1/2) y2'(1/2), which keeps full relative
/// precision inside gaps far narrower than the rounding level of Delta.
double edge_function(const HillOperator& h, double lambda, EdgeKind kind);

/// Central difference with step 1e-5 (1 + |lambda|); for even q the product
/// rule over central differences of the half-period factors.
double discriminant_derivative(const HillOperator& h, double lambda);

/// |Delta(lambda)| <= 2
bool in_spectrum(const HillOperator& h, double lambda);

struct BandEdge {
  int n = 0;  ///< band index; lambda_n^+ or lambda_n^- bounds band n
  EdgeKind kind = EdgeKind::Periodic;
  double lambda = 0.0;
  double delta_prime = 0.0;
  bool simple = true;
};

struct Band {
  BandEdge lower;
  BandEdge upper;
  const BandEdge& periodic() const { return lower.kind == EdgeKind::Periodic ? lower : upper; }
  const BandEdge& antiperiodic() const { return lower.kind == EdgeKind::Antiperiodic ? lower : upper; }
};

struct BandScanOptions {
  /// Lower end of the scan; std::nullopt selects min q - 1.
  std::optional<double> lambda_lo;
  double step = 0.05;
  /// |Delta - (+-2)| at a local extremum below which the extremum counts as a
  /// double root.
  double tangency_tolerance = 1e-12;
  /// For even q: roots of the two half-period factors closer than this,
  /// relative to 1 + |lambda|, form a double root.
  double coincidence_tolerance = 1e-12;
  /// Bisection stops at this interval width (adjacent doubles for even q).
  double root_tolerance = 1e-10;
};

struct BandStructure {
  std::vector<BandEdge> edges;  ///< ascending, double roots listed twice
  double lambda_lo = 0.0;
  double lambda_max = 0.0;

  /// Both edges of band n, if inside the window.
  std::optional<Band> band(int n) const;
  int complete_bands() const;
};

/// Edges of bands 1..n_max inside [lambda_lo, lambda_max], with interlacing
/// verified. Throws ScanTooCoarse.
BandStructure band_edges(const HillOperator& h, double lambda_max, int n_max,
                         const BandScanOptions& options = {});

/// Scans until band n is complete.
BandStructure band_edges_through(const HillOperator& h, int n, const BandScanOptions& options = {});

/// Lambda_n(alpha): the solution of Delta(lambda) = 2 cos(alpha) in band n.
/// Throws BandNotFound, NonMonotone.
double floquet_eigenvalue(const HillOperator& h, const BandStructure& bands, int n, double alpha);
double floquet_eigenvalue(const HillOperator& h, int n, double alpha);

struct HillHessianReport {
  int n = 0;
  double edge = 0.0;            ///< lambda_n^+
  double delta_prime = 0.0;     ///< Delta'(lambda_n^+)
  double identity = 0.0;        ///< -2 / Delta'(lambda_n^+)
  double fd_second_derivative = 0.0;
  double alpha_step = 0.0;
  double relative_discrepancy = 0.0;
  int morse_index = 0;          ///< from the sign of the finite-difference value
  int expected_index = 0;       ///< 0 for n odd, 1 for n even
  bool sign_ok = false;         ///< sign(Delta') == (-1)^n
};

/// Compares the finite-difference curvature of Lambda_n at alpha = 0 with
/// -2 / Delta'(lambda_n^+). Throws DegenerateEdge, BandNotFound.
HillHessianReport hessian_identity_check(const HillOperator& h, const BandStructure& bands, int n);
HillHessianReport hessian_identity_check(const HillOperator& h, int n);

}  // namespace nodal_morse
