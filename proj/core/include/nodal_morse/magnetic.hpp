#pragma once

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "nodal_morse/graph.hpp"
#include "nodal_morse/schrodinger.hpp"
#include "nodal_morse/spectral.hpp"

namespace nodal_morse {

/// B([x,y]) = exp(i alpha([x,y])) for a real 1-form alpha.
class MagneticField {
 public:
  MagneticField() = default;
  explicit MagneticField(OneForm alpha) : alpha_(std::move(alpha)) {}
  static MagneticField trivial(const Graph& g) { return MagneticField(OneForm::zero(g)); }

  const OneForm& alpha() const { return alpha_; }
  /// Phase on the canonically oriented edge e.
  std::complex<double> phase(int e) const { return std::polar(1.0, alpha_[e]); }

 private:
  OneForm alpha_;
};

/// Angles on the chords of the BFS spanning tree; zero on tree edges.
struct FluxCoordinates {
  Eigen::VectorXd theta;

  OneForm to_one_form(const Graph& g) const;
  MagneticField to_field(const Graph& g) const { return MagneticField(to_one_form(g)); }
};

/// (H_B)_xx = h_xx, (H_B)_xy = h_xy exp(i alpha([x,y])). Throws GraphMismatch.
Eigen::MatrixXcd magnetic_operator(const SchrodingerOperator& op, const MagneticField& b);

/// alpha -> alpha + df. The result satisfies H_{B'} = U^* H_B U, U = diag(exp(i f)).
MagneticField gauge_transform(const Graph& g, const MagneticField& b, const Eigen::VectorXd& f);

/// A gauge function f with alpha + df = 0 on every tree edge, together with
/// the chord values of alpha + df.
struct GaugeReduction {
  Eigen::VectorXd gauge;
  FluxCoordinates flux;
};
GaugeReduction reduce_to_flux(const Graph& g, const OneForm& alpha);

/// Sorted spectrum of H_theta.
Eigen::VectorXd magnetic_spectrum(const SchrodingerOperator& op, const FluxCoordinates& theta);

/// n-th eigenvalue (1-based) of the magnetic operator in flux coordinates.
double lambda_n(const SchrodingerOperator& op, int n, const FluxCoordinates& theta);

struct MorseIndex {
  int index = 0;
  int nullity = 0;
};

/// Counts eigenvalues < -tol and in [-tol, tol].
MorseIndex morse_index_of_matrix(const Eigen::MatrixXd& m, double tol);

/// Default relative floor of the index tolerance for finite-difference Hessians.
inline constexpr double kFdIndexTolerance = 1e-8;

/// relative * (1 + ||m||_2)
double fd_index_tolerance(const Eigen::MatrixXd& hessian, double relative = kFdIndexTolerance);

struct FdOptions {
  /// Finest step h. The ladder h, 2h, ..., 2^(levels-1) h spans round-off
  /// limited (small Hessian) and truncation limited (small gap) regimes.
  double step = 1.25e-4;
  int levels = 11;  ///< at least 2
  /// Hessian eigenvalues below max(index_tolerance (1 + ||Hess||), error
  /// estimate) in magnitude count as zero.
  double index_tolerance = kFdIndexTolerance;
  SpectralOptions spectral;
};

/// Central-difference Hessian at theta = 0 in flux coordinates.
///
/// Each step s on the ladder gives the Richardson value R_s = (4 H_s - H_2s) / 3.
/// The reported Hessian is the R_s closest to its coarser neighbour R_2s,
/// which balances truncation against round-off for the function at hand.
struct FdHessian {
  Eigen::MatrixXd hessian;       ///< R_s at the selected step
  Eigen::MatrixXd hessian_h;     ///< central differences at s
  Eigen::MatrixXd hessian_2h;    ///< central differences at 2s
  Eigen::VectorXd gradient;      ///< central differences at the finest step
  double step = 0.0;             ///< selected s
  double error_estimate = 0.0;   ///< max |R_s - R_2s|, or max |H_s - H_2s| with two levels
  double richardson_discrepancy = 0.0;  ///< max |H_s - H_2s|
  bool ill_conditioned = false;  ///< error_estimate > 1e-4 (1 + ||H||)
  double index_tolerance = 0.0;  ///< absolute, used by morse()

  MorseIndex morse() const { return morse_index_of_matrix(hessian, index_tolerance); }
};

/// Spectra of H_theta at every point of the central-difference stencils on a
/// ladder of steps around theta = 0. Hessians for all eigenvalue indices, or
/// of any smooth function of the spectrum, are assembled from one sampling.
class FluxStencil {
 public:
  FluxStencil(const SchrodingerOperator& op, const FdOptions& options = {});

  int beta() const { return beta_; }
  double step() const { return step_; }
  int levels() const { return static_cast<int>(levels_.size()); }
  const Eigen::VectorXd& center() const { return center_; }

  /// Hessian of Lambda_n over the steps where lambda_n stays separated.
  /// Throws SimplicityLost if that leaves fewer than two steps.
  FdHessian hessian(int n) const;

  /// Hessian of an arbitrary function of the sorted spectrum, all steps.
  FdHessian hessian_of(const std::function<double(const Eigen::VectorXd&)>& functional) const;

  /// Number of leading steps on which lambda_n stays simple and moves by
  /// less than half its gap. Throws SimplicityLost when it is below two.
  int require_simple(int n) const;

 private:
  struct Level {
    double step = 0.0;
    std::vector<Eigen::VectorXd> plus, minus;  // +-s e_j
    // (i, j), i < j, row-major over pairs
    std::vector<Eigen::VectorXd> pp, pm, mp, mm;
  };
  const Eigen::VectorXd& at(const std::vector<Eigen::VectorXd>& v, int i, int j) const;
  Eigen::MatrixXd assemble(const Level& level, const std::function<double(const Eigen::VectorXd&)>& f) const;
  FdHessian combine(const std::function<double(const Eigen::VectorXd&)>& f, int usable) const;

  int beta_ = 0;
  double step_ = 0.0;
  double index_tolerance_ = 0.0;
  double gap_threshold_ = 0.0;
  Eigen::VectorXd center_;
  std::vector<Level> levels_;
};

/// Central-difference gradient of Lambda_n at theta = 0.
Eigen::VectorXd fd_gradient(const SchrodingerOperator& op, int n, const FdOptions& options = {});

/// Central-difference Hessian of Lambda_n at theta = 0.
FdHessian fd_hessian(const SchrodingerOperator& op, int n, const FdOptions& options = {});

}  // namespace nodal_morse
