#include "nodal_morse/hill.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "nodal_morse/errors.hpp"

namespace nodal_morse {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double parse_number(const std::string& text, const std::string& spec) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw Error(ErrorCode::ParseError, "bad number '" + text + "' in potential '" + spec + "'");
  }
  if (used != text.size() || !std::isfinite(value)) {
    throw Error(ErrorCode::ParseError, "bad number '" + text + "' in potential '" + spec + "'");
  }
  return value;
}

}  // namespace

HillOperator::HillOperator(std::function<double(double)> potential, int steps, std::string description)
    : q_(std::move(potential)), steps_(steps), description_(std::move(description)) {
  if (steps_ < 1) throw Error(ErrorCode::InvalidRange, "RK4 needs at least one step");
  samples_.resize(2 * static_cast<std::size_t>(steps_) + 1);
  for (std::size_t k = 0; k < samples_.size(); ++k) {
    samples_[k] = q_(static_cast<double>(k) / (2.0 * steps_));
  }
  const auto [lo, hi] = std::minmax_element(samples_.begin(), samples_.end());
  min_q_ = *lo;
  max_q_ = *hi;
  const double slack = 1e-12 * (1.0 + std::max(std::abs(min_q_), std::abs(max_q_)));
  even_ = steps_ % 2 == 0;
  for (std::size_t k = 0; even_ && k < samples_.size(); ++k) {
    even_ = std::abs(samples_[k] - samples_[samples_.size() - 1 - k]) <= slack;
  }
}

double HillOperator::potential(double x) const { return q_(x - std::floor(x)); }

HillOperator parse_potential(const std::string& spec, int steps) {
  if (spec == "zero") return HillOperator([](double) { return 0.0; }, steps, spec);
  const auto colon = spec.find(':');
  if (colon == std::string::npos) {
    throw Error(ErrorCode::ParseError, "unknown potential '" + spec + "'");
  }
  const std::string kind = spec.substr(0, colon);
  const std::string args = spec.substr(colon + 1);
  if (kind == "const") {
    const double c = parse_number(args, spec);
    return HillOperator([c](double) { return c; }, steps, spec);
  }
  if (kind == "cos") {
    const double a = parse_number(args, spec);
    return HillOperator([a](double x) { return a * std::cos(kTwoPi * x); }, steps, spec);
  }
  if (kind == "fourier") {
    std::vector<double> coefficients;
    std::stringstream stream(args);
    std::string item;
    while (std::getline(stream, item, ',')) coefficients.push_back(parse_number(item, spec));
    if (coefficients.empty() || coefficients.size() % 2 != 0) {
      throw Error(ErrorCode::ParseError, "fourier potential needs pairs a_k,b_k in '" + spec + "'");
    }
    return HillOperator(
        [coefficients](double x) {
          double total = 0.0;
          for (std::size_t k = 0; 2 * k < coefficients.size(); ++k) {
            const double arg = kTwoPi * static_cast<double>(k + 1) * x;
            total += coefficients[2 * k] * std::cos(arg) + coefficients[2 * k + 1] * std::sin(arg);
          }
          return total;
        },
        steps, spec);
  }
  throw Error(ErrorCode::ParseError, "unknown potential kind '" + kind + "'");
}

namespace {

// Both normalized solutions of y'' = (q - lambda) y over the first `steps` RK4 steps.
HalfPeriodValues propagate(const HillOperator& h, double lambda, int steps) {
  // Y' = A(x) Y with A = [[0, 1], [q - lambda, 0]], both solutions at once.
  const std::vector<double>& q = h.half_grid();
  const double dx = 1.0 / h.steps();
  HalfPeriodValues y{1.0, 0.0, 0.0, 1.0};
  for (int k = 0; k < steps; ++k) {
    const double c0 = q[2 * k] - lambda;
    const double cm = q[2 * k + 1] - lambda;
    const double c1 = q[2 * k + 2] - lambda;
    auto step = [&](double& v, double& d) {
      const double k1y = d, k1d = c0 * v;
      const double k2y = d + 0.5 * dx * k1d, k2d = cm * (v + 0.5 * dx * k1y);
      const double k3y = d + 0.5 * dx * k2d, k3d = cm * (v + 0.5 * dx * k2y);
      const double k4y = d + dx * k3d, k4d = c1 * (v + dx * k3y);
      v += dx / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
      d += dx / 6.0 * (k1d + 2.0 * k2d + 2.0 * k3d + k4d);
    };
    step(y.y1, y.d1);
    step(y.y2, y.d2);
  }
  return y;
}

double derivative_step(double lambda) { return 1e-5 * (1.0 + std::abs(lambda)); }

}  // namespace

HalfPeriodValues half_period(const HillOperator& h, double lambda) {
  if (h.steps() % 2 != 0) throw Error(ErrorCode::InvalidRange, "half period needs an even step count");
  return propagate(h, lambda, h.steps() / 2);
}

Eigen::Matrix2d monodromy(const HillOperator& h, double lambda) {
  const HalfPeriodValues y = propagate(h, lambda, h.steps());
  Eigen::Matrix2d m;
  m << y.y1, y.y2, y.d1, y.d2;
  return m;
}

double discriminant(const HillOperator& h, double lambda) { return monodromy(h, lambda).trace(); }

const char* to_string(EdgeKind kind) { return kind == EdgeKind::Periodic ? "periodic" : "antiperiodic"; }

// For even q, y1 is even and y2 odd about 1/2, so with unit Wronskian
// Delta = 2 (y1 y2' + y1' y2) at 1/2 splits as 2 + 4 y1' y2 = -2 + 4 y1 y2'.
double edge_function(const HillOperator& h, double lambda, EdgeKind kind) {
  const double target = kind == EdgeKind::Periodic ? 2.0 : -2.0;
  if (!h.even()) return discriminant(h, lambda) - target;
  const HalfPeriodValues y = half_period(h, lambda);
  return kind == EdgeKind::Periodic ? 4.0 * y.d1 * y.y2 : 4.0 * y.y1 * y.d2;
}

double discriminant_derivative(const HillOperator& h, double lambda) {
  const double s = derivative_step(lambda);
  if (!h.even()) return (discriminant(h, lambda + s) - discriminant(h, lambda - s)) / (2.0 * s);
  const HalfPeriodValues y = half_period(h, lambda);
  const HalfPeriodValues up = half_period(h, lambda + s);
  const HalfPeriodValues down = half_period(h, lambda - s);
  const double dd1 = (up.d1 - down.d1) / (2.0 * s);
  const double dy2 = (up.y2 - down.y2) / (2.0 * s);
  return 4.0 * (dd1 * y.y2 + y.d1 * dy2);
}

bool in_spectrum(const HillOperator& h, double lambda) { return std::abs(discriminant(h, lambda)) <= 2.0; }

std::optional<Band> BandStructure::band(int n) const {
  std::optional<BandEdge> lower, upper;
  for (const BandEdge& e : edges) {
    if (e.n != n) continue;
    if (!lower) {
      lower = e;
    } else {
      upper = e;
    }
  }
  if (!lower || !upper) return std::nullopt;
  return Band{*lower, *upper};
}

int BandStructure::complete_bands() const { return static_cast<int>(edges.size() / 2); }

namespace {

// Bisection on a sign change of f over [a, b]; runs to the tolerance or to
// adjacent doubles.
template <class F>
double bisect(F&& f, double a, double b, double tolerance) {
  double fa = f(a);
  for (int iter = 0; iter < 200 && b - a > tolerance; ++iter) {
    const double mid = 0.5 * (a + b);
    if (mid <= a || mid >= b) break;
    const double fm = f(mid);
    if ((fm < 0.0) == (fa < 0.0)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

struct Root {
  double lambda;
  EdgeKind kind;
  bool simple;
};

EdgeKind expected_kind(std::size_t position) {
  if (position == 0) return EdgeKind::Periodic;
  return ((position - 1) / 2) % 2 == 0 ? EdgeKind::Antiperiodic : EdgeKind::Periodic;
}

}  // namespace

namespace {

std::vector<Root> generic_roots(const HillOperator& h, const std::vector<double>& grid,
                                const BandScanOptions& options) {
  const std::size_t count = grid.size() - 1;
  std::vector<double> delta(grid.size());
  for (std::size_t i = 0; i <= count; ++i) delta[i] = discriminant(h, grid[i]);

  std::vector<Root> roots;
  for (const double target : {2.0, -2.0}) {
    const EdgeKind kind = target > 0 ? EdgeKind::Periodic : EdgeKind::Antiperiodic;
    const double sense = target > 0 ? 1.0 : -1.0;  // look for maxima near +2, minima near -2
    auto g = [&](double lambda) { return discriminant(h, lambda) - target; };
    for (std::size_t i = 0; i < count; ++i) {
      if ((delta[i] - target < 0.0) != (delta[i + 1] - target < 0.0)) {
        roots.push_back({bisect(g, grid[i], grid[i + 1], options.root_tolerance), kind, true});
      }
    }
    // Two roots inside one cell, or a tangency: a local extremum of Delta
    // whose neighbours all lie strictly on the near side of the target.
    for (std::size_t i = 1; i < count; ++i) {
      const double left = sense * delta[i - 1], mid = sense * delta[i], right = sense * delta[i + 1];
      if (!(mid >= left && mid > right)) continue;
      if (sense * (delta[i - 1] - target) >= 0.0 || sense * (delta[i] - target) >= 0.0 ||
          sense * (delta[i + 1] - target) >= 0.0) {
        continue;
      }
      auto slope = [&](double lambda) { return sense * discriminant_derivative(h, lambda); };
      const double peak = bisect(slope, grid[i - 1], grid[i + 1], 1e-13 * (1.0 + std::abs(grid[i])));
      const double excess = sense * (discriminant(h, peak) - target);
      if (excess > options.tangency_tolerance) {
        roots.push_back({bisect(g, grid[i - 1], peak, options.root_tolerance), kind, true});
        roots.push_back({bisect(g, peak, grid[i + 1], options.root_tolerance), kind, true});
      } else if (excess >= -options.tangency_tolerance) {
        roots.push_back({peak, kind, false});
        roots.push_back({peak, kind, false});
      }
    }
  }
  return roots;
}

// Edges of an even potential: the zeros of y1'(1/2) and y2(1/2) (periodic)
// and of y1(1/2) and y2'(1/2) (antiperiodic). Each factor has simple zeros
// (Neumann/Dirichlet spectra of the half period), so every edge is a plain
// sign change of one factor; coinciding zeros of the two factors of one
// kind make a double root.
std::vector<Root> even_roots(const HillOperator& h, const std::vector<double>& grid,
                             const BandScanOptions& options) {
  using Factor = double (*)(const HalfPeriodValues&);
  struct Track {
    Factor factor;
    EdgeKind kind;
  };
  const Track tracks[] = {
      {[](const HalfPeriodValues& y) { return y.d1; }, EdgeKind::Periodic},
      {[](const HalfPeriodValues& y) { return y.y2; }, EdgeKind::Periodic},
      {[](const HalfPeriodValues& y) { return y.y1; }, EdgeKind::Antiperiodic},
      {[](const HalfPeriodValues& y) { return y.d2; }, EdgeKind::Antiperiodic},
  };
  std::vector<HalfPeriodValues> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) values[i] = half_period(h, grid[i]);

  std::vector<std::vector<double>> zeros(4);
  for (int t = 0; t < 4; ++t) {
    const Factor f = tracks[t].factor;
    auto g = [&](double lambda) { return f(half_period(h, lambda)); };
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
      if ((f(values[i]) < 0.0) != (f(values[i + 1]) < 0.0)) zeros[t].push_back(bisect(g, grid[i], grid[i + 1], 0.0));
    }
  }

  std::vector<Root> roots;
  for (int t = 0; t < 4; t += 2) {
    const EdgeKind kind = tracks[t].kind;
    std::vector<double>& a = zeros[t];
    std::vector<double>& b = zeros[t + 1];
    std::vector<bool> paired(b.size(), false);
    for (const double x : a) {
      bool simple = true;
      for (std::size_t j = 0; j < b.size(); ++j) {
        if (!paired[j] && std::abs(b[j] - x) <= options.coincidence_tolerance * (1.0 + std::abs(x))) {
          const double mean = 0.5 * (x + b[j]);
          roots.push_back({mean, kind, false});
          roots.push_back({mean, kind, false});
          paired[j] = true;
          simple = false;
          break;
        }
      }
      if (simple) roots.push_back({x, kind, true});
    }
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (!paired[j]) roots.push_back({b[j], kind, true});
    }
  }
  return roots;
}

}  // namespace

BandStructure band_edges(const HillOperator& h, double lambda_max, int n_max, const BandScanOptions& options) {
  const double lo = options.lambda_lo.value_or(h.min_potential() - 1.0);
  if (!(lambda_max > lo)) throw Error(ErrorCode::InvalidRange, "empty scan window");
  if (!(edge_function(h, lo, EdgeKind::Periodic) > 0.0)) {
    throw Error(ErrorCode::ScanTooCoarse, "scan starts inside the spectrum");
  }
  const auto count = static_cast<std::size_t>(std::ceil((lambda_max - lo) / options.step));
  std::vector<double> grid(count + 1);
  for (std::size_t i = 0; i <= count; ++i) grid[i] = std::min(lo + static_cast<double>(i) * options.step, lambda_max);

  std::vector<Root> roots = h.even() ? even_roots(h, grid, options) : generic_roots(h, grid, options);
  std::sort(roots.begin(), roots.end(), [](const Root& a, const Root& b) { return a.lambda < b.lambda; });

  BandStructure out;
  out.lambda_lo = lo;
  out.lambda_max = lambda_max;
  for (std::size_t p = 0; p < roots.size(); ++p) {
    const Root& r = roots[p];
    const int band = static_cast<int>(p / 2) + 1;
    if (r.kind != expected_kind(p)) {
      throw Error(ErrorCode::ScanTooCoarse, "band edges out of order near lambda = " + std::to_string(r.lambda));
    }
    if (p > 0) {
      const Root& prev = roots[p - 1];
      const bool inside_band = p % 2 == 1;
      if (inside_band && !(r.lambda > prev.lambda)) {
        throw Error(ErrorCode::ScanTooCoarse, "band " + std::to_string(band) + " has zero width");
      }
      if (!inside_band && r.lambda == prev.lambda && (r.simple || prev.simple)) {
        throw Error(ErrorCode::ScanTooCoarse, "coincident simple edges at " + std::to_string(r.lambda));
      }
    }
    if (band > n_max) break;
    out.edges.push_back({band, r.kind, r.lambda, discriminant_derivative(h, r.lambda), r.simple});
  }
  return out;
}

BandStructure band_edges_through(const HillOperator& h, int n, const BandScanOptions& options) {
  if (n < 1) throw Error(ErrorCode::BandNotFound, "band index must be positive");
  double lambda_max = std::max(h.max_potential(), 0.0) + std::pow(n * std::numbers::pi, 2) + 5.0;
  for (int attempt = 0; attempt < 8; ++attempt) {
    BandStructure bands = band_edges(h, lambda_max, n, options);
    if (bands.band(n)) return bands;
    lambda_max *= 1.5;
  }
  throw Error(ErrorCode::BandNotFound, "band " + std::to_string(n) + " not found");
}

double floquet_eigenvalue(const HillOperator& h, const BandStructure& bands, int n, double alpha) {
  const std::optional<Band> band = bands.band(n);
  if (!band) throw Error(ErrorCode::BandNotFound, "band " + std::to_string(n) + " outside the scanned window");
  const double s = std::sin(0.5 * alpha);
  const double lift = 4.0 * s * s;  // 2 - 2 cos(alpha), without cancellation
  if (lift == 0.0) return band->periodic().lambda;
  if (lift >= 4.0) return band->antiperiodic().lambda;
  // Delta - 2 cos(alpha) = (Delta - 2) + 4 sin^2(alpha/2) = (Delta + 2) - 4 cos^2(alpha/2).
  const double c = std::cos(0.5 * alpha);
  auto f = [&](double lambda) {
    return lift <= 2.0 ? edge_function(h, lambda, EdgeKind::Periodic) + lift
                       : edge_function(h, lambda, EdgeKind::Antiperiodic) - 4.0 * c * c;
  };
  const double a = band->lower.lambda;
  const double b = band->upper.lambda;
  if ((f(a) < 0.0) == (f(b) < 0.0)) {
    throw Error(ErrorCode::NonMonotone, "Delta - 2 cos(alpha) does not change sign across band " + std::to_string(n));
  }
  return bisect(f, a, b, 0.0);
}

double floquet_eigenvalue(const HillOperator& h, int n, double alpha) {
  return floquet_eigenvalue(h, band_edges_through(h, n), n, alpha);
}

HillHessianReport hessian_identity_check(const HillOperator& h, const BandStructure& bands, int n) {
  const std::optional<Band> band = bands.band(n);
  if (!band) throw Error(ErrorCode::BandNotFound, "band " + std::to_string(n) + " outside the scanned window");
  const BandEdge& edge = band->periodic();
  if (!edge.simple || edge.delta_prime == 0.0) {
    throw Error(ErrorCode::DegenerateEdge, "lambda_" + std::to_string(n) + "^+ is a double root");
  }
  HillHessianReport r;
  r.n = n;
  r.edge = edge.lambda;
  r.delta_prime = edge.delta_prime;
  r.identity = -2.0 / edge.delta_prime;

  // Keep Lambda_n - lambda_n^+ ~ alpha^2 / |Delta'| a small fraction of the
  // distance to the nearest other edge so the quadratic regime holds.
  // The nearest edge may belong to band n + 1, which `bands` need not hold.
  std::optional<BandStructure> wider;
  if (!bands.band(n + 1)) wider = band_edges_through(h, n + 1);
  const BandStructure& neighbours = wider ? *wider : bands;
  double reach = std::numeric_limits<double>::infinity();
  for (const BandEdge& other : neighbours.edges) {
    if (other.n == edge.n && other.kind == edge.kind) continue;
    reach = std::min(reach, std::abs(other.lambda - edge.lambda));
  }
  r.alpha_step = 0.05 * std::sqrt(std::abs(edge.delta_prime) * reach);
  auto curvature = [&](double alpha) {
    return 2.0 * (floquet_eigenvalue(h, bands, n, alpha) - edge.lambda) / (alpha * alpha);
  };
  const double fine = curvature(r.alpha_step);
  const double coarse = curvature(2.0 * r.alpha_step);
  r.fd_second_derivative = (4.0 * fine - coarse) / 3.0;
  r.relative_discrepancy = std::abs(r.fd_second_derivative - r.identity) / std::abs(r.identity);
  r.morse_index = r.fd_second_derivative < 0.0 ? 1 : 0;
  r.expected_index = n % 2 == 0 ? 1 : 0;
  r.sign_ok = (edge.delta_prime > 0.0) == (n % 2 == 0);
  return r;
}

HillHessianReport hessian_identity_check(const HillOperator& h, int n) {
  return hessian_identity_check(h, band_edges_through(h, n), n);
}

}  // namespace nodal_morse
