#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace stueckelberg {

// Residual vector r(p); the solver minimizes sum r_i^2.
using ResidualFn = std::function<std::vector<double>(const std::vector<double>&)>;

struct FitOptions {
  int max_iterations = 200;
  double initial_damping = 1e-3;
  double step_tolerance = 1e-10;  // relative parameter change
  double fd_relative = 1e-6;      // finite-difference scale for the Jacobian
};

struct FitResult {
  std::vector<double> params;
  double chi2 = 0.0;
  int iterations = 0;
  bool converged = false;
  std::string message;
};

// Damped least squares (Levenberg damping on J^T J) with a forward-difference
// Jacobian. Returns best-so-far parameters when the iteration cap is hit.
FitResult fit_least_squares(const ResidualFn& residuals, std::vector<double> initial,
                            const FitOptions& opts = {});

// Runs n_starts fits from log-jittered initial points (multiplicative for
// parameters flagged positive, additive otherwise) and keeps the lowest chi2.
FitResult fit_multi_start(const ResidualFn& residuals, const std::vector<double>& initial,
                          const std::vector<bool>& positive, double jitter, int n_starts,
                          std::uint64_t seed, const FitOptions& opts = {});

struct LorentzianFit {
  double center = 0.0;
  double fwhm = 0.0;
  double amplitude = 0.0;
  double offset = 0.0;
  double residual_rms = 0.0;
  bool converged = false;
  bool poor_fit = false;  // residual above 5x the estimated noise floor
};

// amplitude / (1 + ((x - center)/(fwhm/2))^2) + offset.
LorentzianFit fit_lorentzian(const std::vector<double>& x, const std::vector<double>& y);

enum class EnvelopeKind { gaussian, exponential, stretched };

struct EnvelopeFit {
  double amplitude = 0.0;
  double t = 0.0;        // decay constant, units of x
  double p = 0.0;        // exponent (fixed for gaussian/exponential)
  double omega = 0.0;    // oscillation, rad per unit x; 0 when not fitted
  double phi0 = 0.0;
  double offset = 0.0;
  double residual_rms = 0.0;
  bool converged = false;
};

// amplitude * exp(-(x/t)^p) * cos(omega x + phi0) + offset. With
// omega_hint == 0 the cosine factor is frozen at 1. p is fixed at 2
// (gaussian), 1 (exponential) or fitted (stretched, started at 2).
EnvelopeFit fit_envelope(const std::vector<double>& x, const std::vector<double>& y,
                         EnvelopeKind kind, double omega_hint = 0.0);

// Pearson correlation of two equal-length series.
double pearson_correlation(const std::vector<double>& a, const std::vector<double>& b);
// Spearman rank correlation (average ranks for ties).
double rank_correlation(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace stueckelberg
