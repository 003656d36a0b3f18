#pragma once

#include <cstdint>
#include <vector>

namespace stueckelberg {

struct NoiseModel {
  enum class Kind { none, quasi_static_gaussian, ornstein_uhlenbeck };
  Kind kind = Kind::none;
  double sigma = 0.0;   // rad/us, stationary standard deviation
  double tau_c = 0.0;   // us, correlation time (ornstein_uhlenbeck only)
  std::uint64_t seed = 0;
};

// One realization of the detuning noise process evaluated on `times` (us).
// A given (model, shot) pair always yields a bit-identical series.
std::vector<double> sample_noise(const NoiseModel& model, const std::vector<double>& times,
                                 std::uint64_t shot = 0);

struct SpinSequenceResult {
  std::vector<double> x;       // pulse duration or free-evolution time, us
  std::vector<double> signal;  // population / probability in [0, 1]
  std::vector<double> standard_error;
  long n_samples = 1;
};

enum class SpinTransition { zero_plus, plus_minus };

struct SpinRabiOptions {
  bool full_three_level = false;
  double d_mhz = 1333.9535;  // zero-field splitting, used for spectator detuning
  double e_mhz = 18.4195;
};

// Coherent Rabi oscillation on one transition of the rotated spin-1 basis
// {+, 0, -}. The drive is (omega_mw/2) times the pair coupling operator; the
// default model keeps only the driven pair, the three-level variant retains
// the spectator level at its real detuning.
SpinSequenceResult spin_rabi(SpinTransition transition, double omega_mw,
                             const std::vector<double>& durations,
                             const SpinRabiOptions& opts = {});

// Ramsey fringe with detuning noise: ideal pi/2 pulses, free evolution tau,
// signal = (1 + <cos(phase)>)/2 averaged over n_samples noise realizations.
SpinSequenceResult ramsey(const std::vector<double>& tau_grid, double detuning,
                          const NoiseModel& noise, long n_samples);

// Hahn echo: the accumulated phase is the first-half integral minus the
// second-half integral of the noise, so static detuning cancels exactly.
SpinSequenceResult hahn_echo(const std::vector<double>& tau_grid, double detuning,
                             const NoiseModel& noise, long n_samples);

// Closed-form coherence exponents chi(tau) for the Ornstein-Uhlenbeck process;
// the observable contrast is exp(-chi).
double ou_ramsey_chi(double sigma, double tau_c, double tau);
double ou_echo_chi(double sigma, double tau_c, double tau);

// sigma giving a quasi-static Gaussian dephasing time T2* (envelope
// exp(-(tau/T2*)^2) means sigma = sqrt(2)/T2*).
double quasi_static_sigma_for_t2star(double t2_star);
// sigma for which the closed-form echo contrast of an OU process with
// correlation time tau_c reaches 1/e at t2_target.
double ou_sigma_for_echo_t2(double tau_c, double t2_target);

}  // namespace stueckelberg
