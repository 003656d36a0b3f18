#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "stueckelberg/lindblad.hpp"
#include "stueckelberg/optical.hpp"
#include "stueckelberg/scan.hpp"

namespace stueckelberg {

// Ground- and excited-state fine structure (MHz).
struct FineStructureParams {
  double d_gs = 1333.9535;
  double e_gs = 18.4195;
  double d_es = 970.0;
  double e_es = -483.0;
};

enum class PleMode { pulsed, cw };

// Emission spectrum versus optical detuning. The pulsed path integrates the
// emission rate over a readout window starting from |g> each repetition; the
// cw path solves for the steady state and needs the shelving trap closed
// (gamma = 0) or a repump present.
struct PleSettings {
  std::vector<double> delta_grid;  // rad/us
  ThreeLevelParams bloch;          // delta field ignored, set per point
  const AcDrive* drive = nullptr;
  double readout_window = 0.0;  // us, pulsed path
  PleMode mode = PleMode::pulsed;
  double dt = 0.0;  // us, 0 selects a step from the rates and drive
};
ScanResult ple_scan(const PleSettings& s);

// Landau-Zener-Stueckelberg interference map: emission vs (A, delta) for a
// monochromatic detuning modulation A cos(omega t).
struct LzsSettings {
  std::vector<double> amp_grid;    // rad/us
  std::vector<double> delta_grid;  // rad/us
  double omega = 0.0;              // rad/us
  double drive_phase = 0.0;        // rad
  ThreeLevelParams bloch;
  double readout_window = 0.0;
  double dt = 0.0;  // 0 = auto; must satisfy dt <= 2 pi / (40 omega)
};
ScanResult lzs_map(const LzsSettings& s);

// Integral of one map row over delta in [n omega - omega/2, n omega + omega/2]
// for every amplitude. Throws if the band sticks out of the scanned range.
std::vector<double> band_integrated_intensity(const ScanResult& map, int n, double omega);

// Two-tone (omega, 2 omega) map versus relative phase and detuning, with the
// amplitudes fixed through x_i = A_i / omega_i.
struct BichromaticSettings {
  std::vector<double> phi_grid;    // rad, must cover [0, 2 pi]
  std::vector<double> delta_grid;  // rad/us
  double omega1 = 0.0;             // rad/us; the second tone sits at 2 omega1
  double x1 = 2.4048;
  double x2 = 2.4048;
  ThreeLevelParams bloch;
  double readout_window = 0.0;
  double dt = 0.0;
};
ScanResult bichromatic_map(const BichromaticSettings& s);

// Time-binned emission rate across a square excitation pulse plus tail.
// A laser power plus calibration (Omega = k sqrt(P)) overrides bloch.omega_rabi
// when both are positive.
struct OpticalRabiSettings {
  ThreeLevelParams bloch;
  double power_uw = 0.0;
  double omega_per_sqrt_uw = 0.0;  // rad/us per sqrt(uW)
  double pulse_len_us = 0.080;
  double tail_us = 0.040;
  double bin_us = 0.001;
  double dt = 0.0;
};
ScanResult optical_rabi_trace(const OpticalRabiSettings& s);

struct BlochFitResult {
  double t1 = 0.0;       // us
  double t2_star = 0.0;  // us
  double t2 = 0.0;       // us, ((2 T1)^-1 + T2*^-1)^-1
  double gamma = 0.0;    // 1/us
  double amplitude = 0.0;
  double offset = 0.0;
  double residual_rms = 0.0;
  bool converged = false;
};

// Recovers (T1, T2*, Gamma, amplitude, offset) from an emission-rate time
// trace by damped least squares with the integrator itself as forward model;
// three jittered starts. Throws on non-convergence with the best point in the
// message.
BlochFitResult fit_bloch_parameters(const ScanResult& trace, double known_omega,
                                    double known_delta, std::uint64_t seed = 0);

struct LineFit {
  double center = 0.0;     // axis units
  double fwhm = 0.0;       // axis units
  double fwhm_mhz = 0.0;   // fwhm / (2 pi x scale) for a rad/us axis
  double amplitude = 0.0;
  double offset = 0.0;
  double residual_rms = 0.0;
  bool poor_fit = false;
  bool converged = false;
};

// Single-peak Lorentzian fit of a spectrum. `desk_scale` is the factor by
// which the run compressed paper-scale frequencies; it only affects the MHz
// report. Throws on non-convergence.
LineFit fit_lorentzian_line(const ScanResult& spectrum, double desk_scale = 1.0);

// Detunings of the three emission lines relative to |0> <-> |A'0>, MHz:
// {0, (D_ES+E_ES)-(D_GS+E_GS), (D_ES-E_ES)-(D_GS-E_GS)}, computed from the
// clock-basis level energies of both Hamiltonians.
std::array<double, 3> predict_ple_lines(const FineStructureParams& fs);

struct Peak {
  double x = 0.0;       // refined position
  double height = 0.0;  // refined height
  std::size_t index = 0;
};

// Interior local maxima above `threshold`, refined by 3-point parabolic
// interpolation.
std::vector<Peak> detect_peaks(const std::vector<double>& x, const std::vector<double>& y,
                               double threshold);

// Uniformly spaced grid helper: n points from a to b inclusive.
std::vector<double> linspace(double a, double b, std::size_t n);

}  // namespace stueckelberg
