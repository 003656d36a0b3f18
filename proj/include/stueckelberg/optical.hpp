#pragma once

#include "stueckelberg/core.hpp"

#include <complex>
#include <vector>

namespace stueckelberg {

// Optical two-level parameters, all angular frequencies in rad/us.
// omega0 and omega_opt are only consulted by the lab frame builder.
struct OpticalTLSParams {
  double omega_rabi = 0.0;  // Omega >= 0
  double delta = 0.0;       // omega_opt - omega0
  double omega0 = 0.0;
  double omega_opt = 0.0;
};

struct AcTone {
  double amplitude = 0.0;  // Stark amplitude A, rad/us
  double omega = 0.0;      // rad/us, > 0
  double phase = 0.0;      // rad
};

// One or two longitudinal Stark tones. The two-tone ladder path requires an
// exact octave pair, enforced where the expansion is used.
class AcDrive {
 public:
  explicit AcDrive(std::vector<AcTone> tones);

  static AcDrive monochromatic(double amplitude, double omega, double phase = 0.0);
  static AcDrive bichromatic(double a1, double omega1, double a2, double phase2);

  const std::vector<AcTone>& tones() const { return tones_; }
  bool bichromatic_pair() const;
  // Instantaneous sigma-z drive A(t) = sum_i A_i cos(omega_i t + phi_i).
  double value(double t) const;

 private:
  std::vector<AcTone> tones_;
};

// Effective couplings of the n-th photon sideband, n in [-n_max, n_max].
struct SidebandLadder {
  int n_max = 0;
  std::vector<std::complex<double>> amplitudes;  // index i <-> n = i - n_max

  std::complex<double> at(int n) const { return amplitudes[static_cast<std::size_t>(n + n_max)]; }
};

// Monochromatic: Delta_n = Omega J_n(A/omega) e^{i n phi}.
// Octave pair: Delta_n = Omega e^{i n phi1} Jgen_n(A1/w1, A2/w2; 2 phi1 - phi2),
// so with phi1 = 0 the drive phase phi enters the series argument as -phi.
// A phase common to every sideband is dropped.
SidebandLadder sideband_amplitudes(double omega_rabi, const AcDrive& drive, int n_max);

// Optional linear Stark map: amplitude = susceptibility * |field|.
double stark_amplitude_from_field(double susceptibility, double field_magnitude);

// Time-independent RWA Hamiltonian (Omega/2) sx + (delta/2) sz.
HermitianOperator rotating_frame_hamiltonian(const OpticalTLSParams& p);
// Same with the instantaneous Stark shift added to the sz coefficient.
HermitianOperator rotating_frame_hamiltonian(const OpticalTLSParams& p, const AcDrive& drive,
                                             double t);
// Full lab frame (Omega cos(omega_opt t)/2) sx + (omega0/2) sz, for RWA checks.
HermitianOperator lab_frame_hamiltonian(const OpticalTLSParams& p, double t);

// Two-level matrices in the {|g>, |e>} index order, sz = |e><e| - |g><g|.
ComplexMatrix tls_sigma_x();
ComplexMatrix tls_sigma_y();
ComplexMatrix tls_sigma_z();
ComplexMatrix tls_sigma_plus();

}  // namespace stueckelberg
