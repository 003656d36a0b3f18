#include "stueckelberg/optical.hpp"

#include "stueckelberg/bessel.hpp"

#include <cmath>
#include <stdexcept>

namespace stueckelberg {

AcDrive::AcDrive(std::vector<AcTone> tones) : tones_(std::move(tones)) {
  if (tones_.empty() || tones_.size() > 2)
    throw std::invalid_argument("AcDrive: expected one or two tones");
  for (const auto& tone : tones_)
    if (!(tone.omega > 0.0)) throw std::invalid_argument("AcDrive: tone frequency must be > 0");
}

AcDrive AcDrive::monochromatic(double amplitude, double omega, double phase) {
  return AcDrive({AcTone{amplitude, omega, phase}});
}

AcDrive AcDrive::bichromatic(double a1, double omega1, double a2, double phase2) {
  return AcDrive({AcTone{a1, omega1, 0.0}, AcTone{a2, 2.0 * omega1, phase2}});
}

bool AcDrive::bichromatic_pair() const {
  return tones_.size() == 2 && tones_[1].omega == 2.0 * tones_[0].omega;
}

double AcDrive::value(double t) const {
  double a = 0.0;
  for (const auto& tone : tones_) a += tone.amplitude * std::cos(tone.omega * t + tone.phase);
  return a;
}

SidebandLadder sideband_amplitudes(double omega_rabi, const AcDrive& drive, int n_max) {
  if (n_max < 0) throw std::invalid_argument("sideband_amplitudes: n_max < 0");
  if (omega_rabi < 0.0) throw std::invalid_argument("sideband_amplitudes: negative Rabi frequency");

  SidebandLadder ladder;
  ladder.n_max = n_max;
  ladder.amplitudes.assign(2 * static_cast<std::size_t>(n_max) + 1, {0.0, 0.0});

  const auto& tones = drive.tones();
  if (tones.size() == 1) {
    const double x = tones[0].amplitude / tones[0].omega;
    const std::vector<double> jn = bessel_jn_sequence(n_max, x);
    for (int n = -n_max; n <= n_max; ++n) {
      const double mag = (n >= 0) ? jn[n] : ((-n) % 2 ? -jn[-n] : jn[-n]);
      ladder.amplitudes[static_cast<std::size_t>(n + n_max)] =
          omega_rabi * mag * std::polar(1.0, n * tones[0].phase);
    }
    return ladder;
  }

  if (!drive.bichromatic_pair())
    throw std::invalid_argument("sideband_amplitudes: two-tone ladder needs omega2 = 2*omega1");
  const double x1 = tones[0].amplitude / tones[0].omega;
  const double x2 = tones[1].amplitude / tones[1].omega;
  const double series_phase = 2.0 * tones[0].phase - tones[1].phase;
  for (int n = -n_max; n <= n_max; ++n)
    ladder.amplitudes[static_cast<std::size_t>(n + n_max)] =
        omega_rabi * std::polar(1.0, n * tones[0].phase) *
        generalized_bessel_2d(n, x1, x2, series_phase);
  return ladder;
}

double stark_amplitude_from_field(double susceptibility, double field_magnitude) {
  return susceptibility * std::abs(field_magnitude);
}

HermitianOperator rotating_frame_hamiltonian(const OpticalTLSParams& p) {
  if (p.omega_rabi < 0.0)
    throw std::invalid_argument("rotating_frame_hamiltonian: negative Rabi frequency");
  ComplexMatrix h = 0.5 * p.omega_rabi * tls_sigma_x() + 0.5 * p.delta * tls_sigma_z();
  return HermitianOperator(std::move(h));
}

HermitianOperator rotating_frame_hamiltonian(const OpticalTLSParams& p, const AcDrive& drive,
                                             double t) {
  if (p.omega_rabi < 0.0)
    throw std::invalid_argument("rotating_frame_hamiltonian: negative Rabi frequency");
  ComplexMatrix h =
      0.5 * p.omega_rabi * tls_sigma_x() + 0.5 * (p.delta + drive.value(t)) * tls_sigma_z();
  return HermitianOperator(std::move(h));
}

HermitianOperator lab_frame_hamiltonian(const OpticalTLSParams& p, double t) {
  if (p.omega_rabi < 0.0)
    throw std::invalid_argument("lab_frame_hamiltonian: negative Rabi frequency");
  ComplexMatrix h = 0.5 * p.omega_rabi * std::cos(p.omega_opt * t) * tls_sigma_x() +
                    0.5 * p.omega0 * tls_sigma_z();
  return HermitianOperator(std::move(h));
}

ComplexMatrix tls_sigma_x() { return ComplexMatrix(2, 2, {0, 1, 1, 0}); }
ComplexMatrix tls_sigma_y() { return ComplexMatrix(2, 2, {0, cd{0, 1}, cd{0, -1}, 0}); }
ComplexMatrix tls_sigma_z() { return ComplexMatrix(2, 2, {-1, 0, 0, 1}); }
ComplexMatrix tls_sigma_plus() { return ComplexMatrix(2, 2, {0, 0, 1, 0}); }

}  // namespace stueckelberg
