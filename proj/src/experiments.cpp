#include "stueckelberg/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "stueckelberg/fit.hpp"
#include "stueckelberg/spin_hamiltonian.hpp"
#include "stueckelberg/threading.hpp"

namespace stueckelberg {

namespace {

void check_monotone(const std::vector<double>& g, const char* what) {
  if (g.empty()) throw std::invalid_argument(std::string(what) + " grid is empty");
  for (std::size_t i = 1; i < g.size(); ++i)
    if (g[i] <= g[i - 1])
      throw std::invalid_argument(std::string(what) + " grid must be strictly increasing");
}

// Step size from the fastest rate, the largest instantaneous Hamiltonian
// scale (phase per step capped at 0.35 rad) and the drive period. Every bound
// scales as 1/lambda under a global rate rescaling, which keeps rescaled runs
// equivalent step for step.
double auto_dt(const ThreeLevelParams& b, double max_abs_delta, double amp_total,
               double drive_omega_max) {
  double rate = 1.0 / b.t1;
  if (b.t2_star > 0.0) rate = std::max(rate, 1.0 / b.t2_star);
  rate = std::max({rate, b.gamma, b.repump});
  double dt = 0.1 / rate;
  const double h_scale = 0.5 * (max_abs_delta + amp_total) + 0.5 * b.omega_rabi;
  if (h_scale > 0.0) dt = std::min(dt, 0.35 / h_scale);
  if (drive_omega_max > 0.0) dt = std::min(dt, kTwoPi / (40.0 * drive_omega_max));
  return dt;
}

double max_abs(const std::vector<double>& g) {
  double m = 0.0;
  for (double v : g) m = std::max(m, std::abs(v));
  return m;
}

void echo_bloch(std::map<std::string, std::string>& md, const ThreeLevelParams& b) {
  md["bloch.omega_rabi_rad_us"] = format_double(b.omega_rabi);
  md["bloch.t1_us"] = format_double(b.t1);
  md["bloch.t2star_us"] = format_double(b.t2_star);
  md["bloch.gamma_per_us"] = format_double(b.gamma);
  md["bloch.repump_per_us"] = format_double(b.repump);
}

}  // namespace

std::vector<double> linspace(double a, double b, std::size_t n) {
  if (n == 0) return {};
  if (n == 1) return {a};
  std::vector<double> g(n);
  const double h = (b - a) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) g[i] = a + h * static_cast<double>(i);
  g.back() = b;
  return g;
}

ScanResult ple_scan(const PleSettings& s) {
  check_monotone(s.delta_grid, "delta");
  if (s.mode == PleMode::cw && s.bloch.gamma > 0.0 && s.bloch.repump <= 0.0)
    throw std::invalid_argument(
        "cw spectrum with an absorbing shelving state has a trivial steady state; "
        "use the pulsed readout path or add a repump rate");
  if (s.mode == PleMode::pulsed && s.readout_window <= 0.0)
    throw std::invalid_argument("pulsed spectrum needs a positive readout window");
  if (s.drive && s.drive->tones().size() > 2)
    throw std::invalid_argument("at most two drive tones supported");

  double amp_total = 0.0, omega_max = 0.0;
  if (s.drive)
    for (const auto& t : s.drive->tones()) {
      amp_total += std::abs(t.amplitude);
      omega_max = std::max(omega_max, t.omega);
    }

  ScanResult out;
  out.axis1 = {"delta", "rad/us", s.delta_grid};
  out.values.assign(s.delta_grid.size(), 0.0);
  echo_bloch(out.metadata, s.bloch);
  out.metadata["scan.generator"] = "ple_scan";
  out.metadata["scan.mode"] = s.mode == PleMode::pulsed ? "pulsed" : "cw";
  out.metadata["scan.readout_us"] = format_double(s.readout_window);

  if (s.mode == PleMode::cw) {
    parallel_for(s.delta_grid.size(), default_thread_count(), [&](std::size_t i) {
      ThreeLevelParams b = s.bloch;
      b.delta = s.delta_grid[i];
      const SteadyStateResult ss = steady_state(three_level_bloch_model(b));
      out.values[i] = ss.rho.matrix()(1, 1).real() / b.t1;
    });
    return out;
  }

  const double dt = s.dt > 0.0
                        ? s.dt
                        : auto_dt(s.bloch, max_abs(s.delta_grid), amp_total, omega_max);
  out.metadata["scan.dt_us"] = format_double(dt);
  parallel_for(s.delta_grid.size(), default_thread_count(), [&](std::size_t i) {
    DrivenOpticalParams p;
    p.base = s.bloch;
    p.base.delta = s.delta_grid[i];
    if (s.drive) {
      const auto& tones = s.drive->tones();
      p.n_tones = static_cast<int>(tones.size());
      for (std::size_t k = 0; k < tones.size(); ++k) {
        p.tone_amp[k] = tones[k].amplitude;
        p.tone_omega[k] = tones[k].omega;
        p.tone_phase[k] = tones[k].phase;
      }
    }
    out.values[i] = driven_emission(p, s.readout_window, dt);
  });
  return out;
}

ScanResult lzs_map(const LzsSettings& s) {
  check_monotone(s.delta_grid, "delta");
  if (s.amp_grid.empty()) throw std::invalid_argument("amplitude grid is empty");
  for (double a : s.amp_grid)
    if (a < 0.0) throw std::invalid_argument("amplitudes must be non-negative");
  if (s.omega <= 0.0) throw std::invalid_argument("drive frequency must be positive");
  if (s.readout_window <= 0.0) throw std::invalid_argument("readout window must be positive");
  const double dt_bound = kTwoPi / (40.0 * s.omega);
  double dt = s.dt;
  if (dt <= 0.0)
    dt = std::min(dt_bound,
                  auto_dt(s.bloch, max_abs(s.delta_grid), max_abs(s.amp_grid), s.omega));
  else if (dt > dt_bound)
    throw std::invalid_argument("dt must resolve the drive: dt <= 2 pi / (40 omega)");

  ScanResult out;
  out.axis1 = {"amplitude", "rad/us", s.amp_grid};
  out.axis2 = ScanAxis{"delta", "rad/us", s.delta_grid};
  out.values.assign(s.amp_grid.size() * s.delta_grid.size(), 0.0);
  echo_bloch(out.metadata, s.bloch);
  out.metadata["scan.generator"] = "lzs_map";
  out.metadata["scan.omega_rad_us"] = format_double(s.omega);
  out.metadata["scan.drive_phase_rad"] = format_double(s.drive_phase);
  out.metadata["scan.readout_us"] = format_double(s.readout_window);
  out.metadata["scan.dt_us"] = format_double(dt);

  const std::size_t n2 = s.delta_grid.size();
  parallel_for(out.values.size(), default_thread_count(), [&](std::size_t cell) {
    const std::size_t ia = cell / n2, id = cell % n2;
    DrivenOpticalParams p;
    p.base = s.bloch;
    p.base.delta = s.delta_grid[id];
    p.n_tones = 1;
    p.tone_amp[0] = s.amp_grid[ia];
    p.tone_omega[0] = s.omega;
    p.tone_phase[0] = s.drive_phase;
    out.values[cell] = driven_emission(p, s.readout_window, dt);
  });
  return out;
}

std::vector<double> band_integrated_intensity(const ScanResult& map, int n, double omega) {
  map.validate();
  if (!map.axis2) throw std::invalid_argument("band integration needs a 2-D map");
  const std::vector<double>& delta = map.axis2->grid;
  const double lo = n * omega - 0.5 * omega;
  const double hi = n * omega + 0.5 * omega;
  if (lo < delta.front() - 1e-9 || hi > delta.back() + 1e-9)
    throw std::invalid_argument("integration band lies outside the scanned detuning range");
  std::size_t first = 0;
  while (first < delta.size() && delta[first] < lo - 1e-12) ++first;
  std::size_t last = delta.size();
  while (last > 0 && delta[last - 1] > hi + 1e-12) --last;
  if (last < first + 2) throw std::invalid_argument("integration band covers fewer than 2 points");

  std::vector<double> out(map.n1(), 0.0);
  for (std::size_t ia = 0; ia < map.n1(); ++ia) {
    double acc = 0.0;
    for (std::size_t j = first + 1; j < last; ++j)
      acc += 0.5 * (map.at(ia, j) + map.at(ia, j - 1)) * (delta[j] - delta[j - 1]);
    out[ia] = acc;
  }
  return out;
}

ScanResult bichromatic_map(const BichromaticSettings& s) {
  check_monotone(s.phi_grid, "phase");
  check_monotone(s.delta_grid, "delta");
  if (s.omega1 <= 0.0) throw std::invalid_argument("omega1 must be positive");
  if (s.phi_grid.front() > 1e-9 || s.phi_grid.back() < kTwoPi - 1e-9)
    throw std::invalid_argument("phase grid must cover [0, 2 pi]");
  if (s.readout_window <= 0.0) throw std::invalid_argument("readout window must be positive");

  const double a1 = s.x1 * s.omega1;
  const double a2 = s.x2 * 2.0 * s.omega1;
  double dt = s.dt;
  if (dt <= 0.0)
    dt = std::min(kTwoPi / (40.0 * 2.0 * s.omega1),
                  auto_dt(s.bloch, max_abs(s.delta_grid), a1 + a2, 2.0 * s.omega1));

  ScanResult out;
  out.axis1 = {"phase", "rad", s.phi_grid};
  out.axis2 = ScanAxis{"delta", "rad/us", s.delta_grid};
  out.values.assign(s.phi_grid.size() * s.delta_grid.size(), 0.0);
  echo_bloch(out.metadata, s.bloch);
  out.metadata["scan.generator"] = "bichromatic_map";
  out.metadata["scan.omega1_rad_us"] = format_double(s.omega1);
  out.metadata["scan.x1"] = format_double(s.x1);
  out.metadata["scan.x2"] = format_double(s.x2);
  out.metadata["scan.readout_us"] = format_double(s.readout_window);
  out.metadata["scan.dt_us"] = format_double(dt);

  const std::size_t n2 = s.delta_grid.size();
  parallel_for(out.values.size(), default_thread_count(), [&](std::size_t cell) {
    const std::size_t ip = cell / n2, id = cell % n2;
    DrivenOpticalParams p;
    p.base = s.bloch;
    p.base.delta = s.delta_grid[id];
    p.n_tones = 2;
    p.tone_amp[0] = a1;
    p.tone_omega[0] = s.omega1;
    p.tone_phase[0] = 0.0;
    p.tone_amp[1] = a2;
    p.tone_omega[1] = 2.0 * s.omega1;
    p.tone_phase[1] = s.phi_grid[ip];
    out.values[cell] = driven_emission(p, s.readout_window, dt);
  });
  return out;
}

ScanResult optical_rabi_trace(const OpticalRabiSettings& s) {
  if (s.pulse_len_us <= 0.0 || s.bin_us <= 0.0)
    throw std::invalid_argument("pulse length and bin width must be positive");
  ThreeLevelParams b = s.bloch;
  if (s.power_uw > 0.0 && s.omega_per_sqrt_uw > 0.0)
    b.omega_rabi = s.omega_per_sqrt_uw * std::sqrt(s.power_uw);

  const double t_end = s.pulse_len_us + s.tail_us;
  const std::size_t n_bins = static_cast<std::size_t>(std::llround(t_end / s.bin_us)) + 1;
  std::vector<double> times(n_bins);
  for (std::size_t i = 0; i < n_bins; ++i) times[i] = s.bin_us * static_cast<double>(i);

  PulseEnvelope env;
  env.shape = PulseEnvelope::Shape::rectangular;
  env.t_on = 0.0;
  env.t_off = s.pulse_len_us;

  double dt = s.dt;
  if (dt <= 0.0) dt = std::min(auto_dt(b, std::abs(b.delta), 0.0, 0.0), s.bin_us / 4.0);

  DrivenOpticalParams p;
  p.base = b;
  p.envelope = &env;
  const std::vector<double> rho_ee = driven_excited_trace(p, times, dt);

  ScanResult out;
  out.axis1 = {"time", "us", times};
  out.values.resize(n_bins);
  for (std::size_t i = 0; i < n_bins; ++i) out.values[i] = rho_ee[i] / b.t1;
  echo_bloch(out.metadata, b);
  out.metadata["scan.generator"] = "optical_rabi_trace";
  out.metadata["scan.pulse_len_us"] = format_double(s.pulse_len_us);
  out.metadata["scan.tail_us"] = format_double(s.tail_us);
  out.metadata["scan.bin_us"] = format_double(s.bin_us);
  out.metadata["scan.dt_us"] = format_double(dt);
  return out;
}

BlochFitResult fit_bloch_parameters(const ScanResult& trace, double known_omega,
                                    double known_delta, std::uint64_t seed) {
  trace.validate();
  if (trace.axis2) throw std::invalid_argument("expected a 1-D time trace");
  const std::vector<double>& t = trace.axis1.grid;
  const std::vector<double>& y = trace.values;
  if (t.size() < 8) throw std::invalid_argument("trace too short to fit");
  const double t_end = t.back();

  double pulse_len = t_end;
  if (auto it = trace.metadata.find("scan.pulse_len_us"); it != trace.metadata.end())
    pulse_len = std::stod(it->second);
  if (known_omega * pulse_len < 3.0 * kTwoPi)
    throw std::invalid_argument("trace must cover at least 3 Rabi periods");

  PulseEnvelope env;
  env.t_on = 0.0;
  env.t_off = pulse_len;

  const double ymax = *std::max_element(y.begin(), y.end());

  // Parameters: log T1, u (1/T2* = u^2), v (Gamma = v^2), log A, offset.
  // The squares keep rates non-negative without hard bounds; u = 0 and v = 0
  // are interior points so vanishing rates stay reachable.
  auto unpack = [&](const std::vector<double>& p, ThreeLevelParams& b, double& amp,
                    double& off) {
    b = ThreeLevelParams{};
    b.omega_rabi = known_omega;
    b.delta = known_delta;
    b.t1 = std::exp(std::clamp(p[0], -25.0, 25.0));
    const double inv_t2s = p[1] * p[1];
    b.t2_star = inv_t2s > 1e-12 ? 1.0 / inv_t2s : 0.0;
    b.gamma = p[2] * p[2];
    amp = std::exp(std::clamp(p[3], -40.0, 40.0));
    off = p[4];
  };
  auto resid = [&](const std::vector<double>& p) {
    ThreeLevelParams b;
    double amp = 0.0, off = 0.0;
    unpack(p, b, amp, off);
    double dt = std::min(auto_dt(b, std::abs(b.delta), 0.0, 0.0),
                         kTwoPi / (200.0 * std::max(b.omega_rabi, 1e-6)));
    // Trial points may propose arbitrarily fast rates; cap the work per
    // evaluation. A too-coarse integration diverges and the step is rejected.
    const double span = t_end - t.front();
    if (span > 0.0) dt = std::max(dt, span / 400000.0);
    DrivenOpticalParams dp;
    dp.base = b;
    dp.envelope = &env;
    const std::vector<double> rho = driven_excited_trace(dp, t, dt);
    std::vector<double> r(t.size());
    for (std::size_t i = 0; i < t.size(); ++i)
      r[i] = amp * rho[i] / b.t1 + off - y[i];
    return r;
  };

  // Crude starting point: decay times from the trace span, amplitude from the
  // late-trace level against the weak-drive steady state.
  const double t1_0 = std::max(pulse_len / 4.0, 1e-6);
  std::vector<double> p0 = {std::log(t1_0), 1.0 / std::sqrt(t1_0), std::sqrt(0.5 / t_end),
                            std::log(std::max(ymax * 2.0 * t1_0, 1e-12)), 0.0};
  const std::vector<bool> positive = {false, false, false, false, false};
  FitResult fr = fit_multi_start(resid, p0, positive, 0.35, 3, seed);

  BlochFitResult out;
  ThreeLevelParams b;
  unpack(fr.params, b, out.amplitude, out.offset);
  out.t1 = b.t1;
  out.t2_star = b.t2_star;
  out.gamma = b.gamma;
  const double inv_t2 = 0.5 / b.t1 + (b.t2_star > 0.0 ? 1.0 / b.t2_star : 0.0);
  out.t2 = 1.0 / inv_t2;
  out.residual_rms = std::sqrt(fr.chi2 / static_cast<double>(t.size()));
  out.converged = fr.converged;
  if (!fr.converged) {
    std::ostringstream msg;
    msg << "bloch fit did not converge (" << fr.message << "); best point T1=" << out.t1
        << " us, T2*=" << out.t2_star << " us, gamma=" << out.gamma
        << " /us, residual rms " << out.residual_rms;
    throw std::runtime_error(msg.str());
  }
  return out;
}

LineFit fit_lorentzian_line(const ScanResult& spectrum, double desk_scale) {
  spectrum.validate();
  if (spectrum.axis2) throw std::invalid_argument("expected a 1-D spectrum");
  if (desk_scale <= 0.0) throw std::invalid_argument("desk_scale must be positive");
  const LorentzianFit f = fit_lorentzian(spectrum.axis1.grid, spectrum.values);
  if (!f.converged) throw std::runtime_error("lorentzian fit did not converge");
  LineFit out;
  out.center = f.center;
  out.fwhm = f.fwhm;
  out.amplitude = f.amplitude;
  out.offset = f.offset;
  out.residual_rms = f.residual_rms;
  out.poor_fit = f.poor_fit;
  out.converged = f.converged;
  const bool angular = spectrum.axis1.unit == "rad/us";
  out.fwhm_mhz = angular ? f.fwhm / (kTwoPi * desk_scale) : f.fwhm / desk_scale;
  return out;
}

std::array<double, 3> predict_ple_lines(const FineStructureParams& fs) {
  const ZefozBasis gs = zefoz_basis(fs.d_gs, fs.e_gs);
  const ZefozBasis es = zefoz_basis(fs.d_es, fs.e_es);
  // energies[] is ordered {0, D+E, D-E}; lines are ES minus GS level shifts.
  return {es.energies[0] - gs.energies[0], es.energies[1] - gs.energies[1],
          es.energies[2] - gs.energies[2]};
}

std::vector<Peak> detect_peaks(const std::vector<double>& x, const std::vector<double>& y,
                               double threshold) {
  if (x.size() != y.size()) throw std::invalid_argument("detect_peaks: size mismatch");
  std::vector<Peak> out;
  for (std::size_t i = 1; i + 1 < y.size(); ++i) {
    if (y[i] < threshold) continue;
    if (!(y[i] >= y[i - 1] && y[i] >= y[i + 1] && (y[i] > y[i - 1] || y[i] > y[i + 1])))
      continue;
    Peak p;
    p.index = i;
    p.x = x[i];
    p.height = y[i];
    const double denom = y[i - 1] - 2.0 * y[i] + y[i + 1];
    if (denom < 0.0) {
      const double shift = 0.5 * (y[i - 1] - y[i + 1]) / denom;
      const double h = 0.5 * (x[i + 1] - x[i - 1]);
      p.x = x[i] + shift * h;
      p.height = y[i] - 0.25 * (y[i - 1] - y[i + 1]) * shift;
    }
    out.push_back(p);
  }
  return out;
}

}  // namespace stueckelberg
