#include <cmath>
#include <complex>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "stueckelberg/bessel.hpp"
#include "stueckelberg/cli.hpp"
#include "stueckelberg/config.hpp"
#include "stueckelberg/experiments.hpp"
#include "stueckelberg/lindblad.hpp"
#include "stueckelberg/rng.hpp"
#include "stueckelberg/scan.hpp"
#include "stueckelberg/spin_dynamics.hpp"
#include "stueckelberg/spin_hamiltonian.hpp"

namespace stueckelberg {

namespace {

struct Check {
  const char* name;
  std::function<bool(std::string&)> fn;
};

// Direct quadrature for the two-tone phase-modulation coefficient, used as an
// independent oracle against the series implementation.
cd quadrature_gen_bessel(int n, double x1, double x2, double phi) {
  const int m = 4096;
  cd acc{0.0, 0.0};
  for (int k = 0; k < m; ++k) {
    const double th = kTwoPi * (k + 0.5) / m;
    const double arg = -(x1 * std::sin(th) + x2 * std::sin(2.0 * th + phi)) + n * th;
    acc += cd{std::cos(arg), std::sin(arg)};
  }
  return acc / static_cast<double>(m);
}

HermitianOperator driven_h(const DrivenOpticalParams& p, double t) {
  double delta = p.base.delta;
  for (int k = 0; k < p.n_tones; ++k)
    delta += p.tone_amp[k] * std::cos(p.tone_omega[k] * t + p.tone_phase[k]);
  ComplexMatrix h = ComplexMatrix::zero(3, 3);
  h(0, 1) = h(1, 0) = 0.5 * p.base.omega_rabi;
  h(1, 1) = delta;
  return HermitianOperator(h);
}

double total(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

bool check_bessel(std::string& why) {
  // Three-term recurrence across the series/recurrence switchover, plus the
  // J0 + 2 sum J2k = 1 normalization identity.
  const double resid =
      2.0 * 3.0 / 1.9 * bessel_jn(3, 1.9) - bessel_jn(2, 1.9) - bessel_jn(4, 1.9);
  if (std::abs(resid) > 1e-12) {
    why = "three-term recurrence residual " + std::to_string(resid);
    return false;
  }
  double norm = bessel_jn(0, 10.0);
  for (int k = 1; k <= 30; ++k) norm += 2.0 * bessel_jn(2 * k, 10.0);
  if (std::abs(norm - 1.0) > 1e-12) {
    why = "normalization identity off by " + std::to_string(norm - 1.0);
    return false;
  }
  return true;
}

bool check_gen_bessel(std::string& why) {
  const double xs[][3] = {{1.0, 0.5, 0.7}, {2.4048, 2.4048, 2.0}, {3.0, 1.0, 4.5}};
  for (const auto& x : xs)
    for (int n = -3; n <= 3; ++n) {
      const cd a = generalized_bessel_2d(n, x[0], x[1], x[2]);
      const cd b = quadrature_gen_bessel(n, x[0], x[1], x[2]);
      if (std::abs(a - b) > 1e-10) {
        why = "series vs quadrature mismatch at n=" + std::to_string(n);
        return false;
      }
    }
  return true;
}

bool check_eigen(std::string& why) {
  Rng rng(7, 0, 0);
  const std::size_t n = 6;
  ComplexMatrix a = ComplexMatrix::zero(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = r; c < n; ++c) {
      if (r == c) {
        a(r, c) = rng.gaussian();
      } else {
        a(r, c) = cd{rng.gaussian(), rng.gaussian()};
        a(c, r) = std::conj(a(r, c));
      }
    }
  const EigenSystem es = eigendecompose_hermitian(HermitianOperator(a));
  double resid = 0.0;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      cd sum{0.0, 0.0};
      for (std::size_t k = 0; k < n; ++k)
        sum += es.eigenvectors(r, k) * es.eigenvalues[k] * std::conj(es.eigenvectors(c, k));
      resid = std::max(resid, std::abs(sum - a(r, c)));
    }
  if (resid > 1e-10 * max_abs(a)) {
    why = "reconstruction residual " + std::to_string(resid);
    return false;
  }
  for (std::size_t k = 1; k < n; ++k)
    if (es.eigenvalues[k] < es.eigenvalues[k - 1]) {
      why = "eigenvalues not sorted";
      return false;
    }
  return true;
}

bool check_spectrum(std::string& why) {
  SpinSystemParams p;
  p.d = 1333.9535;
  p.e = 18.4195;
  p.b = {0.0, 0.0, 0.42};
  Mat3 a{};
  a[2][2] = 1.337;  // the closed form keeps only the zz hyperfine component
  p.hyperfine = {a};
  const EigenSystem es = eigendecompose_hermitian(build_ground_hamiltonian(p));
  std::vector<double> analytic;
  for (const auto& st : analytic_spectrum(p)) analytic.push_back(st.energy);
  std::sort(analytic.begin(), analytic.end());
  for (std::size_t i = 0; i < 6; ++i) {
    const double numeric = es.eigenvalues[i] + 2.0 * p.d / 3.0;
    if (std::abs(numeric - analytic[i]) > 1e-8) {
      why = "level " + std::to_string(i) + " off by " + std::to_string(numeric - analytic[i]);
      return false;
    }
  }
  return true;
}

bool check_zefoz_basis(std::string& why) {
  const ZefozBasis zb = zefoz_basis(1333.9535, 18.4195);
  const ComplexMatrix uu = zb.u * zb.u;
  const ComplexMatrix id = ComplexMatrix::identity(3);
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c)
      if (std::abs(uu(r, c) - id(r, c)) > 1e-14) {
        why = "u is not an involution";
        return false;
      }
  return true;
}

bool check_zefoz_field(std::string& why) {
  SpinSystemParams p;
  p.d = 1333.9535;
  p.e = 18.4195;
  Mat3 a{};
  a[2][2] = 1.0;
  p.hyperfine = {a};
  for (const auto branch : {NuclearBranch::up, NuclearBranch::down}) {
    const double closed = zefoz_field_closed_form(p, branch);
    const double numeric = find_zefoz_field(p, branch);
    if (std::abs(closed - numeric) > 1e-6) {
      why = "numeric clock field off by " + std::to_string(numeric - closed);
      return false;
    }
  }
  return true;
}

bool check_rabi(std::string& why) {
  ThreeLevelParams b;
  b.omega_rabi = kTwoPi;
  b.t1 = 1e9;  // effectively closed system
  LindbladModel m = three_level_bloch_model(b);
  m.collapse.clear();
  std::vector<double> times;
  for (int i = 0; i <= 20; ++i) times.push_back(0.05 * i);
  const Trajectory tr = evolve(DensityMatrix::pure({1.0, 0.0, 0.0}), m, times, 1.0 / 400.0);
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double expect = std::pow(std::sin(0.5 * b.omega_rabi * times[i]), 2);
    if (std::abs(tr.observables.at("excited_population")[i] - expect) > 1e-6) {
      why = "resonant oscillation error at t=" + std::to_string(times[i]);
      return false;
    }
  }
  return true;
}

bool check_lindblad_sanity(std::string& why) {
  ThreeLevelParams b;
  b.omega_rabi = 3.0;
  b.delta = 0.8;
  b.t1 = 1.0;
  b.t2_star = 2.0;
  b.gamma = 0.25;
  const LindbladModel m = three_level_bloch_model(b);
  std::vector<double> times;
  for (int i = 0; i <= 10; ++i) times.push_back(0.4 * i);
  const Trajectory tr = evolve(DensityMatrix::pure({1.0, 0.0, 0.0}), m, times, 1e-3);
  for (const auto& st : tr.states) {
    if (std::abs(trace(st.matrix()).real() - 1.0) > 1e-8) {
      why = "trace drift";
      return false;
    }
    const EigenSystem es = eigendecompose_hermitian(HermitianOperator(st.matrix()));
    if (es.eigenvalues.front() < -1e-8) {
      why = "negative eigenvalue " + std::to_string(es.eigenvalues.front());
      return false;
    }
  }
  return true;
}

bool check_steady_state(std::string& why) {
  ThreeLevelParams b;
  b.omega_rabi = 1.0;
  b.delta = 0.3;
  b.t1 = 1.0;
  b.t2_star = 2.0;
  const LindbladModel m = three_level_bloch_model(b);
  const SteadyStateResult ss = steady_state(m);
  const Trajectory tr = evolve(DensityMatrix::pure({1.0, 0.0, 0.0}), m, {0.0, 60.0}, 2e-3);
  const double diff = std::abs(ss.rho.matrix()(1, 1).real() -
                               tr.states.back().matrix()(1, 1).real());
  if (diff > 1e-6) {
    why = "steady state vs long-time evolution differ by " + std::to_string(diff);
    return false;
  }
  // Saturation formula at matched dephasing scaling.
  const double t2 = 1.0 / (0.5 / b.t1 + 1.0 / b.t2_star);
  const double s = b.omega_rabi * b.omega_rabi * b.t1 * t2;
  const double expect = 0.5 * s / (1.0 + b.delta * b.delta * t2 * t2 + s);
  if (std::abs(ss.rho.matrix()(1, 1).real() - expect) > 1e-9) {
    why = "saturation formula residual";
    return false;
  }
  return true;
}

bool check_fast_path(std::string& why) {
  DrivenOpticalParams p;
  p.base.omega_rabi = 0.8;
  p.base.delta = 1.1;
  p.base.t1 = 1.0;
  p.base.t2_star = 3.0;
  p.base.gamma = 0.15;
  p.n_tones = 2;
  p.tone_amp[0] = 4.0;
  p.tone_omega[0] = 6.0;
  p.tone_amp[1] = 3.0;
  p.tone_omega[1] = 12.0;
  p.tone_phase[1] = 1.2;
  LindbladModel m = three_level_bloch_model(p.base);
  m.hamiltonian = [p](double t) { return driven_h(p, t); };
  const double dt = 0.002;
  std::vector<double> times = {1.0, 2.0, 5.0};
  const Trajectory tr = evolve(DensityMatrix::pure({1.0, 0.0, 0.0}), m, times, dt);
  const std::vector<double> fast = driven_excited_trace(p, times, dt);
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double diff = std::abs(fast[i] - tr.observables.at("excited_population")[i]);
    if (diff > 1e-9) {
      why = "fast integrator deviates by " + std::to_string(diff);
      return false;
    }
  }
  return true;
}

bool check_sequences(std::string& why) {
  NoiseModel quiet;
  const SpinSequenceResult r0 = ramsey({0.0, 0.5, 1.0}, 2.0, quiet, 1);
  if (r0.signal[0] != 1.0) {
    why = "ramsey at tau=0 is not exactly 1";
    return false;
  }
  NoiseModel qs;
  qs.kind = NoiseModel::Kind::quasi_static_gaussian;
  qs.sigma = 0.7;
  qs.seed = 11;
  const SpinSequenceResult e = hahn_echo({0.0, 1.0, 5.0, 20.0}, 1.3, qs, 200);
  for (double v : e.signal)
    if (std::abs(v - 1.0) > 1e-12) {
      why = "echo does not cancel quasi-static noise";
      return false;
    }
  return true;
}

bool check_ou_stats(std::string& why) {
  NoiseModel ou;
  ou.kind = NoiseModel::Kind::ornstein_uhlenbeck;
  ou.sigma = 1.0;
  ou.tau_c = 1.0;
  ou.seed = 5;
  const std::size_t n = 40000;
  const std::size_t lag = 10;  // dt = tau_c / 10
  std::vector<double> times(n);
  for (std::size_t i = 0; i < n; ++i) times[i] = 0.1 * static_cast<double>(i);
  const std::vector<double> e = sample_noise(ou, times, 0);
  double c0 = 0.0, cl = 0.0;
  for (std::size_t i = 0; i + lag < n; ++i) {
    c0 += e[i] * e[i];
    cl += e[i] * e[i + lag];
  }
  const double ratio = cl / c0;
  if (std::abs(ratio - std::exp(-1.0)) > 0.05) {
    why = "autocovariance at one correlation time is " + std::to_string(ratio);
    return false;
  }
  return true;
}

bool check_echo_vs_ramsey(std::string& why) {
  NoiseModel ou;
  ou.kind = NoiseModel::Kind::ornstein_uhlenbeck;
  ou.sigma = 0.5;
  ou.tau_c = 2.0;
  ou.seed = 3;
  const std::vector<double> tau = {1.0, 2.5, 4.0};
  const SpinSequenceResult r = ramsey(tau, 0.0, ou, 400);
  const SpinSequenceResult e = hahn_echo(tau, 0.0, ou, 400);
  for (std::size_t i = 0; i < tau.size(); ++i) {
    const double slack = 2.0 * (r.standard_error[i] + e.standard_error[i]);
    if (e.signal[i] + slack < r.signal[i]) {
      why = "echo below ramsey at tau=" + std::to_string(tau[i]);
      return false;
    }
  }
  return true;
}

bool check_scan_io(std::string& why) {
  ScanResult spec;
  spec.axis1 = {"delta", "rad/us", {-1.0, 0.0, 1.0}};
  spec.values = {0.1, 0.9, 0.1};
  spec.metadata["experiment"] = "demo";
  std::istringstream csv(to_csv(spec));
  std::string line;
  int lines = 0;
  while (std::getline(csv, line)) ++lines;
  if (lines != 4) {
    why = "3-point CSV has " + std::to_string(lines) + " lines";
    return false;
  }
  if (scan_from_json(to_json(spec)) != spec) {
    why = "JSON round trip not field-identical";
    return false;
  }
  ScanResult map;
  map.axis1 = {"a", "x", {1.0, 2.0}};
  map.axis2 = ScanAxis{"b", "y", {3.0, 4.0}};
  map.values = {1.0, 2.0, 3.0, 4.0};
  std::istringstream csv2(to_csv(map));
  lines = 0;
  while (std::getline(csv2, line)) ++lines;
  if (lines != 5) {
    why = "2x2 CSV has " + std::to_string(lines) + " lines";
    return false;
  }
  return true;
}

bool check_config(std::string& why) {
  const std::string text = "# demo\n  b.two_us = 2.5 \none = x\n";
  const Config c = Config::parse(text);
  const std::string canon = c.serialize();
  if (canon != "b.two_us = 2.5\none = x\n") {
    why = "canonical form unexpected: " + canon;
    return false;
  }
  if (!(Config::parse(canon) == c)) {
    why = "parse(serialize(c)) differs from c";
    return false;
  }
  return true;
}

bool check_lzs_symmetry(std::string& why) {
  // Reflecting the detuning and shifting the drive phase by pi conjugates the
  // trajectory, so the emission map is exactly invariant under the pair.
  LzsSettings s;
  s.omega = 5.0;
  s.amp_grid = {0.0, 4.0, 8.0};
  s.delta_grid = linspace(-10.0, 10.0, 21);
  s.bloch.omega_rabi = 0.4;
  s.bloch.t1 = 2.0;
  s.bloch.t2_star = 4.0;
  s.readout_window = 8.0;
  const ScanResult m0 = lzs_map(s);
  s.drive_phase = 0.5 * kTwoPi;
  const ScanResult m1 = lzs_map(s);
  double scale = 0.0;
  for (double v : m0.values) scale = std::max(scale, std::abs(v));
  for (std::size_t ia = 0; ia < m0.n1(); ++ia)
    for (std::size_t id = 0; id < m0.n2(); ++id) {
      const double diff = std::abs(m0.at(ia, id) - m1.at(ia, m0.n2() - 1 - id));
      if (diff > 1e-9 * scale) {
        why = "detuning reflection asymmetry " + std::to_string(diff / scale);
        return false;
      }
    }
  return true;
}

bool check_ple_gamma_monotone(std::string& why) {
  double prev = 1e300;
  for (const double gamma : {0.0, 0.5, 2.0}) {
    PleSettings s;
    s.delta_grid = linspace(-2.0, 2.0, 9);
    s.bloch.omega_rabi = 0.6;
    s.bloch.t1 = 1.0;
    s.bloch.t2_star = 2.0;
    s.bloch.gamma = gamma;
    s.readout_window = 6.0;
    const double tot = total(ple_scan(s).values);
    if (tot > prev + 1e-12) {
      why = "emission grew when the trap rate increased";
      return false;
    }
    prev = tot;
  }
  return true;
}

bool check_line_predictions(std::string& why) {
  const FineStructureParams fs;
  const auto lines = predict_ple_lines(fs);
  auto levels = [](double d, double e) {
    ComplexMatrix h = ComplexMatrix::zero(3, 3);
    h(0, 0) = h(2, 2) = d / 3.0;
    h(1, 1) = -2.0 * d / 3.0;
    h(0, 2) = h(2, 0) = e;
    EigenSystem es = eigendecompose_hermitian(HermitianOperator(h));
    // shift so the |0>-like level sits at zero
    return std::array<double, 3>{es.eigenvalues[0] + 2.0 * d / 3.0,
                                 es.eigenvalues[1] + 2.0 * d / 3.0,
                                 es.eigenvalues[2] + 2.0 * d / 3.0};
  };
  const auto gs = levels(fs.d_gs, fs.e_gs);
  const auto es = levels(fs.d_es, fs.e_es);
  // Eigenvalues come sorted; map them to {0, D+E, D-E} by value.
  auto match = [&](const std::array<double, 3>& lv, double want) {
    double best = 1e300;
    for (double v : lv) best = std::min(best, std::abs(v - want));
    return best;
  };
  const double zb_gs_err =
      match(gs, 0.0) + match(gs, fs.d_gs + fs.e_gs) + match(gs, fs.d_gs - fs.e_gs);
  const double zb_es_err =
      match(es, 0.0) + match(es, fs.d_es + fs.e_es) + match(es, fs.d_es - fs.e_es);
  if (zb_gs_err > 1e-9 || zb_es_err > 1e-9) {
    why = "clock-basis energies disagree with diagonalization";
    return false;
  }
  if (std::abs(lines[0]) > 1e-12 || std::abs(lines[1] - (-865.373)) > 1e-9 ||
      std::abs(lines[2] - 137.466) > 1e-9) {
    why = "line positions unexpected";
    return false;
  }
  return true;
}

}  // namespace

int run_selftest(std::ostream& out) {
  const std::vector<Check> checks = {
      {"bessel_recurrence_and_normalization", check_bessel},
      {"generalized_bessel_matches_quadrature", check_gen_bessel},
      {"eigendecomposition_reconstructs_matrix", check_eigen},
      {"six_level_spectrum_matches_closed_form", check_spectrum},
      {"clock_basis_transform_is_involution", check_zefoz_basis},
      {"clock_field_numeric_matches_closed_form", check_zefoz_field},
      {"resonant_rabi_matches_analytic", check_rabi},
      {"lindblad_preserves_trace_and_positivity", check_lindblad_sanity},
      {"steady_state_matches_long_time_and_saturation", check_steady_state},
      {"fast_integrator_matches_generic_solver", check_fast_path},
      {"sequence_limits_ramsey_unity_echo_static", check_sequences},
      {"ou_noise_autocovariance", check_ou_stats},
      {"echo_never_below_ramsey", check_echo_vs_ramsey},
      {"scan_csv_json_contracts", check_scan_io},
      {"config_canonical_round_trip", check_config},
      {"lzs_map_detuning_reflection_symmetry", check_lzs_symmetry},
      {"ple_emission_monotone_in_trap_rate", check_ple_gamma_monotone},
      {"ple_line_predictions_match_eigenvalues", check_line_predictions},
  };
  int failures = 0;
  for (const auto& c : checks) {
    std::string why;
    bool ok = false;
    try {
      ok = c.fn(why);
    } catch (const std::exception& e) {
      why = e.what();
    }
    if (ok) {
      out << "PASS " << c.name << "\n";
    } else {
      ++failures;
      out << "FAIL " << c.name << (why.empty() ? "" : " (" + why + ")") << "\n";
    }
  }
  out << (failures == 0 ? "all properties passed\n"
                        : std::to_string(failures) + " properties failed\n");
  return failures;
}

}  // namespace stueckelberg
