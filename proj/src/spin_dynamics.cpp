#include "stueckelberg/spin_dynamics.hpp"

#include <cmath>
#include <stdexcept>

#include "stueckelberg/core.hpp"
#include "stueckelberg/rng.hpp"
#include "stueckelberg/spin_hamiltonian.hpp"

namespace stueckelberg {

namespace {

void check_model(const NoiseModel& m) {
  if (m.sigma < 0.0) throw std::invalid_argument("noise sigma must be non-negative");
  if (m.kind == NoiseModel::Kind::ornstein_uhlenbeck && m.tau_c <= 0.0)
    throw std::invalid_argument("ornstein_uhlenbeck noise needs tau_c > 0");
}

}  // namespace

std::vector<double> sample_noise(const NoiseModel& model, const std::vector<double>& times,
                                 std::uint64_t shot) {
  check_model(model);
  std::vector<double> out(times.size(), 0.0);
  if (model.kind == NoiseModel::Kind::none || times.empty()) return out;

  Rng rng(model.seed, rng_stream::kNoise, shot);
  if (model.kind == NoiseModel::Kind::quasi_static_gaussian) {
    const double eps = model.sigma * rng.gaussian();
    for (auto& v : out) v = eps;
    return out;
  }

  // Ornstein-Uhlenbeck: stationary start, then the exact one-step update
  // eps' = eps e^{-dt/tau} + sigma sqrt(1 - e^{-2 dt/tau}) xi.
  double eps = model.sigma * rng.gaussian();
  out[0] = eps;
  for (std::size_t i = 1; i < times.size(); ++i) {
    const double dt = times[i] - times[i - 1];
    if (dt < 0.0) throw std::invalid_argument("sample_noise: times must be non-decreasing");
    const double a = std::exp(-dt / model.tau_c);
    eps = eps * a + model.sigma * std::sqrt(std::max(0.0, 1.0 - a * a)) * rng.gaussian();
    out[i] = eps;
  }
  return out;
}

SpinSequenceResult spin_rabi(SpinTransition transition, double omega_mw,
                             const std::vector<double>& durations,
                             const SpinRabiOptions& opts) {
  if (omega_mw <= 0.0) throw std::invalid_argument("spin_rabi: omega_mw must be positive");
  SpinSequenceResult res;
  res.x = durations;
  res.signal.resize(durations.size());
  res.standard_error.assign(durations.size(), 0.0);
  res.n_samples = 1;

  const ZefozBasis basis = zefoz_basis(opts.d_mhz, opts.e_mhz);

  if (!opts.full_three_level) {
    // Driven pair only: H = (omega/2) sigma_x in the pair subspace.
    const ComplexMatrix h(2, 2, {0.0, 0.5 * omega_mw, 0.5 * omega_mw, 0.0});
    for (std::size_t i = 0; i < durations.size(); ++i) {
      const ComplexMatrix u = hermitian_propagator(HermitianOperator(h), durations[i]);
      // Start in the lower state of the pair; target is the other one.
      res.signal[i] = std::norm(u(1, 0));
    }
    return res;
  }

  // Full rotated basis {+, 0, -}: drive couples one pair, the spectator keeps
  // its rotating-frame detuning (2 pi x gap in MHz -> rad/us).
  ComplexMatrix h = ComplexMatrix::zero(3, 3);
  std::size_t target = 0, spectator = 0;
  ComplexMatrix pair_op(3, 3);
  if (transition == SpinTransition::zero_plus) {
    pair_op = basis.sx_rot;  // couples |+> (0) and |0> (1)
    target = 0;
    spectator = 2;
    h(spectator, spectator) = kTwoPi * (opts.d_mhz - opts.e_mhz);
  } else {
    pair_op = basis.sz_rot;  // couples |+> (0) and |-> (2)
    target = 2;
    spectator = 1;
    h(spectator, spectator) = -kTwoPi * (opts.d_mhz - opts.e_mhz);
  }
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) h(r, c) += 0.5 * omega_mw * pair_op(r, c);

  // Preparation from |0>: ideal instantaneous pi rotation onto |+> when the
  // driven transition starts there.
  std::vector<cd> psi0(3, cd{0.0, 0.0});
  if (transition == SpinTransition::zero_plus) {
    psi0[1] = 1.0;
  } else {
    ComplexMatrix hpi = ComplexMatrix::zero(3, 3);
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t c = 0; c < 3; ++c) hpi(r, c) = 0.5 * basis.sx_rot(r, c);
    const ComplexMatrix upi = hermitian_propagator(HermitianOperator(hpi), kTwoPi / 2.0);
    std::vector<cd> zero(3, cd{0.0, 0.0});
    zero[1] = 1.0;
    psi0 = upi * zero;
  }

  const HermitianOperator hop(h);
  for (std::size_t i = 0; i < durations.size(); ++i) {
    const ComplexMatrix u = hermitian_propagator(hop, durations[i]);
    const std::vector<cd> psi = u * psi0;
    res.signal[i] = std::norm(psi[target]);
  }
  return res;
}

namespace {

// Phase accumulated by one noise realization over [0, tau], with weight +1 on
// the first half and -1 on the second when `echo` is set. Trapezoidal rule on
// an even number of uniform steps.
double noise_phase(const NoiseModel& model, double tau, std::uint64_t stream_shot, bool echo) {
  if (model.kind != NoiseModel::Kind::ornstein_uhlenbeck)
    throw std::logic_error("noise_phase expects an ornstein_uhlenbeck model");
  int n = static_cast<int>(std::ceil(tau / (model.tau_c / 50.0)));
  n = std::max(n, 2);
  if (n % 2) ++n;
  const double h = tau / n;
  std::vector<double> times(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) times[static_cast<std::size_t>(i)] = h * i;
  const std::vector<double> eps = sample_noise(model, times, stream_shot);
  double first = 0.0, second = 0.0;
  for (int i = 0; i < n / 2; ++i) first += 0.5 * (eps[i] + eps[i + 1]) * h;
  for (int i = n / 2; i < n; ++i) second += 0.5 * (eps[i] + eps[i + 1]) * h;
  return echo ? first - second : first + second;
}

SpinSequenceResult free_evolution_sequence(const std::vector<double>& tau_grid, double detuning,
                                           const NoiseModel& noise, long n_samples, bool echo) {
  check_model(noise);
  if (n_samples < 1) throw std::invalid_argument("n_samples must be at least 1");
  const std::size_t np = tau_grid.size();
  SpinSequenceResult res;
  res.x = tau_grid;
  res.signal.assign(np, 0.0);
  res.standard_error.assign(np, 0.0);

  // Static detuning cancels exactly in the echo sequence.
  const double det = echo ? 0.0 : detuning;

  if (noise.kind == NoiseModel::Kind::none) {
    res.n_samples = 1;
    for (std::size_t i = 0; i < np; ++i) res.signal[i] = 0.5 * (1.0 + std::cos(det * tau_grid[i]));
    return res;
  }

  res.n_samples = n_samples;
  std::vector<double> sum(np, 0.0), sumsq(np, 0.0);
  for (long s = 0; s < n_samples; ++s) {
    if (noise.kind == NoiseModel::Kind::quasi_static_gaussian) {
      Rng rng(noise.seed, rng_stream::kNoise, static_cast<std::uint64_t>(s));
      const double eps = noise.sigma * rng.gaussian();
      for (std::size_t i = 0; i < np; ++i) {
        const double phase = echo ? 0.0 : (det + eps) * tau_grid[i];
        const double v = 0.5 * (1.0 + std::cos(phase));
        sum[i] += v;
        sumsq[i] += v * v;
      }
    } else {
      for (std::size_t i = 0; i < np; ++i) {
        double phase = det * tau_grid[i];
        if (tau_grid[i] > 0.0) {
          const std::uint64_t stream =
              static_cast<std::uint64_t>(s) * static_cast<std::uint64_t>(np) + i;
          phase += noise_phase(noise, tau_grid[i], stream, echo);
        }
        const double v = 0.5 * (1.0 + std::cos(phase));
        sum[i] += v;
        sumsq[i] += v * v;
      }
    }
  }
  const double n = static_cast<double>(n_samples);
  for (std::size_t i = 0; i < np; ++i) {
    res.signal[i] = sum[i] / n;
    if (n_samples > 1) {
      const double var = std::max(0.0, (sumsq[i] - sum[i] * sum[i] / n) / (n - 1.0));
      res.standard_error[i] = std::sqrt(var / n);
    }
  }
  return res;
}

}  // namespace

SpinSequenceResult ramsey(const std::vector<double>& tau_grid, double detuning,
                          const NoiseModel& noise, long n_samples) {
  return free_evolution_sequence(tau_grid, detuning, noise, n_samples, false);
}

SpinSequenceResult hahn_echo(const std::vector<double>& tau_grid, double detuning,
                             const NoiseModel& noise, long n_samples) {
  return free_evolution_sequence(tau_grid, detuning, noise, n_samples, true);
}

double ou_ramsey_chi(double sigma, double tau_c, double tau) {
  const double x = tau / tau_c;
  return sigma * sigma * tau_c * (tau - tau_c * (1.0 - std::exp(-x)));
}

double ou_echo_chi(double sigma, double tau_c, double tau) {
  const double x = tau / tau_c;
  return sigma * sigma * tau_c *
         (tau - tau_c * (3.0 + std::exp(-x) - 4.0 * std::exp(-0.5 * x)));
}

double quasi_static_sigma_for_t2star(double t2_star) {
  if (t2_star <= 0.0) throw std::invalid_argument("t2_star must be positive");
  return std::sqrt(2.0) / t2_star;
}

double ou_sigma_for_echo_t2(double tau_c, double t2_target) {
  if (tau_c <= 0.0 || t2_target <= 0.0)
    throw std::invalid_argument("ou_sigma_for_echo_t2: arguments must be positive");
  const double chi_unit = ou_echo_chi(1.0, tau_c, t2_target);
  if (chi_unit <= 0.0) throw std::runtime_error("ou_sigma_for_echo_t2: no solution");
  return 1.0 / std::sqrt(chi_unit);
}

}  // namespace stueckelberg
