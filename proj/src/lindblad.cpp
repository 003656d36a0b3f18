#include "stueckelberg/lindblad.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace stueckelberg {

void PulseEnvelope::validate() const {
  if (!(t_off > t_on)) throw std::invalid_argument("PulseEnvelope: t_off must exceed t_on");
  if (shape == Shape::smoothed && !(rise > 0.0))
    throw std::invalid_argument("PulseEnvelope: smoothed shape needs rise > 0");
}

double PulseEnvelope::value(double t) const {
  if (shape == Shape::rectangular) return (t >= t_on && t < t_off) ? 1.0 : 0.0;
  return 0.25 * (1.0 + std::erf((t - t_on) / rise)) * (1.0 + std::erf((t_off - t) / rise));
}

namespace {

// rho' for the generic model; K = sum C+C precomputed.
ComplexMatrix lindblad_rhs(const ComplexMatrix& h, const std::vector<CollapseOperator>& collapse,
                           const ComplexMatrix& k_sum, const ComplexMatrix& rho) {
  const cd iunit{0.0, 1.0};
  ComplexMatrix out = (-iunit) * (h * rho - rho * h);
  for (const auto& c : collapse) out += c.matrix * rho * adjoint(c.matrix);
  out -= cd{0.5, 0.0} * (k_sum * rho + rho * k_sum);
  return out;
}

void check_record_point(const ComplexMatrix& rho, double t) {
  const double trace_err = std::abs(trace(rho) - cd{1.0, 0.0});
  if (trace_err > 1e-6)
    throw std::runtime_error("evolve: trace drift " + std::to_string(trace_err) + " at t=" +
                             std::to_string(t) + "; use a smaller dt");
  const auto eig = eigendecompose_hermitian(cd{0.5, 0.0} * (rho + adjoint(rho)));
  if (eig.eigenvalues.front() < -1e-6)
    throw std::runtime_error("evolve: negative population " +
                             std::to_string(eig.eigenvalues.front()) + " at t=" +
                             std::to_string(t) + "; use a smaller dt");
}

}  // namespace

Trajectory evolve(const DensityMatrix& rho0, const LindbladModel& model,
                  const std::vector<double>& times, double dt) {
  if (times.empty()) throw std::invalid_argument("evolve: no record times");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (times[i] < times[i - 1]) throw std::invalid_argument("evolve: times must be monotone");
  if (!(dt > 0.0)) throw std::invalid_argument("evolve: dt must be positive");
  if (model.dim != rho0.dim()) throw std::invalid_argument("evolve: dimension mismatch");
  for (const auto& c : model.collapse)
    if (c.matrix.rows() != model.dim || c.matrix.cols() != model.dim)
      throw std::invalid_argument("evolve: collapse operator dimension mismatch");

  ComplexMatrix k_sum(model.dim, model.dim);
  for (const auto& c : model.collapse) k_sum += adjoint(c.matrix) * c.matrix;

  const DensityMatrix::Tolerances record_tol{1e-10, 1e-6, 1e-6};
  Trajectory traj;
  traj.observables["excited_population"] = {};

  ComplexMatrix rho = rho0.matrix();
  double t = times.front();
  auto rhs = [&](double at, const ComplexMatrix& state) {
    return lindblad_rhs(model.hamiltonian(at).matrix(), model.collapse, k_sum, state);
  };

  for (double target : times) {
    while (t < target - 1e-12 * std::max(1.0, std::abs(target))) {
      const double step = std::min(dt, target - t);
      const ComplexMatrix k1 = rhs(t, rho);
      const ComplexMatrix k2 = rhs(t + 0.5 * step, rho + (0.5 * step) * k1);
      const ComplexMatrix k3 = rhs(t + 0.5 * step, rho + (0.5 * step) * k2);
      const ComplexMatrix k4 = rhs(t + step, rho + step * k3);
      rho += (step / 6.0) * (k1 + cd{2.0, 0.0} * k2 + cd{2.0, 0.0} * k3 + k4);
      t += step;
    }
    t = target;
    check_record_point(rho, t);
    traj.times.push_back(t);
    traj.states.emplace_back(rho, record_tol);
    traj.observables["excited_population"].push_back(
        model.dim > 1 ? traj.states.back().population(1) : 0.0);
  }
  return traj;
}

namespace {

SteadyStateResult long_time_steady_state(const LindbladModel& model, double pivot_ratio,
                                         bool degenerate) {
  double r_min = 0.0, r_max = 0.0;
  for (const auto& c : model.collapse) {
    const double rate = max_abs(c.matrix) * max_abs(c.matrix);
    if (rate <= 0.0) continue;
    if (r_min == 0.0 || rate < r_min) r_min = rate;
    r_max = std::max(r_max, rate);
  }
  if (r_min == 0.0)
    throw std::runtime_error("steady_state: no relaxation channel, state is not unique");
  const double h_scale = std::max(max_abs(model.hamiltonian(0.0).matrix()), 1e-12);
  const double t_end = 50.0 / r_min;
  const double dt = 0.05 / std::max(h_scale, r_max);

  ComplexMatrix rho0(model.dim, model.dim);
  rho0(0, 0) = 1.0;
  const Trajectory traj =
      evolve(DensityMatrix(std::move(rho0)), model, {0.0, t_end}, dt);
  return SteadyStateResult{traj.states.back(), degenerate, pivot_ratio};
}

}  // namespace

SteadyStateResult steady_state(const LindbladModel& model) {
  const std::size_t d = model.dim;
  const std::size_t n = d * d;
  const ComplexMatrix h = model.hamiltonian(0.0).matrix();
  const ComplexMatrix id = ComplexMatrix::identity(d);

  auto transpose = [&](const ComplexMatrix& m) {
    ComplexMatrix out(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = m(i, j);
    return out;
  };
  auto conjugate = [&](const ComplexMatrix& m) {
    ComplexMatrix out = m;
    for (auto& z : out.data()) z = std::conj(z);
    return out;
  };

  // Row-major vectorization: vec(A rho B) = (A (x) B^T) vec(rho).
  const cd iunit{0.0, 1.0};
  ComplexMatrix liou = (-iunit) * (tensor_product(h, id) - tensor_product(id, transpose(h)));
  for (const auto& c : model.collapse) {
    const ComplexMatrix k = adjoint(c.matrix) * c.matrix;
    liou += tensor_product(c.matrix, conjugate(c.matrix));
    liou -= cd{0.5, 0.0} * (tensor_product(k, id) + tensor_product(id, transpose(k)));
  }

  ComplexMatrix system = liou;
  std::vector<cd> rhs(n, cd{0.0, 0.0});
  for (std::size_t col = 0; col < n; ++col) system(0, col) = cd{0.0, 0.0};
  for (std::size_t i = 0; i < d; ++i) system(0, i * d + i) = cd{1.0, 0.0};
  rhs[0] = cd{1.0, 0.0};

  double pivot_ratio = 0.0;
  std::vector<cd> solution;
  bool solved = false;
  try {
    solution = solve_linear(std::move(system), std::move(rhs), &pivot_ratio);
    solved = pivot_ratio >= 1e-12;
  } catch (const std::runtime_error&) {
    solved = false;
  }
  if (!solved) return long_time_steady_state(model, pivot_ratio, true);

  ComplexMatrix rho(d, d, std::move(solution));
  rho = cd{0.5, 0.0} * (rho + adjoint(rho));
  const double tr = trace(rho).real();
  if (std::abs(tr) < 1e-12) return long_time_steady_state(model, pivot_ratio, true);
  rho *= cd{1.0 / tr, 0.0};

  // Residual check guards against a kernel the pivot ratio failed to flag.
  std::vector<cd> residual = liou * rho.data();
  double res = 0.0;
  for (const auto& z : residual) res = std::max(res, std::abs(z));
  if (res > 1e-7 * std::max(1.0, max_abs(liou)))
    return long_time_steady_state(model, pivot_ratio, true);

  return SteadyStateResult{DensityMatrix(std::move(rho), {1e-10, 1e-8, 1e-8}), false,
                           pivot_ratio};
}

LindbladModel three_level_bloch_model(const ThreeLevelParams& p, const PulseEnvelope* envelope) {
  if (!(p.t1 > 0.0)) throw std::invalid_argument("three_level_bloch_model: T1 must be positive");
  if (p.gamma < 0.0 || p.repump < 0.0)
    throw std::invalid_argument("three_level_bloch_model: negative rate");
  if (envelope) envelope->validate();

  LindbladModel model;
  model.dim = 3;

  const double omega = p.omega_rabi;
  const double delta = p.delta;
  PulseEnvelope env_copy;
  if (envelope) env_copy = *envelope;
  const bool has_env = envelope != nullptr;
  model.hamiltonian = [omega, delta, env_copy, has_env](double t) {
    const double drive = has_env ? omega * env_copy.value(t) : omega;
    ComplexMatrix h(3, 3);
    h(0, 1) = 0.5 * drive;
    h(1, 0) = 0.5 * drive;
    h(1, 1) = delta;
    return HermitianOperator(std::move(h));
  };

  ComplexMatrix c1(3, 3);
  c1(0, 1) = 1.0 / std::sqrt(p.t1);
  model.collapse.push_back({std::move(c1), CollapseOperator::Label::radiative_decay});

  if (p.t2_star > 0.0 && std::isfinite(p.t2_star)) {
    const double amp = p.scaling == DephasingScaling::matched_rate
                           ? 1.0 / std::sqrt(2.0 * p.t2_star)
                           : 1.0 / std::sqrt(p.t2_star);
    ComplexMatrix c2(3, 3);
    c2(0, 0) = -amp;
    c2(1, 1) = amp;
    model.collapse.push_back({std::move(c2), CollapseOperator::Label::pure_dephasing});
  }
  if (p.gamma > 0.0) {
    ComplexMatrix c3(3, 3);
    c3(2, 1) = std::sqrt(p.gamma);
    model.collapse.push_back({std::move(c3), CollapseOperator::Label::spin_relaxation});
  }
  if (p.repump > 0.0) {
    ComplexMatrix c4(3, 3);
    c4(0, 2) = std::sqrt(p.repump);
    model.collapse.push_back({std::move(c4), CollapseOperator::Label::custom});
  }
  return model;
}

double emission_signal(const Trajectory& traj, double t1, double t_a, double t_b) {
  if (!(t1 > 0.0)) throw std::invalid_argument("emission_signal: T1 must be positive");
  if (t_b < t_a) throw std::invalid_argument("emission_signal: empty window");
  if (traj.times.empty() || t_a < traj.times.front() - 1e-12 ||
      t_b > traj.times.back() + 1e-12)
    throw std::invalid_argument("emission_signal: window outside trajectory");
  const auto& pop = traj.observables.at("excited_population");
  double acc = 0.0;
  for (std::size_t i = 1; i < traj.times.size(); ++i) {
    if (traj.times[i] <= t_a || traj.times[i - 1] >= t_b) continue;
    acc += 0.5 * (pop[i] + pop[i - 1]) * (traj.times[i] - traj.times[i - 1]);
  }
  return acc / t1;
}

namespace {

// State layout for the fast path:
// y = {rho_gg, rho_ee, rho_ss, Re ge, Im ge, Re gs, Im gs, Re es, Im es}.
struct FastRates {
  double gamma1;    // 1/T1
  double kappa2;    // dephasing amplitude squared
  double gamma3;    // e -> s
  double repump;    // s -> g
  double g_ge, g_gs, g_es;  // off-diagonal decay rates
};

void validate_tones(const DrivenOpticalParams& p) {
  if (p.n_tones < 0 || p.n_tones > 2)
    throw std::invalid_argument("driven model: n_tones must be 0, 1 or 2");
  for (int i = 0; i < p.n_tones; ++i)
    if (!(p.tone_omega[i] > 0.0))
      throw std::invalid_argument("driven model: tone frequency must be > 0");
}

FastRates make_rates(const ThreeLevelParams& p) {
  if (!(p.t1 > 0.0)) throw std::invalid_argument("driven model: T1 must be positive");
  FastRates r{};
  r.gamma1 = 1.0 / p.t1;
  if (p.t2_star > 0.0 && std::isfinite(p.t2_star))
    r.kappa2 = p.scaling == DephasingScaling::matched_rate ? 1.0 / (2.0 * p.t2_star)
                                                          : 1.0 / p.t2_star;
  r.gamma3 = p.gamma;
  r.repump = p.repump;
  r.g_ge = 0.5 * r.gamma1 + 2.0 * r.kappa2 + 0.5 * r.gamma3;
  r.g_gs = 0.5 * r.kappa2 + 0.5 * r.repump;
  r.g_es = 0.5 * r.gamma1 + 0.5 * r.kappa2 + 0.5 * r.gamma3 + 0.5 * r.repump;
  return r;
}

using FastState = std::array<double, 9>;

inline void fast_rhs(const DrivenOpticalParams& p, const FastRates& r, double t,
                     const FastState& y, FastState& dy) {
  double det = p.base.delta;
  for (int i = 0; i < p.n_tones; ++i)
    det += p.tone_amp[i] * std::cos(p.tone_omega[i] * t + p.tone_phase[i]);
  const double om =
      p.envelope ? p.base.omega_rabi * p.envelope->value(t) : p.base.omega_rabi;
  const double half_om = 0.5 * om;

  const double w = y[1] - y[0];  // rho_ee - rho_gg
  dy[0] = -om * y[4] + r.gamma1 * y[1] + r.repump * y[2];
  dy[1] = om * y[4] - (r.gamma1 + r.gamma3) * y[1];
  dy[2] = r.gamma3 * y[1] - r.repump * y[2];
  dy[3] = -det * y[4] - r.g_ge * y[3];
  dy[4] = det * y[3] - half_om * w - r.g_ge * y[4];
  dy[5] = half_om * y[8] - r.g_gs * y[5];
  dy[6] = -half_om * y[7] - r.g_gs * y[6];
  dy[7] = half_om * y[6] + det * y[8] - r.g_es * y[7];
  dy[8] = -half_om * y[5] - det * y[7] - r.g_es * y[8];
}

inline void fast_step(const DrivenOpticalParams& p, const FastRates& r, double t, double h,
                      FastState& y) {
  FastState k1, k2, k3, k4, tmp;
  fast_rhs(p, r, t, y, k1);
  for (int i = 0; i < 9; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
  fast_rhs(p, r, t + 0.5 * h, tmp, k2);
  for (int i = 0; i < 9; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
  fast_rhs(p, r, t + 0.5 * h, tmp, k3);
  for (int i = 0; i < 9; ++i) tmp[i] = y[i] + h * k3[i];
  fast_rhs(p, r, t + h, tmp, k4);
  for (int i = 0; i < 9; ++i) y[i] += (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}

}  // namespace

double driven_emission(const DrivenOpticalParams& p, double t_end, double dt) {
  if (!(dt > 0.0) || !(t_end > 0.0))
    throw std::invalid_argument("driven_emission: need positive dt and t_end");
  validate_tones(p);
  const FastRates r = make_rates(p.base);
  if (p.envelope) p.envelope->validate();

  FastState y{};
  y[0] = 1.0;
  const long n_steps = static_cast<long>(std::ceil(t_end / dt - 1e-9));
  const double h = t_end / static_cast<double>(n_steps);
  // Simpson-free accumulation: trapezoid over the fixed step grid.
  double acc = 0.5 * y[1];
  double t = 0.0;
  for (long s = 0; s < n_steps; ++s) {
    fast_step(p, r, t, h, y);
    t = (s + 1) * h;
    acc += (s + 1 == n_steps) ? 0.5 * y[1] : y[1];
  }
  return acc * h / p.base.t1;
}

std::vector<double> driven_excited_trace(const DrivenOpticalParams& p,
                                         const std::vector<double>& times, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("driven_excited_trace: dt must be positive");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (times[i] < times[i - 1])
      throw std::invalid_argument("driven_excited_trace: times must be monotone");
  validate_tones(p);
  const FastRates r = make_rates(p.base);
  if (p.envelope) p.envelope->validate();

  FastState y{};
  y[0] = 1.0;
  std::vector<double> out;
  out.reserve(times.size());
  double t = times.empty() ? 0.0 : times.front();
  for (double target : times) {
    while (t < target - 1e-12 * std::max(1.0, std::abs(target))) {
      const double step = std::min(dt, target - t);
      fast_step(p, r, t, step, y);
      t += step;
    }
    t = target;
    out.push_back(y[1]);
  }
  return out;
}

}  // namespace stueckelberg
