#pragma once

#include "stueckelberg/core.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace stueckelberg {

struct CollapseOperator {
  enum class Label { radiative_decay, pure_dephasing, spin_relaxation, custom };
  ComplexMatrix matrix;  // rates embedded, entries in sqrt(1/us)
  Label label = Label::custom;
};

// Open-system model: H(t) in rad/us plus fixed collapse channels.
struct LindbladModel {
  std::size_t dim = 0;
  std::function<HermitianOperator(double)> hamiltonian;
  std::vector<CollapseOperator> collapse;
};

struct PulseEnvelope {
  enum class Shape { rectangular, smoothed };
  Shape shape = Shape::rectangular;
  double t_on = 0.0;   // us
  double t_off = 0.0;  // us, > t_on
  double rise = 0.0;   // us, smoothed edges only

  double value(double t) const;
  void validate() const;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<DensityMatrix> states;
  std::map<std::string, std::vector<double>> observables;  // "excited_population" always set
};

// Fixed-step RK4 on rho' = -i[H, rho] + sum_k (C rho C+ - {C+C, rho}/2),
// recording at the requested times by integrating through them. Record points
// where trace drifts past 1e-6 or an eigenvalue drops below -1e-6 raise an
// accuracy error suggesting a smaller dt.
Trajectory evolve(const DensityMatrix& rho0, const LindbladModel& model,
                  const std::vector<double>& times, double dt);

struct SteadyStateResult {
  DensityMatrix rho;
  // Set when the vectorized solve showed a (near-)degenerate kernel and the
  // result was obtained by long-time evolution from level 0 instead.
  bool degenerate_kernel = false;
  double pivot_ratio = 0.0;
};

// L(rho) = 0 with unit trace, via a dense solve on the vectorized Liouvillian
// (row 0 replaced by the trace constraint). H is sampled at t = 0.
SteadyStateResult steady_state(const LindbladModel& model);

enum class DephasingScaling {
  matched_rate,  // C2 amplitude 1/sqrt(2 T2*); off-diagonal decay exactly 1/T2*
  raw,           // C2 amplitude 1/sqrt(T2*); off-diagonal decay 2/T2*
};

// {|g>, |e>, |s>} optical model. T2* <= 0 disables the dephasing channel
// (interpreted as infinite); gamma is the |e> -> |s> shelving rate and repump
// an optional |s> -> |g> return rate.
struct ThreeLevelParams {
  double omega_rabi = 0.0;  // rad/us
  double delta = 0.0;       // rad/us
  double t1 = 1.0;          // us
  double t2_star = 0.0;     // us; <= 0 means no pure dephasing
  double gamma = 0.0;       // 1/us
  double repump = 0.0;      // 1/us
  DephasingScaling scaling = DephasingScaling::matched_rate;
};

LindbladModel three_level_bloch_model(const ThreeLevelParams& p,
                                      const PulseEnvelope* envelope = nullptr);

// Counts proxy: integral of rho_ee/T1 over [t_a, t_b], trapezoid on the
// recorded grid.
double emission_signal(const Trajectory& traj, double t1, double t_a, double t_b);

// Hand-written integrator for the same three-level model with the detuning
// modulated by one or two cosine tones. Produces bit-stable results
// independent of call site; used by scan loops, equivalence-tested against
// evolve().
struct DrivenOpticalParams {
  ThreeLevelParams base;
  int n_tones = 0;                  // 0, 1 or 2
  double tone_amp[2] = {0.0, 0.0};  // rad/us
  double tone_omega[2] = {0.0, 0.0};
  double tone_phase[2] = {0.0, 0.0};
  const PulseEnvelope* envelope = nullptr;  // scales omega_rabi when present
};

// Emission integral int_0^t_end rho_ee/T1 dt starting from |g><g|.
double driven_emission(const DrivenOpticalParams& p, double t_end, double dt);

// rho_ee sampled at the given times (monotone), starting from |g><g|.
std::vector<double> driven_excited_trace(const DrivenOpticalParams& p,
                                         const std::vector<double>& times, double dt);

}  // namespace stueckelberg
