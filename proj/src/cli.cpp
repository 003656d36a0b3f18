#include "stueckelberg/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "stueckelberg/config.hpp"
#include "stueckelberg/experiments.hpp"
#include "stueckelberg/fit.hpp"
#include "stueckelberg/scan.hpp"
#include "stueckelberg/spin_dynamics.hpp"
#include "stueckelberg/spin_hamiltonian.hpp"
#include "stueckelberg/version.hpp"

namespace stueckelberg {

namespace {

enum class KeyKind { num, integer, boolean, text };

struct KeySpec {
  const char* key;
  KeyKind kind;
  const char* fallback;
};

// Effective configuration: every schema key resolved against the user config,
// numeric values normalized to 17-significant-digit form so the echo is
// stable under reruns.
Config resolve(const Config& user, const std::vector<KeySpec>& schema,
               const std::string& experiment) {
  std::vector<std::string> known = {"experiment", "seed"};
  for (const auto& s : schema) known.push_back(s.key);
  user.require_known_keys(known);
  if (user.has("experiment") && user.get_string("experiment", "") != experiment)
    throw std::invalid_argument("config is for experiment '" +
                                user.get_string("experiment", "") + "', not '" + experiment +
                                "'");
  Config eff;
  eff.set("experiment", experiment);
  eff.set("seed", std::to_string(user.get_int("seed", 0)));
  for (const auto& s : schema) {
    switch (s.kind) {
      case KeyKind::num:
        eff.set(s.key, format_double(user.get_double(s.key, std::stod(s.fallback))));
        break;
      case KeyKind::integer:
        eff.set(s.key, std::to_string(user.get_int(s.key, std::stoll(s.fallback))));
        break;
      case KeyKind::boolean:
        eff.set(s.key, user.get_bool(s.key, std::string(s.fallback) == "true") ? "true"
                                                                               : "false");
        break;
      case KeyKind::text:
        eff.set(s.key, user.get_string(s.key, s.fallback));
        break;
    }
  }
  return eff;
}

ThreeLevelParams bloch_from(const Config& eff) {
  ThreeLevelParams b;
  b.omega_rabi = eff.get_double("bloch.rabi_rad_us", 0.0);
  b.t1 = eff.get_double("bloch.t1_us", 1.0);
  b.t2_star = eff.get_double("bloch.t2star_us", 0.0);
  b.gamma = eff.get_double("bloch.gamma_per_us", 0.0);
  b.repump = eff.get_double("bloch.repump_per_us", 0.0);
  return b;
}

const std::vector<KeySpec> kBlochKeys = {
    {"bloch.rabi_rad_us", KeyKind::num, "0.37"},
    {"bloch.t1_us", KeyKind::num, "14"},
    {"bloch.t2star_us", KeyKind::num, "364"},
    {"bloch.gamma_per_us", KeyKind::num, "0"},
    {"bloch.repump_per_us", KeyKind::num, "0"},
};

std::vector<KeySpec> with_bloch(std::vector<KeySpec> extra) {
  extra.insert(extra.end(), kBlochKeys.begin(), kBlochKeys.end());
  return extra;
}

struct RunContext {
  std::string out_path;
  std::string format;  // csv | json
  std::ostream& out;
};

void finish_scan(ScanResult result, const Config& eff, const std::string& experiment,
                 const RunContext& ctx) {
  result.metadata["experiment"] = experiment;
  result.metadata["seed"] = eff.get_string("seed", "0");
  result.metadata["version"] = kVersionTag;
  result.metadata["format"] = ctx.format;
  result.metadata["config"] = eff.serialize();
  const std::string path = ctx.out_path.empty() ? experiment + "." + ctx.format : ctx.out_path;
  write_scan(result, path, ctx.format);
  ctx.out << "wrote " << path << " (" << result.values.size() << " values)\n";
}

// --- experiment runners ------------------------------------------------------

void run_ple(const Config& user, const RunContext& ctx) {
  const Config eff = resolve(user,
                             with_bloch({
                                 {"ple.delta_min_rad_us", KeyKind::num, "-3"},
                                 {"ple.delta_max_rad_us", KeyKind::num, "3"},
                                 {"ple.delta_points", KeyKind::integer, "121"},
                                 {"ple.readout_us", KeyKind::num, "70"},
                                 {"ple.mode", KeyKind::text, "pulsed"},
                                 {"ple.dt_us", KeyKind::num, "0"},
                                 {"drive.amp_rad_us", KeyKind::num, "0"},
                                 {"drive.freq_rad_us", KeyKind::num, "4.39822971502571"},
                                 {"drive.phase_rad", KeyKind::num, "0"},
                             }),
                             "ple");
  PleSettings s;
  s.delta_grid = linspace(eff.get_double("ple.delta_min_rad_us", 0),
                          eff.get_double("ple.delta_max_rad_us", 0),
                          static_cast<std::size_t>(eff.get_int("ple.delta_points", 2)));
  s.bloch = bloch_from(eff);
  s.readout_window = eff.get_double("ple.readout_us", 0);
  s.dt = eff.get_double("ple.dt_us", 0);
  const std::string mode = eff.get_string("ple.mode", "pulsed");
  if (mode == "pulsed")
    s.mode = PleMode::pulsed;
  else if (mode == "cw")
    s.mode = PleMode::cw;
  else
    throw std::invalid_argument("ple.mode must be pulsed or cw");
  std::optional<AcDrive> drive;
  if (eff.get_double("drive.amp_rad_us", 0) > 0.0) {
    if (s.mode == PleMode::cw)
      throw std::invalid_argument("the cw path cannot take a time-dependent drive");
    drive.emplace(AcDrive::monochromatic(eff.get_double("drive.amp_rad_us", 0),
                                         eff.get_double("drive.freq_rad_us", 1),
                                         eff.get_double("drive.phase_rad", 0)));
    s.drive = &*drive;
  }
  finish_scan(ple_scan(s), eff, "ple", ctx);
}

void run_lzs(const Config& user, const RunContext& ctx) {
  const Config eff = resolve(user,
                             with_bloch({
                                 {"lzs.omega_rad_us", KeyKind::num, "4.39822971502571"},
                                 {"lzs.amp_over_omega_max", KeyKind::num, "5"},
                                 {"lzs.amp_points", KeyKind::integer, "26"},
                                 {"lzs.delta_span_over_omega", KeyKind::num, "7"},
                                 {"lzs.delta_points", KeyKind::integer, "141"},
                                 {"lzs.readout_us", KeyKind::num, "70"},
                                 {"lzs.dt_us", KeyKind::num, "0"},
                             }),
                             "lzs");
  LzsSettings s;
  s.omega = eff.get_double("lzs.omega_rad_us", 1);
  const double amax = eff.get_double("lzs.amp_over_omega_max", 0) * s.omega;
  const auto na = static_cast<std::size_t>(eff.get_int("lzs.amp_points", 1));
  s.amp_grid = na == 1 ? std::vector<double>{amax} : linspace(0.0, amax, na);
  const double span = eff.get_double("lzs.delta_span_over_omega", 1) * s.omega;
  s.delta_grid = linspace(-span, span,
                          static_cast<std::size_t>(eff.get_int("lzs.delta_points", 2)));
  s.bloch = bloch_from(eff);
  s.readout_window = eff.get_double("lzs.readout_us", 0);
  s.dt = eff.get_double("lzs.dt_us", 0);
  finish_scan(lzs_map(s), eff, "lzs", ctx);
}

void run_bichromatic(const Config& user, const RunContext& ctx) {
  const Config eff = resolve(user,
                             with_bloch({
                                 {"bi.omega1_rad_us", KeyKind::num, "6.2831853071795862"},
                                 {"bi.x1", KeyKind::num, "2.4048"},
                                 {"bi.x2", KeyKind::num, "2.4048"},
                                 {"bi.phi_points", KeyKind::integer, "17"},
                                 {"bi.delta_span_over_omega1", KeyKind::num, "5.5"},
                                 {"bi.delta_points", KeyKind::integer, "111"},
                                 {"bi.readout_us", KeyKind::num, "70"},
                                 {"bi.dt_us", KeyKind::num, "0"},
                             }),
                             "bichromatic");
  BichromaticSettings s;
  s.omega1 = eff.get_double("bi.omega1_rad_us", 1);
  s.x1 = eff.get_double("bi.x1", 0);
  s.x2 = eff.get_double("bi.x2", 0);
  s.phi_grid = linspace(0.0, kTwoPi,
                        static_cast<std::size_t>(eff.get_int("bi.phi_points", 2)));
  const double span = eff.get_double("bi.delta_span_over_omega1", 1) * s.omega1;
  s.delta_grid = linspace(-span, span,
                          static_cast<std::size_t>(eff.get_int("bi.delta_points", 2)));
  s.bloch = bloch_from(eff);
  s.readout_window = eff.get_double("bi.readout_us", 0);
  s.dt = eff.get_double("bi.dt_us", 0);
  finish_scan(bichromatic_map(s), eff, "bichromatic", ctx);
}

void run_optical_rabi(const Config& user, const RunContext& ctx) {
  std::vector<KeySpec> keys = {
      {"rabi.power_uw", KeyKind::num, "0"},
      {"rabi.cal_rad_us_per_sqrt_uw", KeyKind::num, "0"},
      {"rabi.pulse_ns", KeyKind::num, "80"},
      {"rabi.tail_ns", KeyKind::num, "40"},
      {"rabi.bin_ns", KeyKind::num, "1"},
      {"rabi.dt_us", KeyKind::num, "0"},
      {"bloch.rabi_rad_us", KeyKind::num, "314.15926535897933"},
      {"bloch.t1_us", KeyKind::num, "0.014"},
      {"bloch.t2star_us", KeyKind::num, "0.36400000000000005"},
      {"bloch.gamma_per_us", KeyKind::num, "6.666666666666667"},
      {"bloch.repump_per_us", KeyKind::num, "0"},
  };
  const Config eff = resolve(user, keys, "optical-rabi");
  OpticalRabiSettings s;
  s.bloch = bloch_from(eff);
  s.power_uw = eff.get_double("rabi.power_uw", 0);
  s.omega_per_sqrt_uw = eff.get_double("rabi.cal_rad_us_per_sqrt_uw", 0);
  s.pulse_len_us = eff.get_double("rabi.pulse_ns", 0) * 1e-3;
  s.tail_us = eff.get_double("rabi.tail_ns", 0) * 1e-3;
  s.bin_us = eff.get_double("rabi.bin_ns", 0) * 1e-3;
  s.dt = eff.get_double("rabi.dt_us", 0);
  finish_scan(optical_rabi_trace(s), eff, "optical-rabi", ctx);
}

void run_spin_rabi(const Config& user, const RunContext& ctx) {
  const Config eff = resolve(user,
                             {
                                 {"spin.transition", KeyKind::text, "zero_plus"},
                                 {"spin.rabi_rad_us", KeyKind::num, "6.2831853071795862"},
                                 {"spin.t_max_us", KeyKind::num, "2"},
                                 {"spin.points", KeyKind::integer, "101"},
                                 {"spin.d_mhz", KeyKind::num, "1333.9535"},
                                 {"spin.e_mhz", KeyKind::num, "18.4195"},
                                 {"spin.full3level", KeyKind::boolean, "false"},
                             },
                             "spin-rabi");
  const std::string tr = eff.get_string("spin.transition", "");
  SpinTransition transition;
  if (tr == "zero_plus")
    transition = SpinTransition::zero_plus;
  else if (tr == "plus_minus")
    transition = SpinTransition::plus_minus;
  else
    throw std::invalid_argument("spin.transition must be zero_plus or plus_minus");
  SpinRabiOptions opts;
  opts.full_three_level = eff.get_bool("spin.full3level", false);
  opts.d_mhz = eff.get_double("spin.d_mhz", 0);
  opts.e_mhz = eff.get_double("spin.e_mhz", 0);
  const auto durations = linspace(0.0, eff.get_double("spin.t_max_us", 1),
                                  static_cast<std::size_t>(eff.get_int("spin.points", 2)));
  const SpinSequenceResult r =
      spin_rabi(transition, eff.get_double("spin.rabi_rad_us", 1), durations, opts);
  ScanResult scan;
  scan.axis1 = {"duration", "us", r.x};
  scan.values = r.signal;
  finish_scan(std::move(scan), eff, "spin-rabi", ctx);
}

NoiseModel noise_from(const Config& eff, std::uint64_t seed) {
  NoiseModel nm;
  const std::string kind = eff.get_string("noise.kind", "none");
  if (kind == "none")
    nm.kind = NoiseModel::Kind::none;
  else if (kind == "quasi_static")
    nm.kind = NoiseModel::Kind::quasi_static_gaussian;
  else if (kind == "ou")
    nm.kind = NoiseModel::Kind::ornstein_uhlenbeck;
  else
    throw std::invalid_argument("noise.kind must be none, quasi_static or ou");
  nm.sigma = eff.get_double("noise.sigma_rad_us", 0);
  nm.tau_c = eff.get_double("noise.tau_c_us", 0);
  nm.seed = seed;
  return nm;
}

// Shared by ramsey and echo. sigma = 0 derives the width from the target
// coherence time keys, and the derived value is echoed back so reruns see an
// explicit number.
void run_sequence(const Config& user, const RunContext& ctx, const std::string& experiment) {
  Config eff = resolve(user,
                       {
                           {"seq.tau_max_us", KeyKind::num,
                            experiment == "ramsey" ? "150" : "500"},
                           {"seq.points", KeyKind::integer,
                            experiment == "ramsey" ? "61" : "41"},
                           {"seq.detuning_rad_us", KeyKind::num,
                            experiment == "ramsey" ? "0.3" : "0"},
                           {"seq.shots", KeyKind::integer, "2000"},
                           {"noise.kind", KeyKind::text,
                            experiment == "ramsey" ? "quasi_static" : "ou"},
                           {"noise.sigma_rad_us", KeyKind::num, "0"},
                           {"noise.tau_c_us", KeyKind::num, "150"},
                           {"noise.t2star_us", KeyKind::num, "74"},
                           {"noise.echo_t2_us", KeyKind::num, "222"},
                       },
                       experiment);
  const auto seed = static_cast<std::uint64_t>(eff.get_int("seed", 0));
  NoiseModel nm = noise_from(eff, seed);
  if (nm.sigma == 0.0 && nm.kind == NoiseModel::Kind::quasi_static_gaussian)
    nm.sigma = quasi_static_sigma_for_t2star(eff.get_double("noise.t2star_us", 1));
  if (nm.sigma == 0.0 && nm.kind == NoiseModel::Kind::ornstein_uhlenbeck)
    nm.sigma = ou_sigma_for_echo_t2(nm.tau_c, eff.get_double("noise.echo_t2_us", 1));
  eff.set("noise.sigma_rad_us", format_double(nm.sigma));

  const auto tau = linspace(0.0, eff.get_double("seq.tau_max_us", 1),
                            static_cast<std::size_t>(eff.get_int("seq.points", 2)));
  const double det = eff.get_double("seq.detuning_rad_us", 0);
  const long shots = eff.get_int("seq.shots", 1);
  const SpinSequenceResult r =
      experiment == "ramsey" ? ramsey(tau, det, nm, shots) : hahn_echo(tau, det, nm, shots);

  ScanResult scan;
  scan.axis1 = {"tau", "us", r.x};
  scan.values = r.signal;
  scan.metadata["seq.n_samples"] = std::to_string(r.n_samples);
  finish_scan(std::move(scan), eff, experiment, ctx);
}

void run_zefoz(const Config& user, const RunContext& ctx) {
  const Config eff = resolve(user,
                             {
                                 {"zefoz.azz_mhz", KeyKind::num, "1"},
                                 {"zefoz.g", KeyKind::num, "2"},
                                 {"zefoz.branch", KeyKind::text, "up"},
                                 {"zefoz.d_mhz", KeyKind::num, "1333.9535"},
                                 {"zefoz.e_mhz", KeyKind::num, "18.4195"},
                                 {"zefoz.span_mt", KeyKind::num, "0.2"},
                                 {"zefoz.points", KeyKind::integer, "81"},
                             },
                             "zefoz");
  SpinSystemParams p;
  p.d = eff.get_double("zefoz.d_mhz", 0);
  p.e = eff.get_double("zefoz.e_mhz", 0);
  p.g = eff.get_double("zefoz.g", 2);
  const double azz = eff.get_double("zefoz.azz_mhz", 0);
  Mat3 a{};
  a[2][2] = azz;
  p.hyperfine = {a};
  const std::string br = eff.get_string("zefoz.branch", "up");
  if (br != "up" && br != "down")
    throw std::invalid_argument("zefoz.branch must be up or down");
  const NuclearBranch branch = br == "up" ? NuclearBranch::up : NuclearBranch::down;

  const double closed = zefoz_field_closed_form(p, branch);
  const double numeric = find_zefoz_field(p, branch);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", closed);
  ctx.out << "closed_form_bz_mt = " << buf << "\n";
  std::snprintf(buf, sizeof buf, "%.6f", numeric);
  ctx.out << "numeric_bz_mt = " << buf << "\n";

  if (!ctx.out_path.empty()) {
    const double span = eff.get_double("zefoz.span_mt", 0.1);
    const auto n = static_cast<std::size_t>(eff.get_int("zefoz.points", 2));
    const DispersionCurves disp =
        transition_dispersion(p, linspace(closed - span, closed + span, n), branch);
    ScanResult scan;
    scan.axis1 = {"bz", "mT", disp.bz};
    scan.axis2 = ScanAxis{"transition", "index", {0.0, 1.0}};
    scan.values.resize(disp.bz.size() * 2);
    for (std::size_t i = 0; i < disp.bz.size(); ++i) {
      scan.values[2 * i] = disp.nu_zero_plus[i];
      scan.values[2 * i + 1] = disp.nu_plus_minus[i];
    }
    scan.metadata["zefoz.closed_form_bz_mt"] = format_double(closed);
    scan.metadata["zefoz.numeric_bz_mt"] = format_double(numeric);
    finish_scan(std::move(scan), eff, "zefoz", ctx);
  }
}

void run_fit(const Config& user, const RunContext& ctx) {
  const Config eff = resolve(user,
                             {
                                 {"fit.kind", KeyKind::text, "lorentzian"},
                                 {"fit.input", KeyKind::text, ""},
                                 {"fit.scale", KeyKind::num, "0.001"},
                                 {"fit.omega_rad_us", KeyKind::num, "0"},
                                 {"fit.delta_rad_us", KeyKind::num, "0"},
                                 {"fit.envelope", KeyKind::text, "gaussian"},
                             },
                             "fit");
  const std::string input = eff.get_string("fit.input", "");
  if (input.empty()) throw std::invalid_argument("fit.input must name a scan file");
  const ScanResult scan = read_scan(input);
  const std::string kind = eff.get_string("fit.kind", "");
  nlohmann::json out;

  if (kind == "lorentzian") {
    const LineFit f = fit_lorentzian_line(scan, eff.get_double("fit.scale", 1));
    out["center"] = f.center;
    out["fwhm"] = f.fwhm;
    out["fwhm_mhz"] = f.fwhm_mhz;
    out["amplitude"] = f.amplitude;
    out["offset"] = f.offset;
    out["residual_rms"] = f.residual_rms;
    out["poor_fit"] = f.poor_fit;
  } else if (kind == "envelope") {
    const std::string ek = eff.get_string("fit.envelope", "");
    EnvelopeKind kindv;
    if (ek == "gaussian")
      kindv = EnvelopeKind::gaussian;
    else if (ek == "exponential")
      kindv = EnvelopeKind::exponential;
    else if (ek == "stretched")
      kindv = EnvelopeKind::stretched;
    else
      throw std::invalid_argument("fit.envelope must be gaussian, exponential or stretched");
    const EnvelopeFit f = fit_envelope(scan.axis1.grid, scan.values, kindv,
                                       eff.get_double("fit.omega_rad_us", 0));
    out["amplitude"] = f.amplitude;
    out["t"] = f.t;
    out["p"] = f.p;
    out["omega"] = f.omega;
    out["phi0"] = f.phi0;
    out["offset"] = f.offset;
    out["residual_rms"] = f.residual_rms;
    out["converged"] = f.converged;
  } else if (kind == "bloch") {
    const double omega = eff.get_double("fit.omega_rad_us", 0);
    if (omega <= 0.0) throw std::invalid_argument("fit.omega_rad_us must be positive");
    const BlochFitResult f =
        fit_bloch_parameters(scan, omega, eff.get_double("fit.delta_rad_us", 0),
                             static_cast<std::uint64_t>(eff.get_int("seed", 0)));
    out["t1_us"] = f.t1;
    out["t2star_us"] = f.t2_star;
    out["t2_us"] = f.t2;
    out["gamma_per_us"] = f.gamma;
    out["amplitude"] = f.amplitude;
    out["offset"] = f.offset;
    out["residual_rms"] = f.residual_rms;
  } else {
    throw std::invalid_argument("fit.kind must be lorentzian, envelope or bloch");
  }

  for (const auto& [k, v] : out.items())
    ctx.out << k << " = " << (v.is_number() ? format_double(v.get<double>()) : v.dump())
            << "\n";
  if (!ctx.out_path.empty()) {
    nlohmann::json file;
    file["fit"] = out;
    file["metadata"] = {{"experiment", "fit"},
                        {"version", kVersionTag},
                        {"config", eff.serialize()}};
    std::ofstream ofs(ctx.out_path, std::ios::binary);
    if (!ofs) throw std::runtime_error("cannot write " + ctx.out_path);
    ofs << file.dump(2) << "\n";
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"driven two- and three-level quantum dynamics toolkit"};
  app.set_version_flag("--version", std::string(kVersionTag));
  app.require_subcommand(1);

  std::string config_path, out_path, format = "json";
  std::vector<std::string> sets;
  long long seed = 0;
  int threads = 0;
  bool full3level = false;

  const std::vector<std::string> names = {"ple",       "lzs",    "bichromatic", "optical-rabi",
                                          "spin-rabi", "ramsey", "echo",        "zefoz",
                                          "fit",       "selftest"};
  std::map<std::string, CLI::App*> subs;
  std::map<std::string, CLI::Option*> seed_opts;
  for (const auto& n : names) {
    CLI::App* sub = app.add_subcommand(n, "run the " + n + " experiment");
    sub->add_option("--config", config_path, "configuration file");
    sub->add_option("--set", sets, "override `key=value` (repeatable)")->take_all();
    seed_opts[n] = sub->add_option("--seed", seed, "random seed");
    sub->add_option("--out", out_path, "output file path");
    sub->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--threads", threads, "worker thread count");
    if (n == "spin-rabi")
      sub->add_flag("--full3level", full3level, "keep the spectator level in the model");
    subs[n] = sub;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  std::string chosen;
  for (const auto& [n, sub] : subs)
    if (sub->parsed()) chosen = n;

  try {
    if (threads > 0) setenv("STUECKELBERG_THREADS", std::to_string(threads).c_str(), 1);

    if (chosen == "selftest") return run_selftest(std::cout) == 0 ? 0 : 1;

    Config cfg = config_path.empty() ? Config{} : Config::load(config_path);
    for (const auto& kv : sets) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos)
        throw std::invalid_argument("--set expects key=value, got '" + kv + "'");
      cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (seed_opts[chosen]->count() > 0) cfg.set("seed", std::to_string(seed));
    if (full3level) cfg.set("spin.full3level", "true");

    const RunContext ctx{out_path, format, std::cout};
    if (chosen == "ple")
      run_ple(cfg, ctx);
    else if (chosen == "lzs")
      run_lzs(cfg, ctx);
    else if (chosen == "bichromatic")
      run_bichromatic(cfg, ctx);
    else if (chosen == "optical-rabi")
      run_optical_rabi(cfg, ctx);
    else if (chosen == "spin-rabi")
      run_spin_rabi(cfg, ctx);
    else if (chosen == "ramsey" || chosen == "echo")
      run_sequence(cfg, ctx, chosen);
    else if (chosen == "zefoz")
      run_zefoz(cfg, ctx);
    else if (chosen == "fit")
      run_fit(cfg, ctx);
    else
      throw std::logic_error("unhandled subcommand " + chosen);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace stueckelberg
