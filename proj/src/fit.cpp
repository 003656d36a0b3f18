#include "stueckelberg/fit.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "stueckelberg/rng.hpp"

namespace stueckelberg {

namespace {

double chi2_of(const std::vector<double>& r) {
  double s = 0.0;
  for (double v : r) s += v * v;
  return s;
}

// Gaussian elimination with partial pivoting for the (small) normal equations.
bool solve_normal(std::vector<std::vector<double>> a, std::vector<double> b,
                  std::vector<double>& out) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    if (std::abs(a[piv][col]) < 1e-300) return false;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  out.assign(n, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= a[i][c] * out[c];
    out[i] = s / a[i][i];
  }
  return true;
}

}  // namespace

FitResult fit_least_squares(const ResidualFn& residuals, std::vector<double> initial,
                            const FitOptions& opts) {
  FitResult best;
  best.params = initial;
  std::vector<double> r = residuals(initial);
  best.chi2 = chi2_of(r);

  const std::size_t np = initial.size();
  const std::size_t nr = r.size();
  if (np == 0 || nr == 0) throw std::invalid_argument("fit_least_squares: empty problem");

  double damping = opts.initial_damping;
  std::vector<double> p = initial;
  int iter = 0;
  for (; iter < opts.max_iterations; ++iter) {
    // Forward-difference Jacobian.
    std::vector<std::vector<double>> jac(nr, std::vector<double>(np, 0.0));
    for (std::size_t j = 0; j < np; ++j) {
      const double h = opts.fd_relative * std::max(std::abs(p[j]), 1e-8);
      std::vector<double> pj = p;
      pj[j] += h;
      const std::vector<double> rj = residuals(pj);
      for (std::size_t i = 0; i < nr; ++i) jac[i][j] = (rj[i] - r[i]) / h;
    }

    std::vector<std::vector<double>> jtj(np, std::vector<double>(np, 0.0));
    std::vector<double> jtr(np, 0.0);
    for (std::size_t i = 0; i < nr; ++i) {
      for (std::size_t a = 0; a < np; ++a) {
        jtr[a] += jac[i][a] * r[i];
        for (std::size_t b = a; b < np; ++b) jtj[a][b] += jac[i][a] * jac[i][b];
      }
    }
    for (std::size_t a = 0; a < np; ++a)
      for (std::size_t b = 0; b < a; ++b) jtj[a][b] = jtj[b][a];

    double grad_max = 0.0;
    for (double g : jtr) grad_max = std::max(grad_max, std::abs(g));
    if (grad_max < 1e-14 * std::max(1.0, best.chi2)) break;

    bool stepped = false;
    for (int attempt = 0; attempt < 30; ++attempt) {
      std::vector<std::vector<double>> lhs = jtj;
      for (std::size_t a = 0; a < np; ++a)
        lhs[a][a] += damping * std::max(jtj[a][a], 1e-12);
      std::vector<double> rhs(np), step;
      for (std::size_t a = 0; a < np; ++a) rhs[a] = -jtr[a];
      if (!solve_normal(lhs, rhs, step)) {
        damping *= 10.0;
        continue;
      }
      std::vector<double> pn = p;
      for (std::size_t a = 0; a < np; ++a) pn[a] += step[a];
      const std::vector<double> rn = residuals(pn);
      const double cn = chi2_of(rn);
      if (cn < best.chi2) {
        double rel_step = 0.0;
        for (std::size_t a = 0; a < np; ++a)
          rel_step = std::max(rel_step, std::abs(step[a]) / std::max(std::abs(p[a]), 1e-8));
        p = pn;
        r = rn;
        best.params = pn;
        best.chi2 = cn;
        damping = std::max(damping / 3.0, 1e-12);
        stepped = true;
        if (rel_step < opts.step_tolerance) {
          best.converged = true;
          best.iterations = iter + 1;
          best.message = "converged: step below tolerance";
          return best;
        }
        break;
      }
      damping *= 4.0;
    }
    if (!stepped) {
      best.converged = true;
      best.iterations = iter + 1;
      best.message = "converged: no downhill step found";
      return best;
    }
  }
  best.iterations = iter;
  best.converged = iter < opts.max_iterations;
  best.message = best.converged ? "converged" : "iteration cap reached; returning best point";
  return best;
}

FitResult fit_multi_start(const ResidualFn& residuals, const std::vector<double>& initial,
                          const std::vector<bool>& positive, double jitter, int n_starts,
                          std::uint64_t seed, const FitOptions& opts) {
  if (positive.size() != initial.size())
    throw std::invalid_argument("fit_multi_start: positive mask size mismatch");
  FitResult best;
  bool have = false;
  for (int s = 0; s < n_starts; ++s) {
    Rng rng(seed, rng_stream::kFitJitter, static_cast<std::uint64_t>(s));
    std::vector<double> p0 = initial;
    if (s > 0) {
      for (std::size_t j = 0; j < p0.size(); ++j) {
        const double g = rng.gaussian();
        if (positive[j])
          p0[j] *= std::exp(jitter * g);
        else
          p0[j] += jitter * std::max(std::abs(p0[j]), 1.0) * g;
      }
    }
    FitResult res = fit_least_squares(residuals, p0, opts);
    if (!have || res.chi2 < best.chi2) {
      best = res;
      have = true;
    }
  }
  return best;
}

LorentzianFit fit_lorentzian(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 5)
    throw std::invalid_argument("fit_lorentzian: need at least 5 samples");
  const std::size_t n = x.size();

  // Initial guesses from the data.
  std::size_t imax = 0;
  double ymin = y[0], ymax = y[0];
  for (std::size_t i = 0; i < n; ++i) {
    if (y[i] > ymax) {
      ymax = y[i];
      imax = i;
    }
    ymin = std::min(ymin, y[i]);
  }
  const double half = ymin + 0.5 * (ymax - ymin);
  double left = x.front(), right = x.back();
  for (std::size_t i = imax; i-- > 0;)
    if (y[i] < half) {
      left = x[i];
      break;
    }
  for (std::size_t i = imax + 1; i < n; ++i)
    if (y[i] < half) {
      right = x[i];
      break;
    }
  double w0 = right - left;
  if (w0 <= 0.0) w0 = (x.back() - x.front()) / 4.0;

  const std::vector<double> p0 = {x[imax], w0, ymax - ymin, ymin};
  auto model = [&](const std::vector<double>& p, double xv) {
    const double hw = 0.5 * p[1];
    const double u = (xv - p[0]) / hw;
    return p[2] / (1.0 + u * u) + p[3];
  };
  auto resid = [&](const std::vector<double>& p) {
    std::vector<double> r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = model(p, x[i]) - y[i];
    return r;
  };
  FitResult fr = fit_least_squares(resid, p0);

  LorentzianFit out;
  out.center = fr.params[0];
  out.fwhm = std::abs(fr.params[1]);
  out.amplitude = fr.params[2];
  out.offset = fr.params[3];
  out.residual_rms = std::sqrt(fr.chi2 / static_cast<double>(n));
  out.converged = fr.converged;

  // Noise floor from the median absolute second difference (smooth trends
  // mostly cancel; white noise survives with a factor sqrt(6)).
  std::vector<double> d2;
  for (std::size_t i = 1; i + 1 < n; ++i) d2.push_back(std::abs(y[i + 1] - 2.0 * y[i] + y[i - 1]));
  double floor_est = 0.0;
  if (!d2.empty()) {
    std::nth_element(d2.begin(), d2.begin() + d2.size() / 2, d2.end());
    floor_est = d2[d2.size() / 2] / std::sqrt(6.0) / 0.6745;
  }
  const double scale = std::max(floor_est, 1e-12 * std::max(std::abs(ymax), 1.0));
  out.poor_fit = out.residual_rms > 5.0 * scale;
  return out;
}

EnvelopeFit fit_envelope(const std::vector<double>& x, const std::vector<double>& y,
                         EnvelopeKind kind, double omega_hint) {
  if (x.size() != y.size() || x.size() < 4)
    throw std::invalid_argument("fit_envelope: need at least 4 samples");
  const std::size_t n = x.size();
  const bool oscillating = omega_hint != 0.0;
  const bool free_p = kind == EnvelopeKind::stretched;
  const double fixed_p = kind == EnvelopeKind::exponential ? 1.0 : 2.0;

  double ymin = y[0], ymax = y[0], xmax = std::abs(x[0]);
  for (std::size_t i = 0; i < n; ++i) {
    ymin = std::min(ymin, y[i]);
    ymax = std::max(ymax, y[i]);
    xmax = std::max(xmax, std::abs(x[i]));
  }

  // Layout: [A, T, (p), (omega, phi0), c]
  std::vector<double> p0;
  p0.push_back(oscillating ? 0.5 * (ymax - ymin) : ymax - ymin);
  p0.push_back(xmax > 0 ? 0.5 * xmax : 1.0);
  if (free_p) p0.push_back(2.0);
  if (oscillating) {
    p0.push_back(omega_hint);
    p0.push_back(0.0);
  }
  p0.push_back(oscillating ? 0.5 * (ymax + ymin) : ymin);

  auto unpack = [&](const std::vector<double>& p, EnvelopeFit& f) {
    std::size_t k = 0;
    f.amplitude = p[k++];
    f.t = std::abs(p[k++]);
    f.p = free_p ? std::abs(p[k++]) : fixed_p;
    if (oscillating) {
      f.omega = p[k++];
      f.phi0 = p[k++];
    } else {
      f.omega = 0.0;
      f.phi0 = 0.0;
    }
    f.offset = p[k++];
  };
  auto resid = [&](const std::vector<double>& p) {
    EnvelopeFit f;
    unpack(p, f);
    std::vector<double> r(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double u = f.t > 0 ? std::pow(std::abs(x[i]) / f.t, f.p) : 1e30;
      double m = f.amplitude * std::exp(-std::min(u, 700.0));
      if (oscillating) m *= std::cos(f.omega * x[i] + f.phi0);
      r[i] = m + f.offset - y[i];
    }
    return r;
  };
  FitResult fr = fit_least_squares(resid, p0);
  EnvelopeFit out;
  unpack(fr.params, out);
  out.residual_rms = std::sqrt(fr.chi2 / static_cast<double>(n));
  out.converged = fr.converged;
  return out;
}

double pearson_correlation(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size() || a.empty())
    throw std::invalid_argument("pearson_correlation: size mismatch");
  const double n = static_cast<double>(a.size());
  const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
  const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - ma, db = b[i] - mb;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (saa <= 0.0 || sbb <= 0.0) return 0.0;
  return sab / std::sqrt(saa * sbb);
}

namespace {
std::vector<double> ranks_of(const std::vector<double>& v) {
  const std::size_t n = v.size();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) { return v[i] < v[j]; });
  std::vector<double> r(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && v[idx[j + 1]] == v[idx[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) r[idx[k]] = avg;
    i = j + 1;
  }
  return r;
}
}  // namespace

double rank_correlation(const std::vector<double>& a, const std::vector<double>& b) {
  return pearson_correlation(ranks_of(a), ranks_of(b));
}

}  // namespace stueckelberg
