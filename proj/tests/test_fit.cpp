#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "stueckelberg/fit.hpp"
#include "stueckelberg/rng.hpp"

using namespace stueckelberg;

namespace {

std::vector<double> grid(double a, double b, int n) {
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = a + (b - a) * i / (n - 1);
  return g;
}

double lorentz(double x, double c, double w, double a, double o) {
  const double u = (x - c) / (0.5 * w);
  return a / (1.0 + u * u) + o;
}

}  // namespace

TEST_CASE("damped least squares on a separable exponential") {
  const auto x = grid(0.0, 10.0, 60);
  const double a0 = 2.5, k0 = 0.45;
  ResidualFn res = [&](const std::vector<double>& p) {
    std::vector<double> r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
      r[i] = p[0] * std::exp(-p[1] * x[i]) - a0 * std::exp(-k0 * x[i]);
    return r;
  };
  const FitResult f = fit_least_squares(res, {1.0, 1.0});
  REQUIRE(f.converged);
  CHECK(f.params[0] == doctest::Approx(a0).epsilon(1e-7));
  CHECK(f.params[1] == doctest::Approx(k0).epsilon(1e-7));
  CHECK(f.chi2 < 1e-14);
}

TEST_CASE("iteration cap returns best-so-far without claiming convergence") {
  // Rosenbrock-style valley is slow; one iteration cannot reach the bottom.
  ResidualFn res = [](const std::vector<double>& p) {
    return std::vector<double>{10.0 * (p[1] - p[0] * p[0]), 1.0 - p[0]};
  };
  FitOptions opts;
  opts.max_iterations = 1;
  const FitResult f = fit_least_squares(res, {-1.2, 1.0}, opts);
  CHECK_FALSE(f.converged);
  CHECK(!f.message.empty());
  // Still made progress from the start.
  auto chi2 = [&](const std::vector<double>& p) {
    double s = 0.0;
    for (double r : res(p)) s += r * r;
    return s;
  };
  CHECK(f.chi2 <= chi2({-1.2, 1.0}));
  CHECK(f.chi2 == doctest::Approx(chi2(f.params)).epsilon(1e-12));

  FitOptions enough;
  enough.max_iterations = 500;
  const FitResult g = fit_least_squares(res, {-1.2, 1.0}, enough);
  CHECK(g.converged);
  CHECK(g.params[0] == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(g.params[1] == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("multi-start is deterministic and no worse than a single fit") {
  // Two-basin problem: r = (sin(3 p) , 0.1 (p - 2)); local minima near
  // multiples of pi/3.
  ResidualFn res = [](const std::vector<double>& p) {
    return std::vector<double>{std::sin(3.0 * p[0]), 0.1 * (p[0] - 2.0)};
  };
  const FitResult single = fit_least_squares(res, {0.3});
  const FitResult multi = fit_multi_start(res, {0.3}, {false}, 1.5, 12, 99);
  const FitResult multi2 = fit_multi_start(res, {0.3}, {false}, 1.5, 12, 99);
  CHECK(multi.params[0] == multi2.params[0]);
  CHECK(multi.chi2 == multi2.chi2);
  CHECK(multi.chi2 <= single.chi2 + 1e-15);
  // The global basin sits at p = 2 pi / 3.
  CHECK(multi.params[0] == doctest::Approx(2.0 * 3.14159265358979 / 3.0).epsilon(0.05));

  CHECK_THROWS_AS(
      (void)fit_multi_start(res, {0.3}, {false, true}, 0.5, 4, 1), std::invalid_argument);
}

TEST_CASE("lorentzian line fits") {
  const auto x = grid(-30.0, 30.0, 201);

  SUBCASE("noiseless round trip") {
    std::vector<double> y;
    for (double v : x) y.push_back(lorentz(v, 1.7, 21.0, 0.8, 0.05));
    const LorentzianFit f = fit_lorentzian(x, y);
    REQUIRE(f.converged);
    CHECK_FALSE(f.poor_fit);
    CHECK(std::abs((f.center) - (1.7)) <= 1e-6);
    CHECK(f.fwhm == doctest::Approx(21.0).epsilon(1e-6));
    CHECK(f.amplitude == doctest::Approx(0.8).epsilon(1e-6));
    CHECK(std::abs((f.offset) - (0.05)) <= 1e-7);
    CHECK(f.residual_rms < 1e-10);
  }

  SUBCASE("offset does not bias the width") {
    std::vector<double> y;
    for (double v : x) y.push_back(lorentz(v, 0.0, 21.0, 1.0, 0.1));
    const LorentzianFit f = fit_lorentzian(x, y);
    CHECK(f.fwhm == doctest::Approx(21.0).epsilon(0.005));
  }

  SUBCASE("one percent noise keeps parameters within two percent") {
    std::mt19937_64 gen(4321);
    std::normal_distribution<double> nd(0.0, 0.01);
    std::vector<double> y;
    for (double v : x) y.push_back(lorentz(v, -2.0, 21.0, 1.0, 0.0) + nd(gen));
    const LorentzianFit f = fit_lorentzian(x, y);
    REQUIRE(f.converged);
    CHECK_FALSE(f.poor_fit);
    CHECK(std::abs((f.center) - (-2.0)) <= 0.42);
    CHECK(f.fwhm == doctest::Approx(21.0).epsilon(0.02));
    CHECK(f.amplitude == doctest::Approx(1.0).epsilon(0.02));
  }

  SUBCASE("a shape the model cannot represent is flagged") {
    // Two well-separated peaks of equal weight.
    std::vector<double> y;
    for (double v : x)
      y.push_back(lorentz(v, -15.0, 6.0, 1.0, 0.0) + lorentz(v, 15.0, 6.0, 1.0, 0.0));
    const LorentzianFit f = fit_lorentzian(x, y);
    CHECK(f.poor_fit);
  }

  SUBCASE("input validation") {
    CHECK_THROWS_AS((void)fit_lorentzian({1.0, 2.0}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS((void)fit_lorentzian({1.0, 2.0, 3.0}, {1.0, 2.0, 3.0}),
                    std::invalid_argument);  // too few samples
  }
}

TEST_CASE("envelope fits") {
  SUBCASE("gaussian decay, noiseless") {
    const auto x = grid(0.0, 200.0, 81);
    std::vector<double> y;
    for (double v : x) y.push_back(0.5 * std::exp(-std::pow(v / 74.0, 2)) + 0.5);
    const EnvelopeFit f = fit_envelope(x, y, EnvelopeKind::gaussian);
    REQUIRE(f.converged);
    CHECK(f.p == 2.0);
    CHECK(f.t == doctest::Approx(74.0).epsilon(1e-3));
    CHECK(f.amplitude == doctest::Approx(0.5).epsilon(1e-3));
    CHECK(f.offset == doctest::Approx(0.5).epsilon(1e-3));
  }

  SUBCASE("stretched fit recovers a plain exponential") {
    const auto x = grid(0.0, 30.0, 61);
    std::vector<double> y;
    for (double v : x) y.push_back(std::exp(-v / 7.0));
    const EnvelopeFit f = fit_envelope(x, y, EnvelopeKind::stretched);
    REQUIRE(f.converged);
    CHECK(f.p == doctest::Approx(1.0).epsilon(0.05));
    CHECK(f.t == doctest::Approx(7.0).epsilon(0.05));
  }

  SUBCASE("noisy gaussian stays within three percent across repeated draws") {
    const auto x = grid(0.0, 180.0, 61);
    Rng rng(606ULL, 0, 0);
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<double> y;
      for (double v : x)
        y.push_back(0.5 * std::exp(-std::pow(v / 74.0, 2)) + 0.5 + 0.01 * rng.gaussian());
      const EnvelopeFit f = fit_envelope(x, y, EnvelopeKind::gaussian);
      REQUIRE(f.converged);
      CHECK(f.t == doctest::Approx(74.0).epsilon(0.03));
    }
  }

  SUBCASE("oscillating envelope with a frequency hint") {
    const auto x = grid(0.0, 60.0, 241);
    const double omega = 0.9, t2 = 18.0;
    std::vector<double> y;
    for (double v : x)
      y.push_back(0.45 * std::exp(-std::pow(v / t2, 2)) * std::cos(omega * v + 0.2) + 0.5);
    const EnvelopeFit f = fit_envelope(x, y, EnvelopeKind::gaussian, 0.8);
    REQUIRE(f.converged);
    CHECK(f.omega == doctest::Approx(0.9).epsilon(1e-3));
    CHECK(f.t == doctest::Approx(18.0).epsilon(1e-2));
    CHECK(f.amplitude == doctest::Approx(0.45).epsilon(1e-2));
  }

  SUBCASE("input validation") {
    CHECK_THROWS_AS((void)fit_envelope({1.0}, {1.0, 2.0}, EnvelopeKind::gaussian),
                    std::invalid_argument);
  }
}

TEST_CASE("correlation measures") {
  const std::vector<double> a{1.0, 2.0, 3.0, 4.0, 5.0};
  const std::vector<double> up{2.0, 4.0, 6.0, 8.0, 10.0};
  const std::vector<double> down{5.0, 4.0, 3.0, 2.0, 1.0};
  CHECK(pearson_correlation(a, up) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(pearson_correlation(a, down) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(rank_correlation(a, up) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rank_correlation(a, down) == doctest::Approx(-1.0).epsilon(1e-12));

  // Monotone but nonlinear: rank correlation saturates, Pearson does not.
  std::vector<double> cube;
  for (double v : a) cube.push_back(v * v * v);
  CHECK(rank_correlation(a, cube) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(pearson_correlation(a, cube) < 1.0);
  CHECK(pearson_correlation(a, cube) > 0.9);

  // Hand value with a tie: ranks of {1, 2, 2, 4} are {1, 2.5, 2.5, 4}.
  const std::vector<double> t1{1.0, 2.0, 2.0, 4.0};
  const std::vector<double> t2{10.0, 20.0, 30.0, 40.0};
  // Pearson of ranks {1, 2.5, 2.5, 4} vs {1, 2, 3, 4}: cov = 2.25,
  // sd1 = sqrt(4.5), sd2 = sqrt(5) (times 1/n each) -> r = 2.25/sqrt(22.5).
  CHECK(rank_correlation(t1, t2) == doctest::Approx(2.25 / std::sqrt(22.5)).epsilon(1e-12));

  CHECK_THROWS_AS((void)pearson_correlation({1.0}, {1.0, 2.0}), std::invalid_argument);
  CHECK_THROWS_AS((void)rank_correlation({1.0, 2.0}, {1.0}), std::invalid_argument);
  // Zero variance input reports no correlation.
  CHECK(pearson_correlation({1.0, 1.0}, {1.0, 2.0}) == 0.0);
}
