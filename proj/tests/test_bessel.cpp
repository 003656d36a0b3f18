#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "stueckelberg/bessel.hpp"
#include "stueckelberg/core.hpp"
#include "stueckelberg/rng.hpp"

using namespace stueckelberg;

namespace {

// Integral representation J_n(x) = (1/pi) \int_0^pi cos(n t - x sin t) dt,
// composite trapezoid. Integrand is periodic-smooth, so this converges fast.
double bessel_quadrature(int n, double x) {
  const int m = 8192;
  const double h = 0.5 * kTwoPi / m;  // pi / m
  double acc = 0.5 * (std::cos(0.0) + std::cos(n * 0.5 * kTwoPi - x * std::sin(0.5 * kTwoPi)));
  for (int i = 1; i < m; ++i) {
    const double t = h * i;
    acc += std::cos(n * t - x * std::sin(t));
  }
  return acc * h / (0.5 * kTwoPi);
}

// Fourier coefficient of exp(-i [x1 sin t + x2 sin(2t + phi)]) on one period.
std::complex<double> generalized_quadrature(int n, double x1, double x2, double phi) {
  const int m = 4096;
  const double h = kTwoPi / m;
  std::complex<double> acc{0.0, 0.0};
  for (int i = 0; i < m; ++i) {
    const double t = h * i;
    const double arg = x1 * std::sin(t) + x2 * std::sin(2.0 * t + phi);
    acc += std::exp(std::complex<double>(0.0, n * t - arg));
  }
  return acc / static_cast<double>(m);
}

}  // namespace

TEST_CASE("ordinary Bessel values and zeros") {
  CHECK(bessel_jn(0, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(bessel_jn(1, 0.0) == 0.0);
  CHECK(bessel_jn(5, 0.0) == 0.0);
  // First zero of J0 at 2.404825557695773.
  CHECK(std::abs(bessel_jn(0, 2.404825557695773)) < 1e-12);
  CHECK(std::abs(bessel_jn(0, 2.4048)) < 3e-5);
  // Reference values (Abramowitz & Stegun style spot checks).
  CHECK(bessel_jn(0, 1.0) == doctest::Approx(0.7651976865579666).epsilon(1e-13));
  CHECK(bessel_jn(1, 1.0) == doctest::Approx(0.4400505857449335).epsilon(1e-13));
  CHECK(bessel_jn(2, 5.0) == doctest::Approx(0.04656511627775222).epsilon(1e-11));
}

TEST_CASE("ordinary Bessel against the cosine-integral oracle") {
  const double xs[] = {0.5, 1.9, 2.1, 10.0, 30.5, 60.0};
  for (double x : xs)
    for (int n = 0; n <= 40; ++n)
      CHECK(std::abs((bessel_jn(n, x)) - (bessel_quadrature(n, x))) <= 5e-12);
}

TEST_CASE("ordinary Bessel identities") {
  SUBCASE("sum rule sum_n J_n(x)^2 = 1") {
    const double x = 10.0;
    double s = bessel_jn(0, x) * bessel_jn(0, x);
    for (int n = 1; n <= 40; ++n) s += 2.0 * bessel_jn(n, x) * bessel_jn(n, x);
    CHECK(s == doctest::Approx(1.0).epsilon(1e-10));
  }
  SUBCASE("three-term recurrence") {
    for (double x : {0.7, 3.3, 17.0})
      for (int n = 1; n <= 20; ++n) {
        const double lhs = bessel_jn(n - 1, x) + bessel_jn(n + 1, x);
        CHECK(std::abs((lhs) - (2.0 * n / x * bessel_jn(n, x))) <= 1e-10);
      }
  }
  SUBCASE("negative order and negative argument parity") {
    for (int n = 0; n <= 7; ++n) {
      const double sgn = (n % 2 == 0) ? 1.0 : -1.0;
      CHECK(std::abs((bessel_jn(-n, 3.7)) - (sgn * bessel_jn(n, 3.7))) <= 1e-14);
      CHECK(std::abs((bessel_jn(n, -3.7)) - (sgn * bessel_jn(n, 3.7))) <= 1e-14);
    }
  }
}

TEST_CASE("Bessel sequence matches individual evaluations") {
  for (double x : {-12.5, 0.0, 0.3, 8.0, 41.0}) {
    const auto seq = bessel_jn_sequence(25, x);
    REQUIRE(seq.size() == 26);
    for (int n = 0; n <= 25; ++n)
      CHECK(std::abs((seq[static_cast<std::size_t>(n)]) - (bessel_jn(n, x))) <= 1e-12);
  }
}

TEST_CASE("generalized Bessel reduces to the ordinary one") {
  for (int n = -6; n <= 6; ++n) {
    const auto v = generalized_bessel_2d(n, 1.8, 0.0, 0.9);
    CHECK(std::abs((v.imag()) - (0.0)) <= 1e-15);
    CHECK(std::abs((v.real()) - (bessel_jn(n, 1.8))) <= 1e-13);
  }
  // With x1 = 0 only even n survive at phi = 0: Jgen_{2k} = J_k(x2).
  for (int n = -5; n <= 5; ++n) {
    const auto v = generalized_bessel_2d(n, 0.0, 2.2, 0.0);
    if (n % 2 != 0) {
      CHECK(std::abs(v) < 1e-14);
    } else {
      CHECK(std::abs((v.real()) - (bessel_jn(n / 2, 2.2))) <= 1e-13);
      CHECK(std::abs((v.imag()) - (0.0)) <= 1e-14);
    }
  }
}

TEST_CASE("generalized Bessel against the Fourier-coefficient oracle") {
  Rng rng(20240811ULL, 0, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = static_cast<int>(17.0 * rng.uniform()) - 8;
    const double x1 = 6.0 * rng.uniform();
    const double x2 = 6.0 * rng.uniform();
    const double phi = kTwoPi * rng.uniform();
    const auto got = generalized_bessel_2d(n, x1, x2, phi);
    const auto want = generalized_quadrature(n, x1, x2, phi);
    CHECK(std::abs(got - want) < 1e-9);
  }
}

TEST_CASE("generalized Bessel identities") {
  const double x1 = 2.7, x2 = 1.4, phi = 1.1;
  SUBCASE("unitarity: sum_n |Jgen_n|^2 = 1") {
    double s = 0.0;
    for (int n = -40; n <= 40; ++n) s += std::norm(generalized_bessel_2d(n, x1, x2, phi));
    CHECK(s == doctest::Approx(1.0).epsilon(1e-8));
  }
  SUBCASE("2 pi periodicity in phi") {
    for (int n = -4; n <= 4; ++n) {
      const auto a = generalized_bessel_2d(n, x1, x2, phi);
      const auto b = generalized_bessel_2d(n, x1, x2, phi + kTwoPi);
      CHECK(std::abs(a - b) < 1e-12);
    }
  }
  SUBCASE("order reflection: Jgen_{-n}(phi) = (-1)^n conj(Jgen_n(phi + pi))") {
    for (int n = -6; n <= 6; ++n) {
      const double sgn = (((n % 2) + 2) % 2 == 0) ? 1.0 : -1.0;
      const auto lhs = generalized_bessel_2d(-n, x1, x2, phi);
      const auto rhs = sgn * std::conj(generalized_bessel_2d(n, x1, x2, phi + 0.5 * kTwoPi));
      CHECK(std::abs(lhs - rhs) < 1e-12);
    }
  }
  SUBCASE("phase reflection: Jgen_n(-phi) = conj(Jgen_n(phi))") {
    for (int n = -6; n <= 6; ++n) {
      const auto lhs = generalized_bessel_2d(n, x1, x2, -phi);
      const auto rhs = std::conj(generalized_bessel_2d(n, x1, x2, phi));
      CHECK(std::abs(lhs - rhs) < 1e-12);
    }
  }
}
