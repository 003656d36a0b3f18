#include "stueckelberg/bessel.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace stueckelberg {

namespace {

// Ascending power series, adequate only for small |x|.
double series_jn(int n, double x) {
  const double half = 0.5 * x;
  double term = 1.0;
  for (int k = 1; k <= n; ++k) term *= half / k;
  double sum = term;
  const double m2 = -half * half;
  for (int m = 1; m <= 60; ++m) {
    term *= m2 / (static_cast<double>(m) * (m + n));
    sum += term;
    if (std::abs(term) < 1e-18 * (std::abs(sum) + 1e-300)) break;
  }
  return sum;
}

// Miller downward recurrence normalized with J_0 + 2 sum J_{2k} = 1.
double miller_jn(int n, double x) {
  const int start = std::max(n, static_cast<int>(std::ceil(x))) + 80;
  double jp = 0.0;      // J_{m+1}
  double jc = 1e-30;    // J_m, arbitrary seed
  double norm = 0.0;
  double result = 0.0;
  for (int m = start; m >= 0; --m) {
    const double jm = (2.0 * (m + 1) / x) * jc - jp;
    jp = jc;
    jc = jm;
    if (m == n) result = jc;
    if (m % 2 == 0) norm += (m == 0) ? jc : 2.0 * jc;
    if (std::abs(jc) > 1e250) {
      jc *= 1e-250;
      jp *= 1e-250;
      norm *= 1e-250;
      result *= 1e-250;
    }
  }
  return result / norm;
}

}  // namespace

double bessel_jn(int n, double x) {
  double sign = 1.0;
  if (n < 0) {
    n = -n;
    if (n % 2 != 0) sign = -sign;
  }
  if (x < 0.0) {
    x = -x;
    if (n % 2 != 0) sign = -sign;
  }
  if (x == 0.0) return n == 0 ? 1.0 : 0.0;
  if (x < 2.0) return sign * series_jn(n, x);
  return sign * miller_jn(n, x);
}

std::vector<double> bessel_jn_sequence(int n_max, double x) {
  if (n_max < 0) throw std::invalid_argument("bessel_jn_sequence: n_max < 0");
  std::vector<double> out(n_max + 1, 0.0);
  const double ax = std::abs(x);
  if (ax == 0.0) {
    out[0] = 1.0;
    return out;
  }
  if (ax < 2.0) {
    for (int n = 0; n <= n_max; ++n) out[n] = series_jn(n, ax);
  } else {
    const int start = std::max(n_max, static_cast<int>(std::ceil(ax))) + 80;
    double jp = 0.0;
    double jc = 1e-30;
    double norm = 0.0;
    for (int m = start; m >= 0; --m) {
      const double jm = (2.0 * (m + 1) / ax) * jc - jp;
      jp = jc;
      jc = jm;
      if (m <= n_max) out[m] = jc;
      if (m % 2 == 0) norm += (m == 0) ? jc : 2.0 * jc;
      if (std::abs(jc) > 1e250) {
        jc *= 1e-250;
        jp *= 1e-250;
        norm *= 1e-250;
        for (auto& v : out) v *= 1e-250;
      }
    }
    for (auto& v : out) v /= norm;
  }
  if (x < 0.0)
    for (int n = 1; n <= n_max; n += 2) out[n] = -out[n];
  return out;
}

std::complex<double> generalized_bessel_2d(int n, double x1, double x2, double phi) {
  const int k_max = static_cast<int>(std::ceil(std::abs(x2))) + 40;
  const int order1 = std::abs(n) + 2 * k_max + 2;

  const std::vector<double> j1 = bessel_jn_sequence(order1, x1);
  const std::vector<double> j2 = bessel_jn_sequence(k_max, x2);
  auto lookup = [](const std::vector<double>& seq, int m) {
    const int a = std::abs(m);
    const double v = seq[static_cast<std::size_t>(a)];
    return (m < 0 && a % 2 != 0) ? -v : v;
  };

  std::complex<double> sum{0.0, 0.0};
  for (int k = -k_max; k <= k_max; ++k) {
    const double jk = lookup(j2, k);
    if (std::abs(jk) < 1e-15) continue;
    const double jn = lookup(j1, n - 2 * k);
    sum += jn * jk * std::polar(1.0, -k * phi);
  }
  return sum;
}

}  // namespace stueckelberg
