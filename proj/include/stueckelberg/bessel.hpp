#pragma once

#include <complex>
#include <vector>

namespace stueckelberg {

// J_n(x), Bessel function of the first kind. Ascending series for |x| < 2,
// Miller downward recurrence otherwise. Absolute error below 1e-12 for
// |n| <= 40, |x| <= 60.
double bessel_jn(int n, double x);

// J_0(x) .. J_{n_max}(x) in one recurrence pass. x may be negative.
std::vector<double> bessel_jn_sequence(int n_max, double x);

// Two-tone generalized Bessel function for an octave pair (omega2 = 2 omega1):
//   Jgen_n(x1, x2; phi) = sum_k J_{n-2k}(x1) J_k(x2) exp(-i k phi),
// the n-th Fourier coefficient of exp(-i[x1 sin t + x2 sin(2t + phi)]).
// Terms with |J_k(x2)| < 1e-15 are dropped.
std::complex<double> generalized_bessel_2d(int n, double x1, double x2, double phi);

}  // namespace stueckelberg
