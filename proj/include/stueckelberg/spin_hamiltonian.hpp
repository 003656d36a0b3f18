#pragma once

#include "stueckelberg/core.hpp"

#include <array>
#include <string>
#include <vector>

namespace stueckelberg {

using Mat3 = std::array<std::array<double, 3>, 3>;

// Ground-state spin-1 system. This module works in linear frequency (MHz) and
// magnetic field in mT; dynamics modules convert to rad/us where needed.
//
// Nuclear spin-1/2 operators use the +-1 eigenvalue convention (Pauli
// matrices), so a field of -A_zz/(g muB) exactly cancels the zz hyperfine
// coupling for the nuclear-up branch.
struct SpinSystemParams {
  double d = 0.0;  // longitudinal zero-field splitting, MHz
  double e = 0.0;  // transverse zero-field splitting, MHz
  double g = 2.0;
  std::array<double, 3> b{0.0, 0.0, 0.0};  // mT
  std::vector<Mat3> hyperfine;             // per-nucleus 3x3 tensors, MHz, symmetric
};

enum class NuclearBranch { up, down };

// g muB in MHz/mT.
double gyromagnetic_mhz_per_mt(const SpinSystemParams& p);

// H/h on the 3*2^N dimensional electron (tensor) nuclear space, MHz:
//   D(Sz^2 - 2/3) + E(Sx^2 - Sy^2) + g muB B.S + sum_i S.A_i.I_i
// The transverse term is written so the |+1><-1| element is exactly E.
// Nuclear Zeeman is omitted.
HermitianOperator build_ground_hamiltonian(const SpinSystemParams& p);

struct LabeledState {
  std::string label;       // "1".."6"
  double energy;           // MHz, relative to the |0,.> pair
  std::vector<cd> state;   // normalized, basis |m_s, m_i> with m_s in {+1,0,-1}
};                         // outer and m_i in {up, down} inner

// Closed-form six-level spectrum for one nucleus and purely longitudinal
// field. States 1..4 are D +- sqrt(C^2 + E^2) with C = g muB B_z +- A_zz
// (frequency units; upper sign pairs with nuclear up), states 5..6 the |0,.>
// pair at zero.
std::vector<LabeledState> analytic_spectrum(const SpinSystemParams& p);

// Zero-field clock-point basis: energies {0, D+E, D-E} for {|0>, |+>, |->}
// with |+-> = (|+1> +- |-1>)/sqrt(2), the involutive transformation u taking
// the Sz basis to {|+>, |0>, |->}, and the spin matrices rewritten in that
// order. sy_rot is real by convention, equal to the conjugated matrix up to a
// phase on the off-diagonal pair.
struct ZefozBasis {
  std::array<double, 3> energies;
  ComplexMatrix u;
  ComplexMatrix sx_rot, sy_rot, sz_rot;
};
ZefozBasis zefoz_basis(double d_mhz, double e_mhz);

struct DispersionCurves {
  std::vector<double> bz;             // mT
  std::vector<double> nu_zero_plus;   // MHz
  std::vector<double> nu_plus_minus;  // MHz
};

// Transition frequencies along a strictly increasing B_z grid for one nuclear
// branch. States are tracked by maximum overlap walking outward from the grid
// point nearest the clock field, so branches do not swap at crossings.
DispersionCurves transition_dispersion(const SpinSystemParams& p,
                                       const std::vector<double>& bz_grid,
                                       NuclearBranch branch = NuclearBranch::up);

// Root of the finite-difference d nu/dB_z via bisection. Requires exactly one
// nucleus. Matches -A_zz/(g muB) for the up branch, +A_zz/(g muB) for down.
double find_zefoz_field(const SpinSystemParams& p, NuclearBranch branch = NuclearBranch::up);
double zefoz_field_closed_form(const SpinSystemParams& p, NuclearBranch branch = NuclearBranch::up);

}  // namespace stueckelberg
