#include "stueckelberg/spin_hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stueckelberg {

namespace {

ComplexMatrix identity_pow2(std::size_t n_spins) {
  return ComplexMatrix::identity(std::size_t{1} << n_spins);
}

// Electron operator extended over N nuclear spin-1/2 slots.
ComplexMatrix embed_electron(const ComplexMatrix& op, std::size_t n_nuclei) {
  if (n_nuclei == 0) return op;
  return tensor_product(op, identity_pow2(n_nuclei));
}

// sigma_axis on nucleus `slot`, identity elsewhere, no electron factor.
ComplexMatrix nuclear_operator(std::size_t slot, int axis, std::size_t n_nuclei) {
  ComplexMatrix sigma = axis == 0 ? pauli_x() : axis == 1 ? pauli_y() : pauli_z();
  ComplexMatrix out = slot == 0 ? sigma : identity_pow2(slot);
  if (slot != 0) out = tensor_product(out, sigma);
  if (slot + 1 < n_nuclei) out = tensor_product(out, identity_pow2(n_nuclei - slot - 1));
  return out;
}

void check_hyperfine(const std::vector<Mat3>& tensors) {
  for (const auto& a : tensors)
    for (int r = 0; r < 3; ++r)
      for (int c = r + 1; c < 3; ++c)
        if (std::abs(a[r][c] - a[c][r]) > 1e-9)
          throw std::invalid_argument("SpinSystemParams: hyperfine tensor not symmetric");
}

std::vector<cd> normalized(std::vector<cd> v) {
  double n2 = 0.0;
  for (const auto& z : v) n2 += std::norm(z);
  const double inv = 1.0 / std::sqrt(n2);
  for (auto& z : v) z *= inv;
  return v;
}

// Eigenvectors of [[c, e], [e, -c]] in the {|+1>, |-1>} coordinates, written
// in whichever of the two equivalent forms stays finite as e -> 0.
std::array<double, 2> upper_pair_vector(double c, double e) {
  const double r = std::hypot(c, e);
  if (c >= 0.0) return {r + c, e};
  return {e, r - c};
}
std::array<double, 2> lower_pair_vector(double c, double e) {
  const double r = std::hypot(c, e);
  if (c >= 0.0) return {-e, r + c};
  return {r - c, -e};
}

double overlap2(const std::vector<cd>& a, const ComplexMatrix& vecs, std::size_t col) {
  cd acc{0.0, 0.0};
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * vecs(i, col);
  return std::norm(acc);
}

}  // namespace

double gyromagnetic_mhz_per_mt(const SpinSystemParams& p) { return p.g * kMuBMHzPerMT; }

HermitianOperator build_ground_hamiltonian(const SpinSystemParams& p) {
  check_hyperfine(p.hyperfine);
  const std::size_t n_nuc = p.hyperfine.size();
  const auto spin = spin1_operators();
  const ComplexMatrix* s_ops[3] = {&spin.sx.matrix(), &spin.sy.matrix(), &spin.sz.matrix()};

  ComplexMatrix electron(3, 3);
  electron(0, 0) = p.d / 3.0;
  electron(1, 1) = -2.0 * p.d / 3.0;
  electron(2, 2) = p.d / 3.0;
  electron(0, 2) += p.e;
  electron(2, 0) += p.e;
  const double gmub = gyromagnetic_mhz_per_mt(p);
  for (int axis = 0; axis < 3; ++axis)
    if (p.b[static_cast<std::size_t>(axis)] != 0.0)
      electron += (gmub * p.b[static_cast<std::size_t>(axis)]) * (*s_ops[axis]);

  ComplexMatrix h = embed_electron(electron, n_nuc);
  for (std::size_t i = 0; i < n_nuc; ++i) {
    const Mat3& a = p.hyperfine[i];
    for (int ea = 0; ea < 3; ++ea)
      for (int na = 0; na < 3; ++na) {
        const double coef = a[static_cast<std::size_t>(ea)][static_cast<std::size_t>(na)];
        if (coef == 0.0) continue;
        h += coef * tensor_product(*s_ops[ea], nuclear_operator(i, na, n_nuc));
      }
  }
  return HermitianOperator(std::move(h));
}

std::vector<LabeledState> analytic_spectrum(const SpinSystemParams& p) {
  if (p.hyperfine.size() != 1)
    throw std::invalid_argument("analytic_spectrum: exactly one nucleus required");
  if (p.b[0] != 0.0 || p.b[1] != 0.0)
    throw std::invalid_argument("analytic_spectrum: transverse field must be zero");
  check_hyperfine(p.hyperfine);

  const double azz = p.hyperfine[0][2][2];
  const double gmub = gyromagnetic_mhz_per_mt(p);
  // C in frequency units; upper sign belongs to the nuclear-up branch.
  const double c_up = gmub * p.b[2] + azz;
  const double c_dn = gmub * p.b[2] - azz;
  const double r_up = std::hypot(c_up, p.e);
  const double r_dn = std::hypot(c_dn, p.e);

  auto place = [](const std::array<double, 2>& pair, int nuclear) {
    std::vector<cd> v(6, cd{0.0, 0.0});
    v[static_cast<std::size_t>(nuclear)] = pair[0];       // |+1, n>
    v[static_cast<std::size_t>(4 + nuclear)] = pair[1];   // |-1, n>
    return normalized(std::move(v));
  };
  auto zero_state = [](int nuclear) {
    std::vector<cd> v(6, cd{0.0, 0.0});
    v[static_cast<std::size_t>(2 + nuclear)] = 1.0;
    return v;
  };

  std::vector<LabeledState> out;
  out.push_back({"1", p.d + r_up, place(upper_pair_vector(c_up, p.e), 0)});
  out.push_back({"2", p.d + r_dn, place(upper_pair_vector(c_dn, p.e), 1)});
  out.push_back({"3", p.d - r_up, place(lower_pair_vector(c_up, p.e), 0)});
  out.push_back({"4", p.d - r_dn, place(lower_pair_vector(c_dn, p.e), 1)});
  out.push_back({"5", 0.0, zero_state(0)});
  out.push_back({"6", 0.0, zero_state(1)});
  return out;
}

ZefozBasis zefoz_basis(double d_mhz, double e_mhz) {
  ZefozBasis out;
  out.energies = {0.0, d_mhz + e_mhz, d_mhz - e_mhz};
  const double r = 1.0 / std::sqrt(2.0);
  out.u = ComplexMatrix(3, 3, {r, 0, r, 0, 1, 0, r, 0, -r});
  out.sx_rot = ComplexMatrix(3, 3, {0, 1, 0, 1, 0, 0, 0, 0, 0});
  out.sy_rot = ComplexMatrix(3, 3, {0, 0, 0, 0, 0, 1, 0, 1, 0});
  out.sz_rot = ComplexMatrix(3, 3, {0, 0, 1, 0, 0, 0, 1, 0, 0});
  return out;
}

namespace {

struct TrackedStates {
  std::vector<std::vector<cd>> vecs;  // zero-like, plus-like, minus-like
  std::array<double, 3> energies;
};

// Match the three reference vectors to eigenvector columns by descending
// overlap, each column used once.
TrackedStates match_states(const std::vector<std::vector<cd>>& refs, const EigenSystem& eig) {
  const std::size_t n = eig.eigenvalues.size();
  std::vector<bool> used(n, false);
  TrackedStates out;
  out.vecs.resize(3);
  // Assign globally: repeatedly take the largest remaining (ref, column) pair.
  std::vector<bool> ref_done(3, false);
  for (int pass = 0; pass < 3; ++pass) {
    double best = -1.0;
    std::size_t best_ref = 0, best_col = 0;
    for (std::size_t r = 0; r < 3; ++r) {
      if (ref_done[r]) continue;
      for (std::size_t c = 0; c < n; ++c) {
        if (used[c]) continue;
        const double w = overlap2(refs[r], eig.eigenvectors, c);
        if (w > best) {
          best = w;
          best_ref = r;
          best_col = c;
        }
      }
    }
    ref_done[best_ref] = true;
    used[best_col] = true;
    out.energies[best_ref] = eig.eigenvalues[best_col];
    std::vector<cd> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = eig.eigenvectors(i, best_col);
    out.vecs[best_ref] = std::move(v);
  }
  return out;
}

std::vector<std::vector<cd>> branch_references(std::size_t n_nuc, NuclearBranch branch) {
  const double r = 1.0 / std::sqrt(2.0);
  if (n_nuc == 0) {
    return {{0.0, 1.0, 0.0}, {r, 0.0, r}, {r, 0.0, -r}};
  }
  const std::size_t s = branch == NuclearBranch::up ? 0 : 1;
  std::vector<std::vector<cd>> refs(3, std::vector<cd>(6, cd{0.0, 0.0}));
  refs[0][2 + s] = 1.0;           // |0, n>
  refs[1][s] = r;                 // (|+1,n> + |-1,n>)/sqrt(2)
  refs[1][4 + s] = r;
  refs[2][s] = r;
  refs[2][4 + s] = -r;
  return refs;
}

}  // namespace

DispersionCurves transition_dispersion(const SpinSystemParams& p,
                                       const std::vector<double>& bz_grid, NuclearBranch branch) {
  if (bz_grid.empty()) throw std::invalid_argument("transition_dispersion: empty grid");
  for (std::size_t i = 1; i < bz_grid.size(); ++i)
    if (!(bz_grid[i] > bz_grid[i - 1]))
      throw std::invalid_argument("transition_dispersion: grid must be strictly increasing");
  const std::size_t n_nuc = p.hyperfine.size();
  if (n_nuc > 1)
    throw std::invalid_argument("transition_dispersion: at most one nucleus supported");

  const double b_star = n_nuc == 1 ? zefoz_field_closed_form(p, branch) : 0.0;
  std::size_t seed = 0;
  for (std::size_t i = 1; i < bz_grid.size(); ++i)
    if (std::abs(bz_grid[i] - b_star) < std::abs(bz_grid[seed] - b_star)) seed = i;

  const std::size_t n_pts = bz_grid.size();
  std::vector<TrackedStates> tracked(n_pts);
  auto solve_at = [&](double bz, const std::vector<std::vector<cd>>& refs) {
    SpinSystemParams q = p;
    q.b[2] = bz;
    return match_states(refs, eigendecompose_hermitian(build_ground_hamiltonian(q)));
  };

  tracked[seed] = solve_at(bz_grid[seed], branch_references(n_nuc, branch));
  for (std::size_t i = seed + 1; i < n_pts; ++i)
    tracked[i] = solve_at(bz_grid[i], tracked[i - 1].vecs);
  for (std::size_t i = seed; i-- > 0;)
    tracked[i] = solve_at(bz_grid[i], tracked[i + 1].vecs);

  DispersionCurves out;
  out.bz = bz_grid;
  out.nu_zero_plus.resize(n_pts);
  out.nu_plus_minus.resize(n_pts);
  for (std::size_t i = 0; i < n_pts; ++i) {
    out.nu_zero_plus[i] = tracked[i].energies[1] - tracked[i].energies[0];
    out.nu_plus_minus[i] = tracked[i].energies[1] - tracked[i].energies[2];
  }
  return out;
}

double zefoz_field_closed_form(const SpinSystemParams& p, NuclearBranch branch) {
  if (p.hyperfine.size() != 1)
    throw std::invalid_argument("zefoz_field_closed_form: exactly one nucleus required");
  const double azz = p.hyperfine[0][2][2];
  const double sign = branch == NuclearBranch::up ? -1.0 : 1.0;
  return sign * azz / gyromagnetic_mhz_per_mt(p);
}

double find_zefoz_field(const SpinSystemParams& p, NuclearBranch branch) {
  if (p.hyperfine.size() != 1)
    throw std::invalid_argument("find_zefoz_field: exactly one nucleus required");
  check_hyperfine(p.hyperfine);

  const auto refs = branch_references(1, branch);
  // nu_{0<->+} with the upper pair state chosen by energy, which keeps the
  // curve smooth far from the clock point where |+> character is split.
  auto nu = [&](double bz) {
    SpinSystemParams q = p;
    q.b[2] = bz;
    const auto eig = eigendecompose_hermitian(build_ground_hamiltonian(q));
    const auto t = match_states(refs, eig);
    return std::max(t.energies[1], t.energies[2]) - t.energies[0];
  };
  const double h = 1e-3;
  auto slope = [&](double bz) { return (nu(bz + h) - nu(bz - h)) / (2.0 * h); };

  const double center = zefoz_field_closed_form(p, branch);
  double w = std::max(1.0, 5.0 * std::abs(p.e) / gyromagnetic_mhz_per_mt(p));
  double lo = 0.0, hi = 0.0, flo = 0.0, fhi = 0.0;
  bool bracketed = false;
  for (int attempt = 0; attempt < 4 && !bracketed; ++attempt) {
    lo = center - w;
    hi = center + w;
    flo = slope(lo);
    fhi = slope(hi);
    if ((flo < 0.0 && fhi > 0.0) || (flo > 0.0 && fhi < 0.0))
      bracketed = true;
    else
      w *= 4.0;
  }
  if (!bracketed)
    throw std::runtime_error("find_zefoz_field: no slope sign change in bracket");

  for (int it = 0; it < 200 && hi - lo > 1e-9; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = slope(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace stueckelberg
