#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace stueckelberg {

using cd = std::complex<double>;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

// Bohr magneton over Planck constant, MHz per mT per unit g-factor.
inline constexpr double kMuBMHzPerMT = 13.996;

// Dense row-major complex matrix. Every Hilbert space in this project is tiny
// (the largest operator is the vectorized three-level Liouvillian, 9x9), so
// there is no sparse path.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, cd{0.0, 0.0}) {}
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cd> entries);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix zero(std::size_t rows, std::size_t cols) { return {rows, cols}; }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  cd& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const cd& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  const std::vector<cd>& data() const { return data_; }
  std::vector<cd>& data() { return data_; }

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(cd scalar);

  bool operator==(const ComplexMatrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cd> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(cd scalar, ComplexMatrix m);
ComplexMatrix operator*(ComplexMatrix m, cd scalar);
std::vector<cd> operator*(const ComplexMatrix& a, const std::vector<cd>& v);

ComplexMatrix adjoint(const ComplexMatrix& m);
cd trace(const ComplexMatrix& m);
// Largest |entry|.
double max_abs(const ComplexMatrix& m);
// Largest |entry| of (m - m^dagger).
double hermiticity_defect(const ComplexMatrix& m);

// Kronecker product, dims (ra*rb) x (ca*cb).
ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);

// Square Hermitian generator. Entries carry angular frequency (rad/us)
// everywhere a Hamiltonian is meant; construction rejects matrices whose
// hermiticity defect exceeds 1e-12 relative to max(1, scale).
class HermitianOperator {
 public:
  explicit HermitianOperator(ComplexMatrix m);

  std::size_t dim() const { return m_.rows(); }
  const ComplexMatrix& matrix() const { return m_; }
  const cd& operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

 private:
  ComplexMatrix m_;
};

// Physical state: Hermitian, unit trace, positive semidefinite within
// tolerance. Integrators construct records with relaxed tolerances matching
// their own accuracy contract.
class DensityMatrix {
 public:
  struct Tolerances {
    double hermiticity = 1e-12;
    double trace = 1e-9;
    double negativity = 1e-9;
  };

  explicit DensityMatrix(ComplexMatrix m);
  DensityMatrix(ComplexMatrix m, const Tolerances& tol);

  std::size_t dim() const { return m_.rows(); }
  const ComplexMatrix& matrix() const { return m_; }
  const cd& operator()(std::size_t r, std::size_t c) const { return m_(r, c); }
  double population(std::size_t level) const { return m_(level, level).real(); }

  static DensityMatrix pure(const std::vector<cd>& psi);

 private:
  ComplexMatrix m_;
};

struct EigenSystem {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix eigenvectors;       // orthonormal columns, column k <-> eigenvalues[k]
};

// Cyclic Jacobi rotations; iteration cap 100 sweeps, off-diagonal threshold
// 1e-14 * max|entry|. Throws on non-convergence.
EigenSystem eigendecompose_hermitian(const ComplexMatrix& m);
EigenSystem eigendecompose_hermitian(const HermitianOperator& h);

// LU solve with partial pivoting. pivot_ratio (optional out) is
// min|pivot|/max|pivot|, a cheap degeneracy signal for the caller.
std::vector<cd> solve_linear(ComplexMatrix a, std::vector<cd> b, double* pivot_ratio = nullptr);

// exp(-i H t) via the eigendecomposition; exact up to the eigensolver.
ComplexMatrix hermitian_propagator(const HermitianOperator& h, double t);

// Spin-1 matrices in the Sz = {|+1>, |0>, |-1>} basis.
struct Spin1Operators {
  HermitianOperator sx, sy, sz;
};
Spin1Operators spin1_operators();

ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

}  // namespace stueckelberg
