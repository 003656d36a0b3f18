#include "stueckelberg/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace stueckelberg {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cd> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_)
    throw std::invalid_argument("ComplexMatrix: entry count does not match shape");
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw std::invalid_argument("matrix add: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw std::invalid_argument("matrix sub: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cd scalar) {
  for (auto& z : data_) z *= scalar;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(cd scalar, ComplexMatrix m) { return m *= scalar; }
ComplexMatrix operator*(ComplexMatrix m, cd scalar) { return m *= scalar; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix mul: shape mismatch");
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cd aik = a(i, k);
      if (aik == cd{0.0, 0.0}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

std::vector<cd> operator*(const ComplexMatrix& a, const std::vector<cd>& v) {
  if (a.cols() != v.size()) throw std::invalid_argument("matrix-vector mul: shape mismatch");
  std::vector<cd> out(a.rows(), cd{0.0, 0.0});
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out[i] += a(i, j) * v[j];
  return out;
}

ComplexMatrix adjoint(const ComplexMatrix& m) {
  ComplexMatrix out(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = std::conj(m(i, j));
  return out;
}

cd trace(const ComplexMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("trace: matrix not square");
  cd t{0.0, 0.0};
  for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
  return t;
}

double max_abs(const ComplexMatrix& m) {
  double mx = 0.0;
  for (const auto& z : m.data()) mx = std::max(mx, std::abs(z));
  return mx;
}

double hermiticity_defect(const ComplexMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("hermiticity_defect: matrix not square");
  double mx = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      mx = std::max(mx, std::abs(m(i, j) - std::conj(m(j, i))));
  return mx;
}

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ia = 0; ia < a.rows(); ++ia)
    for (std::size_t ja = 0; ja < a.cols(); ++ja) {
      const cd f = a(ia, ja);
      if (f == cd{0.0, 0.0}) continue;
      for (std::size_t ib = 0; ib < b.rows(); ++ib)
        for (std::size_t jb = 0; jb < b.cols(); ++jb)
          out(ia * b.rows() + ib, ja * b.cols() + jb) = f * b(ib, jb);
    }
  return out;
}

HermitianOperator::HermitianOperator(ComplexMatrix m) : m_(std::move(m)) {
  if (!m_.is_square()) throw std::invalid_argument("HermitianOperator: matrix not square");
  const double scale = std::max(1.0, max_abs(m_));
  const double defect = hermiticity_defect(m_);
  if (defect > 1e-12 * scale)
    throw std::invalid_argument("HermitianOperator: hermiticity defect " +
                                std::to_string(defect) + " exceeds tolerance");
  // Symmetrize so downstream algebra sees an exactly Hermitian matrix.
  for (std::size_t i = 0; i < m_.rows(); ++i) {
    m_(i, i) = cd{m_(i, i).real(), 0.0};
    for (std::size_t j = i + 1; j < m_.cols(); ++j) {
      const cd avg = 0.5 * (m_(i, j) + std::conj(m_(j, i)));
      m_(i, j) = avg;
      m_(j, i) = std::conj(avg);
    }
  }
}

DensityMatrix::DensityMatrix(ComplexMatrix m) : DensityMatrix(std::move(m), Tolerances{}) {}

DensityMatrix::DensityMatrix(ComplexMatrix m, const Tolerances& tol) : m_(std::move(m)) {
  if (!m_.is_square()) throw std::invalid_argument("DensityMatrix: matrix not square");
  const double defect = hermiticity_defect(m_);
  if (defect > tol.hermiticity * std::max(1.0, max_abs(m_)))
    throw std::invalid_argument("DensityMatrix: not Hermitian, defect " + std::to_string(defect));
  const cd tr = trace(m_);
  if (std::abs(tr - cd{1.0, 0.0}) > tol.trace)
    throw std::invalid_argument("DensityMatrix: trace deviates from 1 by " +
                                std::to_string(std::abs(tr - cd{1.0, 0.0})));
  for (std::size_t i = 0; i < m_.rows(); ++i) {
    m_(i, i) = cd{m_(i, i).real(), 0.0};
    for (std::size_t j = i + 1; j < m_.cols(); ++j) {
      const cd avg = 0.5 * (m_(i, j) + std::conj(m_(j, i)));
      m_(i, j) = avg;
      m_(j, i) = std::conj(avg);
    }
  }
  auto eig = eigendecompose_hermitian(m_);
  if (eig.eigenvalues.front() < -tol.negativity)
    throw std::invalid_argument("DensityMatrix: negative eigenvalue " +
                                std::to_string(eig.eigenvalues.front()));
}

DensityMatrix DensityMatrix::pure(const std::vector<cd>& psi) {
  double norm2 = 0.0;
  for (const auto& z : psi) norm2 += std::norm(z);
  if (norm2 <= 0.0) throw std::invalid_argument("DensityMatrix::pure: zero state");
  ComplexMatrix m(psi.size(), psi.size());
  for (std::size_t i = 0; i < psi.size(); ++i)
    for (std::size_t j = 0; j < psi.size(); ++j) m(i, j) = psi[i] * std::conj(psi[j]) / norm2;
  return DensityMatrix(std::move(m));
}

EigenSystem eigendecompose_hermitian(const ComplexMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("eigendecompose: matrix not square");
  const std::size_t n = m.rows();
  ComplexMatrix a = m;
  ComplexMatrix v = ComplexMatrix::identity(n);

  const double scale = max_abs(a);
  const double threshold = 1e-14 * std::max(scale, 1e-300);

  auto off_diag_max = [&]() {
    double mx = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) mx = std::max(mx, std::abs(a(p, q)));
    return mx;
  };

  constexpr int kMaxSweeps = 100;
  int sweep = 0;
  while (off_diag_max() > threshold) {
    if (++sweep > kMaxSweeps)
      throw std::runtime_error("eigendecompose: Jacobi failed to converge in 100 sweeps, "
                               "residual off-diagonal " + std::to_string(off_diag_max()));
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cd apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag <= threshold) continue;
        // Unitary 2x2 rotation R = [[c, -s e^{i phi}], [s e^{-i phi}, c]]
        // with phi = arg(a_pq) zeroes the (p,q) element.
        const cd phase = apq / mag;
        const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(tau * tau + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const cd sp = s * phase;          // s e^{i phi}
        const cd spc = std::conj(sp);     // s e^{-i phi}
        // a <- R^dagger a R applied to rows/columns p and q only.
        for (std::size_t k = 0; k < n; ++k) {
          const cd akp = a(k, p);
          const cd akq = a(k, q);
          a(k, p) = c * akp - spc * akq;
          a(k, q) = sp * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const cd apk = a(p, k);
          const cd aqk = a(q, k);
          a(p, k) = c * apk - sp * aqk;
          a(q, k) = spc * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const cd vkp = v(k, p);
          const cd vkq = v(k, q);
          v(k, p) = c * vkp - spc * vkq;
          v(k, q) = sp * vkp + c * vkq;
        }
        a(p, q) = cd{0.0, 0.0};
        a(q, p) = cd{0.0, 0.0};
        a(p, p) = cd{a(p, p).real(), 0.0};
        a(q, q) = cd{a(q, q).real(), 0.0};
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  EigenSystem out;
  out.eigenvalues.resize(n);
  out.eigenvectors = ComplexMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]).real();
    for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, k) = v(r, order[k]);
  }
  return out;
}

EigenSystem eigendecompose_hermitian(const HermitianOperator& h) {
  return eigendecompose_hermitian(h.matrix());
}

std::vector<cd> solve_linear(ComplexMatrix a, std::vector<cd> b, double* pivot_ratio) {
  if (!a.is_square() || a.rows() != b.size())
    throw std::invalid_argument("solve_linear: shape mismatch");
  const std::size_t n = a.rows();
  double min_piv = std::numeric_limits<double>::infinity();
  double max_piv = 0.0;

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t best = col;
    double best_mag = std::abs(a(col, col));
    for (std::size_t r = col + 1; r < n; ++r) {
      const double mag = std::abs(a(r, col));
      if (mag > best_mag) {
        best = r;
        best_mag = mag;
      }
    }
    if (best != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(col, c), a(best, c));
      std::swap(b[col], b[best]);
    }
    min_piv = std::min(min_piv, best_mag);
    max_piv = std::max(max_piv, best_mag);
    if (best_mag == 0.0) throw std::runtime_error("solve_linear: singular matrix");
    const cd pivot = a(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      const cd factor = a(r, col) / pivot;
      if (factor == cd{0.0, 0.0}) continue;
      a(r, col) = cd{0.0, 0.0};
      for (std::size_t c = col + 1; c < n; ++c) a(r, c) -= factor * a(col, c);
      b[r] -= factor * b[col];
    }
  }
  for (std::size_t i = n; i-- > 0;) {
    cd acc = b[i];
    for (std::size_t c = i + 1; c < n; ++c) acc -= a(i, c) * b[c];
    b[i] = acc / a(i, i);
  }
  if (pivot_ratio) *pivot_ratio = (max_piv > 0.0) ? min_piv / max_piv : 0.0;
  return b;
}

ComplexMatrix hermitian_propagator(const HermitianOperator& h, double t) {
  auto eig = eigendecompose_hermitian(h);
  const std::size_t n = h.dim();
  ComplexMatrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const cd phase = std::exp(cd{0.0, -eig.eigenvalues[k] * t});
    for (std::size_t i = 0; i < n; ++i) {
      const cd lhs = phase * eig.eigenvectors(i, k);
      for (std::size_t j = 0; j < n; ++j)
        out(i, j) += lhs * std::conj(eig.eigenvectors(j, k));
    }
  }
  return out;
}

Spin1Operators spin1_operators() {
  const double r = 1.0 / std::sqrt(2.0);
  ComplexMatrix sx(3, 3, {0, r, 0, r, 0, r, 0, r, 0});
  ComplexMatrix sy(3, 3, {0, cd{0, -r}, 0, cd{0, r}, 0, cd{0, -r}, 0, cd{0, r}, 0});
  ComplexMatrix sz(3, 3, {1, 0, 0, 0, 0, 0, 0, 0, -1});
  return {HermitianOperator(std::move(sx)), HermitianOperator(std::move(sy)),
          HermitianOperator(std::move(sz))};
}

ComplexMatrix pauli_x() { return ComplexMatrix(2, 2, {0, 1, 1, 0}); }
ComplexMatrix pauli_y() { return ComplexMatrix(2, 2, {0, cd{0, -1}, cd{0, 1}, 0}); }
ComplexMatrix pauli_z() { return ComplexMatrix(2, 2, {1, 0, 0, -1}); }

}  // namespace stueckelberg
