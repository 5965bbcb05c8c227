#pragma once

// Dense complex-matrix substrate shared by every other header: tensor
// products, partial transposition on the second factor, Hermitian spectral
// queries and the length-n discrete Fourier transform.

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "bwl/errors.hpp"
#include "bwl/tolerance.hpp"

namespace bwl {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// e^{2 pi i p / n}
inline Complex root_of_unity(int n, long long p) {
  const long long r = ((p % n) + n) % n;
  if (r == 0) return {1.0, 0.0};
  return std::polar(1.0, kTwoPi * static_cast<double>(r) / n);
}

inline int mod(long long k, int n) { return static_cast<int>(((k % n) + n) % n); }

/// Operator on C^n (x) C^n stored as an n^2 x n^2 matrix. Row index of
/// e_i (x) e_j is i*n + j.
class BipartiteOperator {
 public:
  BipartiteOperator(int dim, ComplexMatrix matrix) : dim_(dim), matrix_(std::move(matrix)) {
    if (dim_ < 1) throw InvalidInput("bipartite dimension must be positive");
    const auto d2 = static_cast<Eigen::Index>(dim_) * dim_;
    if (matrix_.rows() != d2 || matrix_.cols() != d2)
      throw InvalidInput("bipartite operator must be square of size n^2 = " + std::to_string(d2));
  }

  static BipartiteOperator zero(int dim) {
    const auto d2 = static_cast<Eigen::Index>(dim) * dim;
    return {dim, ComplexMatrix::Zero(d2, d2)};
  }
  static BipartiteOperator identity(int dim) {
    const auto d2 = static_cast<Eigen::Index>(dim) * dim;
    return {dim, ComplexMatrix::Identity(d2, d2)};
  }

  int dim() const noexcept { return dim_; }
  const ComplexMatrix& matrix() const noexcept { return matrix_; }

  BipartiteOperator& operator+=(const BipartiteOperator& o) {
    check_same(o);
    matrix_ += o.matrix_;
    return *this;
  }
  BipartiteOperator& operator-=(const BipartiteOperator& o) {
    check_same(o);
    matrix_ -= o.matrix_;
    return *this;
  }
  BipartiteOperator& operator*=(Complex s) {
    matrix_ *= s;
    return *this;
  }
  friend BipartiteOperator operator+(BipartiteOperator a, const BipartiteOperator& b) { return a += b; }
  friend BipartiteOperator operator-(BipartiteOperator a, const BipartiteOperator& b) { return a -= b; }
  friend BipartiteOperator operator*(Complex s, BipartiteOperator a) { return a *= s; }
  friend BipartiteOperator operator*(double s, BipartiteOperator a) { return a *= Complex{s, 0.0}; }

 private:
  void check_same(const BipartiteOperator& o) const {
    if (o.dim_ != dim_) throw InvalidInput("bipartite dimension mismatch");
  }

  int dim_;
  ComplexMatrix matrix_;
};

/// E_kl = |e_k><e_l| on C^n.
inline ComplexMatrix matrix_unit(int n, int k, int l) {
  ComplexMatrix e = ComplexMatrix::Zero(n, n);
  e(k, l) = 1.0;
  return e;
}

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline ComplexVector kron(const ComplexVector& x, const ComplexVector& y) {
  ComplexVector out(x.size() * y.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) out.segment(i * y.size(), y.size()) = x(i) * y;
  return out;
}

inline BipartiteOperator tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
    throw InvalidInput("tensor: factors must be square and of equal size");
  return {static_cast<int>(a.rows()), kron(a, b)};
}

/// Transpose on the second tensor factor: block (i,i') of the result is the
/// transpose of block (i,i') of the input.
inline BipartiteOperator partial_transpose(const BipartiteOperator& x) {
  const int n = x.dim();
  const ComplexMatrix& m = x.matrix();
  ComplexMatrix out(m.rows(), m.cols());
  for (int i = 0; i < n; ++i)
    for (int ip = 0; ip < n; ++ip)
      out.block(i * n, ip * n, n, n) = m.block(i * n, ip * n, n, n).transpose();
  return {n, std::move(out)};
}

inline ComplexMatrix partial_transpose(const ComplexMatrix& m, int n) {
  if (m.rows() != m.cols()) throw InvalidInput("partial_transpose: non-square input");
  return partial_transpose(BipartiteOperator(n, m)).matrix();
}

inline double hermiticity_defect(const ComplexMatrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

inline bool is_hermitian(const ComplexMatrix& m, const ToleranceConfig& tol = default_tolerances()) {
  if (m.rows() != m.cols()) return false;
  if (m.size() == 0) return true;
  return hermiticity_defect(m) <= tol.herm * std::max(1.0, m.norm());
}

namespace detail {

inline ComplexMatrix hermitized(const ComplexMatrix& m, const ToleranceConfig& tol) {
  if (!is_hermitian(m, tol))
    throw InvalidInput("expected a Hermitian operand (defect " + std::to_string(hermiticity_defect(m)) + ")");
  return 0.5 * (m + m.adjoint());
}

}  // namespace detail

/// Ascending eigenvalues of the Hermitized input.
inline RealVector hermitian_eigenvalues(const ComplexMatrix& m, const ToleranceConfig& tol = default_tolerances()) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(detail::hermitized(m, tol), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

inline double min_eigenvalue(const ComplexMatrix& m, const ToleranceConfig& tol = default_tolerances()) {
  return hermitian_eigenvalues(m, tol)(0);
}

inline double min_eigenvalue(const BipartiteOperator& x, const ToleranceConfig& tol = default_tolerances()) {
  return min_eigenvalue(x.matrix(), tol);
}

/// Smallest eigenvalue and a unit eigenvector for it.
inline std::pair<double, ComplexVector> min_eigenpair(const ComplexMatrix& m,
                                                      const ToleranceConfig& tol = default_tolerances()) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(detail::hermitized(m, tol));
  return {es.eigenvalues()(0), es.eigenvectors().col(0)};
}

/// PSD up to tol.eig relative to the operator scale.
inline bool is_psd(const ComplexMatrix& m, double abs_tol) { return min_eigenvalue(m) >= -abs_tol; }

/// c_k = sum_l w^{-kl} v_l with w = e^{2 pi i/n}.
inline ComplexVector dft(const ComplexVector& v) {
  const int n = static_cast<int>(v.size());
  ComplexVector c = ComplexVector::Zero(n);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) c(k) += root_of_unity(n, -static_cast<long long>(k) * l) * v(l);
  return c;
}

/// v_k = (1/n) sum_l w^{kl} c_l
inline ComplexVector idft(const ComplexVector& c) {
  const int n = static_cast<int>(c.size());
  ComplexVector v = ComplexVector::Zero(n);
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) v(k) += root_of_unity(n, static_cast<long long>(k) * l) * c(l);
    v(k) /= static_cast<double>(n);
  }
  return v;
}

inline ComplexVector dft(const RealVector& v) { return dft(ComplexVector(v.cast<Complex>())); }

}  // namespace bwl
