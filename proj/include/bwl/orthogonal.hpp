#pragma once

// Witnesses generated by orthogonal matrices. With F_1..F_{n-1} the diagonal
// traceless orthonormal basis and R in O(n-1),
//
//   a_ij = (n-1)/n + sum_{ab} <e_i|F_a|e_i> R_ab <e_j|F_b|e_j>
//
// is nonnegative with row and column sums n-1, and the map
// Lambda(E_ii) = sum_j a_ij E_jj, Lambda(E_ij) = -E_ij is positive. A
// nonnegative matrix with those sums arises this way iff
// sum_k a_ik a_jk = delta_ij + n - 2.

#include <cstdint>
#include <random>
#include <vector>

#include "bwl/witness.hpp"

namespace bwl {

class OrthogonalMatrix {
 public:
  explicit OrthogonalMatrix(RealMatrix r, double tol = 1e-10) : r_(std::move(r)) {
    if (r_.rows() != r_.cols() || r_.rows() < 1) throw InvalidInput("orthogonal matrix must be square and nonempty");
    const double defect = (r_ * r_.transpose() - RealMatrix::Identity(r_.rows(), r_.rows())).cwiseAbs().maxCoeff();
    if (defect > tol) throw InvalidInput("matrix is not orthogonal (|R R^T - I| = " + std::to_string(defect) + ")");
  }
  Eigen::Index size() const noexcept { return r_.rows(); }
  const RealMatrix& matrix() const noexcept { return r_; }

 private:
  RealMatrix r_;
};

/// F_l = (sum_{k<l} E_kk - l E_ll) / sqrt(l(l+1)), l = 1..n-1.
inline std::vector<ComplexMatrix> f_matrices(int n) {
  require_dim(n);
  std::vector<ComplexMatrix> fs;
  for (int l = 1; l < n; ++l) {
    ComplexMatrix f = ComplexMatrix::Zero(n, n);
    for (int k = 0; k < l; ++k) f(k, k) = 1.0;
    f(l, l) = -static_cast<double>(l);
    fs.push_back(f / std::sqrt(static_cast<double>(l) * (l + 1)));
  }
  return fs;
}

/// n x (n-1) matrix of diagonal entries f(i, a) = <e_i|F_{a+1}|e_i>.
inline RealMatrix f_diagonals(int n) {
  const auto fs = f_matrices(n);
  RealMatrix f(n, n - 1);
  for (int a = 0; a < n - 1; ++a)
    for (int i = 0; i < n; ++i) f(i, a) = fs[a](i, i).real();
  return f;
}

/// Real n x n profile a_ij of a map Lambda(E_ii) = sum_j a_ij E_jj.
struct StochasticProfile {
  RealMatrix a;

  int n() const noexcept { return static_cast<int>(a.rows()); }
  double min_entry() const { return a.minCoeff(); }
  /// max deviation of any row or column sum from n - 1
  double sum_defect() const {
    const double target = n() - 1.0;
    return std::max((a.rowwise().sum().array() - target).abs().maxCoeff(),
                    (a.colwise().sum().array() - target).abs().maxCoeff());
  }
  /// max |sum_k a_ik a_jk - delta_ij - (n-2)|
  double gram_defect() const {
    const RealMatrix target = RealMatrix::Identity(n(), n()) + RealMatrix::Constant(n(), n(), n() - 2.0);
    return (a * a.transpose() - target).cwiseAbs().maxCoeff();
  }
  /// max |a_ij - a_{i+1,j+1}|
  double circulant_defect() const {
    double d = 0;
    for (int i = 0; i < n(); ++i)
      for (int j = 0; j < n(); ++j) d = std::max(d, std::abs(a(i, j) - a(mod(i + 1, n()), mod(j + 1, n()))));
    return d;
  }
};

inline StochasticProfile profile_from_orthogonal(const OrthogonalMatrix& r) {
  const int n = static_cast<int>(r.size()) + 1;
  const RealMatrix f = f_diagonals(n);
  RealMatrix a = RealMatrix::Constant(n, n, (n - 1.0) / n) + f * r.matrix() * f.transpose();
  return {std::move(a)};
}

inline bool gram_condition(const StochasticProfile& p, double tol = 1e-9) { return p.gram_defect() <= tol; }

/// sum_k alpha_{i-k} alpha_{j-k} = delta_ij + n - 2 for all i, j.
inline bool gram_condition_circulant(const AlphaVector& alpha, double tol = 1e-9) {
  return gram_condition(StochasticProfile{circulant_profile(alpha)}, tol);
}

/// Haar-distributed element of O(size): QR of a seeded Gaussian matrix with
/// the signs of diag(R) moved into Q.
inline OrthogonalMatrix random_orthogonal(int size, std::uint64_t seed) {
  if (size < 1) throw InvalidInput("random_orthogonal: size must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  RealMatrix z(size, size);
  for (int i = 0; i < size; ++i)
    for (int j = 0; j < size; ++j) z(i, j) = g(rng);
  Eigen::HouseholderQR<RealMatrix> qr(z);
  RealMatrix q = qr.householderQ();
  const RealMatrix rr = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < size; ++j)
    if (rr(j, j) < 0) q.col(j) *= -1.0;
  return OrthogonalMatrix(std::move(q));
}

/// alpha_k = a_{k,0} for a circulant profile.
inline AlphaVector circulant_profile_to_alpha(const StochasticProfile& p, double tol = 1e-9) {
  const int n = p.n();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double d = std::abs(p.a(i, j) - p.a(mod(i + 1, n), mod(j + 1, n)));
      if (d > tol)
        throw InvalidInput("profile is not circulant: |a(" + std::to_string(i) + "," + std::to_string(j) + ") - a(" +
                           std::to_string(mod(i + 1, n)) + "," + std::to_string(mod(j + 1, n)) +
                           ")| = " + std::to_string(d));
    }
  std::vector<double> alpha(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) alpha[k] = p.a(k, 0);
  return AlphaVector(std::move(alpha));
}

/// R = f^T a f, the orthogonal matrix reproducing a profile in the family.
/// Throws if the recovered R is not orthogonal (profile outside the family).
inline OrthogonalMatrix orthogonal_from_profile(const StochasticProfile& p, double tol = 1e-9) {
  const RealMatrix f = f_diagonals(p.n());
  return OrthogonalMatrix(f.transpose() * p.a * f, tol);
}

/// Choi operator of the map induced by a (possibly non-circulant) profile.
inline BipartiteOperator profile_choi_matrix(const StochasticProfile& p) { return choi_matrix(p.a); }

}  // namespace bwl
