#pragma once

// Weyl operators U_mk e_l = w^{ml} e_{l+k}, the generalized Bell basis built
// from them, and numeric invariance checks for the two local symmetry groups
// (diagonal phase torus and the Weyl group, both acting as U (x) conj(U)).

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "bwl/tensor.hpp"

namespace bwl {

inline void require_dim(int n) {
  if (n < 2) throw InvalidInput("dimension n must be >= 2 (got " + std::to_string(n) + ")");
}

/// U_mk; indices are reduced mod n.
inline ComplexMatrix weyl(int n, int m, int k) {
  require_dim(n);
  ComplexMatrix u = ComplexMatrix::Zero(n, n);
  for (int l = 0; l < n; ++l) u(mod(l + k, n), l) = root_of_unity(n, static_cast<long long>(m) * l);
  return u;
}

struct WeylRelationsReport {
  int n = 0;
  double product = 0;       // U_kl U_rs = w^{ks} U_{k+r,l+s}
  double conjugate = 0;     // conj(U_kl) = U_{-k,l}
  double adjoint = 0;       // U_kl^dag = w^{kl} U_{-k,-l}
  double orthogonality = 0; // tr(U_kl U_rs^dag) = n delta delta
  double unitarity = 0;

  double max_deviation() const { return std::max({product, conjugate, adjoint, orthogonality, unitarity}); }
  bool passes(double tol) const { return max_deviation() <= tol; }
};

/// Exhaustive check of the Weyl algebra over all index pairs.
inline WeylRelationsReport weyl_relations_check(int n) {
  require_dim(n);
  std::vector<ComplexMatrix> u(static_cast<std::size_t>(n) * n);
  auto at = [&](int k, int l) -> const ComplexMatrix& { return u[mod(k, n) * n + mod(l, n)]; };
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) u[k * n + l] = weyl(n, k, l);

  WeylRelationsReport r;
  r.n = n;
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) {
      const ComplexMatrix& ukl = at(k, l);
      r.conjugate = std::max(r.conjugate, (ukl.conjugate() - at(-k, l)).cwiseAbs().maxCoeff());
      r.adjoint = std::max(
          r.adjoint, (ukl.adjoint() - root_of_unity(n, static_cast<long long>(k) * l) * at(-k, -l)).cwiseAbs().maxCoeff());
      r.unitarity = std::max(r.unitarity, (ukl * ukl.adjoint() - id).cwiseAbs().maxCoeff());
      for (int rr = 0; rr < n; ++rr) {
        for (int s = 0; s < n; ++s) {
          const ComplexMatrix& urs = at(rr, s);
          const ComplexMatrix expect = root_of_unity(n, static_cast<long long>(k) * s) * at(k + rr, l + s);
          r.product = std::max(r.product, (ukl * urs - expect).cwiseAbs().maxCoeff());
          const Complex tr = (ukl * urs.adjoint()).trace();
          const double delta = (k == rr && l == s) ? n : 0.0;
          r.orthogonality = std::max(r.orthogonality, std::abs(tr - delta));
        }
      }
    }
  }
  return r;
}

/// |psi+_n> = n^{-1/2} sum_i e_i (x) e_i
inline ComplexVector psi_plus(int n) {
  require_dim(n);
  ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(n) * n);
  for (int i = 0; i < n; ++i) v(i * n + i) = 1.0 / std::sqrt(static_cast<double>(n));
  return v;
}

/// |psi_kl> = (I (x) U_kl)|psi+>
inline ComplexVector bell_state(int n, int k, int l) {
  return kron(ComplexMatrix::Identity(n, n), weyl(n, k, l)) * psi_plus(n);
}

inline void require_index(int n, int k, const char* name) {
  if (k < 0 || k >= n)
    throw InvalidInput(std::string(name) + " index out of range [0, n): " + std::to_string(k));
}

inline BipartiteOperator bell_projector(int n, int k, int l) {
  require_dim(n);
  require_index(n, k, "k");
  require_index(n, l, "l");
  const ComplexVector v = bell_state(n, k, l);
  return {n, v * v.adjoint()};
}

/// Same projector assembled from its Weyl expansion
/// P_kl = n^{-2} sum_rs w^{ks+rl} U_rs (x) U_{-r,s}. Independent path used to
/// cross-validate the index conventions of bell_projector.
inline BipartiteOperator bell_projector_from_weyl(int n, int k, int l) {
  require_dim(n);
  require_index(n, k, "k");
  require_index(n, l, "l");
  BipartiteOperator p = BipartiteOperator::zero(n);
  for (int r = 0; r < n; ++r)
    for (int s = 0; s < n; ++s)
      p += root_of_unity(n, static_cast<long long>(k) * s + static_cast<long long>(r) * l) *
           tensor(weyl(n, r, s), weyl(n, -r, s));
  return (1.0 / (static_cast<double>(n) * n)) * std::move(p);
}

/// Pi_k = P_0k + ... + P_{n-1,k}: projector onto span{e_l (x) e_{l+k}}.
inline BipartiteOperator pi_block(int n, int k) {
  require_dim(n);
  require_index(n, k, "k");
  BipartiteOperator p = BipartiteOperator::zero(n);
  for (int m = 0; m < n; ++m) p += bell_projector(n, m, k);
  return p;
}

inline BipartiteOperator p_plus(int n) {
  const ComplexVector v = psi_plus(n);
  return {n, v * v.adjoint()};
}

/// F (x (x) y) = y (x) x
inline BipartiteOperator flip(int n) {
  require_dim(n);
  ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(n) * n, static_cast<Eigen::Index>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(j * n + i, i * n + j) = 1.0;
  return {n, std::move(m)};
}

/// Complete family of n^2 Bell projectors, indexed (k, l).
class BellBasis {
 public:
  explicit BellBasis(int n) : n_(n) {
    require_dim(n);
    projectors_.reserve(static_cast<std::size_t>(n) * n);
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l) projectors_.push_back(bell_projector(n, k, l));
  }
  int dim() const noexcept { return n_; }
  const BipartiteOperator& operator()(int k, int l) const { return projectors_.at(static_cast<std::size_t>(k) * n_ + l); }
  const std::vector<BipartiteOperator>& projectors() const noexcept { return projectors_; }

 private:
  int n_;
  std::vector<BipartiteOperator> projectors_;
};

inline double invariance_defect(const BipartiteOperator& x, const ComplexMatrix& v) {
  return (v * x.matrix() * v.adjoint() - x.matrix()).cwiseAbs().maxCoeff();
}

/// Invariance under U (x) conj(U) for `samples` seeded random diagonal phase
/// unitaries U = diag(e^{i phi_k}).
inline bool check_invariance_g1(const BipartiteOperator& x, int samples = 32, std::uint64_t seed = 0x5eedULL,
                                const ToleranceConfig& tol = default_tolerances()) {
  const int n = x.dim();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> phase(0.0, kTwoPi);
  const double bound = tol.herm * std::max(1.0, x.matrix().norm());
  for (int s = 0; s < samples; ++s) {
    ComplexMatrix u = ComplexMatrix::Zero(n, n);
    for (int k = 0; k < n; ++k) u(k, k) = std::polar(1.0, phase(rng));
    if (invariance_defect(x, kron(u, u.conjugate())) > bound) return false;
  }
  return true;
}

/// Invariance under every generator U_kl (x) U_{-k,l}.
inline bool check_invariance_g2(const BipartiteOperator& x, const ToleranceConfig& tol = default_tolerances()) {
  const int n = x.dim();
  const double bound = tol.herm * std::max(1.0, x.matrix().norm());
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      if (invariance_defect(x, kron(weyl(n, k, l), weyl(n, -k, l))) > bound) return false;
  return true;
}

}  // namespace bwl
