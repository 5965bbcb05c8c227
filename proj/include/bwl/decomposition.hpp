#pragma once

// Decomposability of W[alpha]. A witness in the family is decomposable iff
// alpha_k = alpha_{n-k} for every k. Both directions are constructive:
//
//  * symmetric alpha: explicit W = P + Q^Gamma with P, Q >= 0, where P is a
//    circulant on span{e_i (x) e_i} and Q a sum of antisymmetric pair
//    projectors;
//  * alpha_k != alpha_{n-k}: an unnormalized PPT state rho_eps with
//    tr(rho_eps W) < 0.

#include <optional>
#include <vector>

#include "bwl/witness.hpp"

namespace bwl {

/// max_k |alpha_k - alpha_{n-k}| and the first k attaining it.
inline std::pair<double, int> symmetry_defect(const AlphaVector& a) {
  double worst = 0;
  int at = 0;
  for (int k = 1; k < a.n(); ++k) {
    const double d = std::abs(a[k] - a[-k]);
    if (d > worst) {
      worst = d;
      at = k;
    }
  }
  return {worst, at};
}

inline bool is_decomposable(const AlphaVector& a, const ToleranceConfig& tol = default_tolerances()) {
  return symmetry_defect(a).first <= tol.symmetry;
}

/// Torus-class form of the same criterion: every c_k (k >= 1) equals +1 or -1.
inline bool c_criterion_decomposable(const SpectralCoefficients& s, double tol = 1e-9) {
  for (int k = 1; k < s.n(); ++k) {
    const Complex ck = s.c(k);
    if (std::min(std::abs(ck - 1.0), std::abs(ck + 1.0)) > tol) return false;
  }
  return true;
}

struct DecompositionCertificate {
  BipartiteOperator p;
  BipartiteOperator q;
  double residual = 0;  // ||W - P - Q^Gamma||_F
  std::vector<double> circulant_row;          // m_0 = alpha_0, m_k = alpha_k - 1
  std::vector<double> circulant_eigenvalues;  // lambda_j = sum_k m_k w^{-jk}
  double min_eig_p = 0;
  double min_eig_q = 0;
};

/// Eigenvalues of a real symmetric circulant with first row `row`.
inline std::vector<double> circulant_eigenvalues(const std::vector<double>& row) {
  const int n = static_cast<int>(row.size());
  std::vector<double> ev(row.size());
  for (int j = 0; j < n; ++j) {
    Complex s = 0;
    for (int k = 0; k < n; ++k) s += row[k] * root_of_unity(n, -static_cast<long long>(j) * k);
    ev[j] = s.real();
  }
  return ev;
}

namespace detail {

inline DecompositionCertificate assemble_split(const AlphaVector& a) {
  const int n = a.n();
  const auto d2 = static_cast<Eigen::Index>(n) * n;
  // Pair coherence g_k = sqrt(alpha_k alpha_{n-k}); equals alpha_k when symmetric.
  std::vector<double> row(static_cast<std::size_t>(n));
  row[0] = a[0];
  for (int k = 1; k < n; ++k) row[k] = std::sqrt(a[k] * a[-k]) - 1.0;

  ComplexMatrix p = ComplexMatrix::Zero(d2, d2);
  ComplexMatrix q = ComplexMatrix::Zero(d2, d2);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) p(i * n + i, j * n + j) = row[mod(i - j, n)];
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      q(i * n + j, i * n + j) = a[i - j];
      q(i * n + j, j * n + i) = -std::sqrt(a[i - j] * a[j - i]);
    }
  }

  DecompositionCertificate cert{BipartiteOperator(n, std::move(p)), BipartiteOperator(n, std::move(q)), 0, row,
                                circulant_eigenvalues(row), 0, 0};
  const BipartiteOperator w = witness_from_alpha(a);
  cert.residual = (w.matrix() - cert.p.matrix() - partial_transpose(cert.q).matrix()).norm();
  cert.min_eig_p = min_eigenvalue(cert.p);
  cert.min_eig_q = min_eigenvalue(cert.q);
  return cert;
}

}  // namespace detail

/// W = P + Q^Gamma for symmetric alpha. Throws InvalidInput naming the first
/// asymmetric index, or when the circulant block is not PSD (alpha is then not
/// block-positive).
inline DecompositionCertificate decompose(const AlphaVector& a, const ToleranceConfig& tol = default_tolerances()) {
  const auto [defect, k] = symmetry_defect(a);
  if (defect > tol.symmetry)
    throw InvalidInput("decompose: alpha_" + std::to_string(k) + " != alpha_" + std::to_string(a.n() - k) +
                       " (defect " + std::to_string(defect) + ")");
  DecompositionCertificate cert = detail::assemble_split(a);
  if (cert.min_eig_p < -tol.certificate)
    throw InvalidInput("decompose: circulant block has negative eigenvalue " + std::to_string(cert.min_eig_p) +
                       "; W is not block-positive");
  return cert;
}

/// Existence of the split without building matrices: symmetric alpha with
/// nonnegative circulant eigenvalues.
inline bool split_exists(const AlphaVector& a, const ToleranceConfig& tol = default_tolerances()) {
  if (!is_decomposable(a, tol)) return false;
  std::vector<double> row(static_cast<std::size_t>(a.n()));
  row[0] = a[0];
  for (int k = 1; k < a.n(); ++k) row[k] = std::sqrt(a[k] * a[-k]) - 1.0;
  for (double ev : circulant_eigenvalues(row))
    if (ev < -tol.certificate) return false;
  return true;
}

/// alpha'_k = min(alpha_k, alpha_{n-k}): the largest symmetric vector below alpha.
inline AlphaVector symmetric_floor(const AlphaVector& a) {
  std::vector<double> f(static_cast<std::size_t>(a.n()));
  for (int k = 0; k < a.n(); ++k) f[k] = std::min(a[k], a[-k]);
  return AlphaVector(std::move(f));
}

/// Split of W[alpha] through its symmetric floor: W[alpha] - W[floor] is a
/// nonnegative combination of the alpha blocks and is added to P. Works for
/// asymmetric alpha strictly inside the block-positive region.
inline std::optional<DecompositionCertificate> dominated_split(const AlphaVector& a,
                                                               const ToleranceConfig& tol = default_tolerances()) {
  const AlphaVector floor = symmetric_floor(a);
  if (!split_exists(floor, tol)) return std::nullopt;
  DecompositionCertificate cert = detail::assemble_split(floor);
  BipartiteOperator p = cert.p;
  for (int k = 1; k < a.n(); ++k)
    if (a[k] > floor[k]) p += (a[k] - floor[k]) * alpha_block(a.n(), k);
  cert.p = std::move(p);
  const BipartiteOperator w = witness_from_alpha(a);
  cert.residual = (w.matrix() - cert.p.matrix() - partial_transpose(cert.q).matrix()).norm();
  cert.min_eig_p = min_eigenvalue(cert.p);
  return cert;
}

inline bool verify(const DecompositionCertificate& cert, const BipartiteOperator& w,
                   const ToleranceConfig& tol = default_tolerances()) {
  const double residual = (w.matrix() - cert.p.matrix() - partial_transpose(cert.q).matrix()).norm();
  return residual <= tol.certificate && min_eigenvalue(cert.p) >= -tol.certificate &&
         min_eigenvalue(cert.q) >= -tol.certificate;
}

// PPT certificate ---------------------------------------------------------

struct PPTCertificate {
  int k = 1;
  double epsilon = 1;
  BipartiteOperator rho;
  double pairing = 0;      // tr(rho W), computed from matrices
  double closed_form = 0;  // n(eps a_k + a_{n-k}/eps - a_k - a_{n-k} + sum a - (n-1))
  double min_eig_rho = 0;
  double min_eig_rho_pt = 0;
};

/// n (eps alpha_k + alpha_{n-k}/eps - alpha_k - alpha_{n-k} + sum alpha - (n-1))
inline double pairing_formula(const AlphaVector& a, int k, double eps) {
  const double ak = a[k], ank = a[-k];
  return a.n() * (eps * ak + ank / eps - ak - ank + a.sum() - (a.n() - 1.0));
}

/// rho_eps = sum_{l != k, n-k} Pi_l + eps Pi_k + Pi_{n-k}/eps + n P+ (l >= 1),
/// with Pi_l the eigenspace of W carrying alpha_l. PPT for every eps > 0.
inline BipartiteOperator ppt_state(int n, int k, double eps) {
  require_dim(n);
  if (k < 1 || k >= n) throw InvalidInput("ppt_state: k must lie in [1, n)");
  if (!(eps > 0) || !std::isfinite(eps)) throw InvalidInput("ppt_state: epsilon must be positive");
  if (2 * k == n) throw InvalidInput("ppt_state: k = n/2 pairs the block with itself");
  BipartiteOperator rho = double(n) * p_plus(n);
  for (int l = 1; l < n; ++l) {
    const double weight = l == k ? eps : (l == n - k ? 1.0 / eps : 1.0);
    rho += weight * alpha_block(n, l);
  }
  return rho;
}

/// Index maximizing (sqrt(alpha_k) - sqrt(alpha_{n-k}))^2 over alpha_k > 0;
/// ties go to the smallest k.
inline std::optional<int> strongest_ppt_index(const AlphaVector& a) {
  std::optional<int> best;
  double strength = 0;
  for (int k = 1; k < a.n(); ++k) {
    if (!(a[k] > 0) || 2 * k == a.n()) continue;
    const double s = std::pow(std::sqrt(a[k]) - std::sqrt(a[-k]), 2);
    if (s > strength) {
      strength = s;
      best = k;
    }
  }
  return best;
}

/// sqrt(alpha_{n-k}/alpha_k), or 1/2 when alpha_{n-k} = 0.
inline double default_epsilon(const AlphaVector& a, int k) {
  const double r = a[-k] / a[k];
  return r > 0 ? std::sqrt(r) : 0.5;
}

inline PPTCertificate ppt_certificate(const AlphaVector& a, std::optional<int> k_opt = std::nullopt,
                                      std::optional<double> eps_opt = std::nullopt,
                                      const ToleranceConfig& tol = default_tolerances()) {
  const int n = a.n();
  int k = 0;
  if (k_opt) {
    k = *k_opt;
    if (k < 1 || k >= n) throw InvalidInput("ppt_certificate: k must lie in [1, n)");
  } else {
    const auto best = strongest_ppt_index(a);
    if (!best) throw InvalidInput("ppt_certificate: alpha is symmetric, no certificate exists");
    k = *best;
  }
  if (std::abs(a[k] - a[-k]) <= tol.symmetry)
    throw InvalidInput("no certificate exists at this index (decomposable direction): alpha_" + std::to_string(k) +
                       " = alpha_" + std::to_string(n - k));
  if (!(a[k] > 0)) throw InvalidInput("ppt_certificate: alpha_" + std::to_string(k) + " = 0");

  const double eps = eps_opt ? *eps_opt : default_epsilon(a, k);
  PPTCertificate cert{k, eps, ppt_state(n, k, eps), 0, pairing_formula(a, k, eps), 0, 0};
  cert.pairing = (cert.rho.matrix() * witness_from_alpha(a).matrix()).trace().real();
  cert.min_eig_rho = min_eigenvalue(cert.rho);
  cert.min_eig_rho_pt = min_eigenvalue(partial_transpose(cert.rho));
  return cert;
}

inline bool verify(const PPTCertificate& cert, const BipartiteOperator& w,
                   const ToleranceConfig& tol = default_tolerances()) {
  const double pairing = (cert.rho.matrix() * w.matrix()).trace().real();
  return min_eigenvalue(cert.rho) >= -tol.certificate &&
         min_eigenvalue(partial_transpose(cert.rho)) >= -tol.certificate && pairing < -tol.certificate;
}

struct NegativityWindow {
  double lo = 1;
  double hi = 1;
  bool degenerate = false;  // alpha_k = 0: window derived by the limit

  bool empty() const { return !(hi > lo); }
  bool contains(double eps) const { return eps > lo && eps < hi; }
};

/// Open interval of eps on which the boundary pairing is negative: between the
/// roots {1, alpha_{n-k}/alpha_k} of alpha_k e^2 - (alpha_k + alpha_{n-k}) e + alpha_{n-k}.
inline NegativityWindow negativity_window(const AlphaVector& a, int k) {
  if (k < 1 || k >= a.n()) throw InvalidInput("negativity_window: k must lie in [1, n)");
  const double ak = a[k], ank = a[-k];
  if (ak == 0.0) {
    if (ank == 0.0) return {1, 1, true};
    return {1.0, std::numeric_limits<double>::infinity(), true};
  }
  const double r = ank / ak;
  return {std::min(1.0, r), std::max(1.0, r), false};
}

}  // namespace bwl
