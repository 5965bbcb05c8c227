#pragma once

// The symmetric Bell-diagonal witness family
//
//   W[alpha] = (alpha_0 + 1) Pi_0 + sum_{k>=1} alpha_k Pi_k - n P+
//
// and its equivalent parameterizations: the Fourier coefficients c_k of alpha
// (Weyl-operator expansion), phases on the torus |c_k| = 1, and the
// Choi-Jamiolkowski map with a_ij = alpha_{i-j}.

#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bwl/weyl.hpp"

namespace bwl {

/// Nonnegative coefficients (alpha_0, ..., alpha_{n-1}); indices wrap mod n.
class AlphaVector {
 public:
  explicit AlphaVector(std::vector<double> alpha, const ToleranceConfig& tol = default_tolerances())
      : alpha_(std::move(alpha)) {
    require_dim(static_cast<int>(alpha_.size()));
    for (std::size_t k = 0; k < alpha_.size(); ++k) {
      if (!std::isfinite(alpha_[k])) throw InvalidInput("alpha_" + std::to_string(k) + " is not finite");
      if (alpha_[k] < -tol.clamp)
        throw InvalidInput("alpha_" + std::to_string(k) + " = " + std::to_string(alpha_[k]) + " violates alpha_k >= 0");
      if (alpha_[k] < 0.0) alpha_[k] = 0.0;
    }
  }
  explicit AlphaVector(std::initializer_list<double> alpha) : AlphaVector(std::vector<double>(alpha)) {}

  static AlphaVector from_vector(const RealVector& alpha, const ToleranceConfig& tol = default_tolerances()) {
    return AlphaVector(std::vector<double>(alpha.data(), alpha.data() + alpha.size()), tol);
  }

  int n() const noexcept { return static_cast<int>(alpha_.size()); }
  double operator[](long long k) const { return alpha_[static_cast<std::size_t>(mod(k, n()))]; }
  const std::vector<double>& values() const noexcept { return alpha_; }
  RealVector vector() const { return Eigen::Map<const RealVector>(alpha_.data(), n()); }

  double sum() const {
    double s = 0;
    for (double a : alpha_) s += a;
    return s;
  }
  double sum_of_squares() const {
    double s = 0;
    for (double a : alpha_) s += a * a;
    return s;
  }
  /// sum alpha_k = n - 1
  bool on_simplex(double tol = 1e-9) const { return std::abs(sum() - (n() - 1)) <= tol; }

  friend bool operator==(const AlphaVector&, const AlphaVector&) = default;

 private:
  std::vector<double> alpha_;
};

/// Weyl-expansion coefficients: c_k = c_{k0} for k = 0..n-1 and the constant
/// value shared by every c_{kl}, l >= 1.
struct SpectralCoefficients {
  ComplexVector c;
  double off_column = -1.0;

  int n() const noexcept { return static_cast<int>(c.size()); }

  /// max over k of |c_k - conj(c_{n-k})|, including Im c_0
  double conjugate_symmetry_defect() const {
    double d = 0;
    for (int k = 0; k < n(); ++k) d = std::max(d, std::abs(c(k) - std::conj(c(mod(n() - k, n())))));
    return d;
  }
  void validate(double tol = 1e-10) const {
    require_dim(n());
    const double scale = std::max(1.0, c.cwiseAbs().maxCoeff());
    if (conjugate_symmetry_defect() > tol * scale)
      throw InvalidInput("c coefficients violate conjugate symmetry c_k = conj(c_{n-k})");
  }
  /// max_{k>=1} |c_k|
  double max_tail_modulus() const {
    double m = 0;
    for (int k = 1; k < n(); ++k) m = std::max(m, std::abs(c(k)));
    return m;
  }
};

enum class Provenance { FromAlpha, FromC, FromTorus, FromOrthogonal, Named };

inline std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::FromAlpha: return "alpha";
    case Provenance::FromC: return "c";
    case Provenance::FromTorus: return "torus";
    case Provenance::FromOrthogonal: return "orthogonal";
    case Provenance::Named: return "named";
  }
  return "alpha";
}

inline Provenance provenance_from_string(std::string_view s) {
  for (auto p : {Provenance::FromAlpha, Provenance::FromC, Provenance::FromTorus, Provenance::FromOrthogonal,
                 Provenance::Named})
    if (to_string(p) == s) return p;
  throw InvalidInput("unknown provenance '" + std::string(s) + "'");
}

/// Eigenspace of W carrying alpha_k: span{e_i (x) e_{i-k}}, i.e. Pi_{-k}.
/// This orientation makes W agree with the Choi operator of the map
/// Lambda(E_ii) = sum_j alpha_{i-j} E_jj.
inline BipartiteOperator alpha_block(int n, int k) { return pi_block(n, mod(-k, n)); }

/// (alpha_0 + 1) Pi_0 + sum_k alpha_k Pi_{-k} + beta n P+ with free beta.
inline BipartiteOperator bell_diagonal_operator(const AlphaVector& a, double beta) {
  const int n = a.n();
  BipartiteOperator w = (a[0] + 1.0) * alpha_block(n, 0);
  for (int k = 1; k < n; ++k) w += a[k] * alpha_block(n, k);
  w += (beta * n) * p_plus(n);
  return w;
}

inline BipartiteOperator witness_from_alpha(const AlphaVector& a) { return bell_diagonal_operator(a, -1.0); }

/// Closed-form spectrum of W[alpha], ascending.
inline RealVector witness_spectrum(const AlphaVector& a) {
  const int n = a.n();
  std::vector<double> ev;
  ev.push_back(a[0] + 1.0 - n);
  for (int i = 0; i < n - 1; ++i) ev.push_back(a[0] + 1.0);
  for (int k = 1; k < n; ++k)
    for (int i = 0; i < n; ++i) ev.push_back(a[k]);
  std::sort(ev.begin(), ev.end());
  return Eigen::Map<RealVector>(ev.data(), static_cast<Eigen::Index>(ev.size()));
}

inline SpectralCoefficients alpha_to_c(const AlphaVector& a) { return {dft(a.vector()), -1.0}; }

/// Inverse DFT back to a validated alpha vector.
inline AlphaVector c_to_alpha(const SpectralCoefficients& s, const ToleranceConfig& tol = default_tolerances()) {
  s.validate(tol.herm);
  const ComplexVector v = idft(s.c);
  const double scale = std::max(1.0, s.c.cwiseAbs().maxCoeff());
  std::vector<double> alpha(static_cast<std::size_t>(s.n()));
  for (int k = 0; k < s.n(); ++k) {
    if (std::abs(v(k).imag()) > 1e-12 * scale) throw InvalidInput("inverse DFT of c is not real");
    alpha[k] = v(k).real();
    if (alpha[k] < -tol.clamp)
      throw InvalidInput("not a valid witness parameterization: alpha_" + std::to_string(k) + " = " +
                         std::to_string(alpha[k]) + " < 0");
  }
  return AlphaVector(std::move(alpha), tol);
}

/// W = (1/n) sum_kl c_kl U_kl (x) U_{-k,l}, c_k0 = c_k, c_kl = off_column.
/// Assembled directly from Weyl operators.
inline BipartiteOperator witness_from_c(const SpectralCoefficients& s,
                                        const ToleranceConfig& tol = default_tolerances()) {
  s.validate(tol.herm);
  const int n = s.n();
  BipartiteOperator w = BipartiteOperator::zero(n);
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) {
      const Complex ckl = (l == 0) ? s.c(k) : Complex{s.off_column, 0.0};
      w += ckl * tensor(weyl(n, k, l), weyl(n, -k, l));
    }
  }
  return (1.0 / n) * std::move(w);
}

/// Number of free torus phases: floor((n-1)/2).
inline int torus_phase_count(int n) { return (n - 1) / 2; }

/// c = (n-1, e^{i phi_1}, ..., e^{i phi_m}, [sign,] e^{-i phi_m}, ..., e^{-i phi_1})
inline SpectralCoefficients torus_coefficients(int n, const std::vector<double>& phases, std::optional<int> even_sign) {
  require_dim(n);
  const int m = torus_phase_count(n);
  if (static_cast<int>(phases.size()) != m)
    throw InvalidInput("torus at n=" + std::to_string(n) + " takes " + std::to_string(m) + " phases, got " +
                       std::to_string(phases.size()));
  const bool even = n % 2 == 0;
  if (even && !even_sign) throw InvalidInput("even n requires a sign (+1 or -1) for c_{n/2}");
  if (!even && even_sign) throw InvalidInput("sign is only meaningful for even n");
  if (even_sign && *even_sign != 1 && *even_sign != -1) throw InvalidInput("sign must be +1 or -1");

  SpectralCoefficients s{ComplexVector::Zero(n), -1.0};
  s.c(0) = n - 1.0;
  for (int k = 1; k <= m; ++k) {
    if (!std::isfinite(phases[k - 1])) throw InvalidInput("phase is not finite");
    s.c(k) = std::polar(1.0, phases[k - 1]);
    s.c(n - k) = std::conj(s.c(k));
  }
  if (even) s.c(n / 2) = static_cast<double>(*even_sign);
  return s;
}

struct WitnessRecord {
  AlphaVector alpha;
  BipartiteOperator matrix;
  Provenance provenance = Provenance::FromAlpha;
  std::vector<double> phases;  // torus provenance only
  std::optional<int> sign;     // torus provenance, even n only
  std::string name;            // named provenance only

  int n() const noexcept { return alpha.n(); }
  SpectralCoefficients c() const { return alpha_to_c(alpha); }
};

inline WitnessRecord make_record(AlphaVector a, Provenance p) {
  BipartiteOperator w = witness_from_alpha(a);
  return {std::move(a), std::move(w), p, {}, std::nullopt, {}};
}

inline WitnessRecord witness_from_torus(int n, const std::vector<double>& phases, std::optional<int> even_sign,
                                        const ToleranceConfig& tol = default_tolerances()) {
  const SpectralCoefficients s = torus_coefficients(n, phases, even_sign);
  WitnessRecord r = make_record(c_to_alpha(s, tol), Provenance::FromTorus);
  r.phases = phases;
  r.sign = even_sign;
  return r;
}

/// Lambda(E_ii) = sum_j a_ij E_jj, Lambda(E_ij) = -E_ij for i != j.
inline ComplexMatrix choi_map_apply(const RealMatrix& a, const ComplexMatrix& rho) {
  const auto n = a.rows();
  if (a.cols() != n || rho.rows() != n || rho.cols() != n)
    throw InvalidInput("choi_map_apply: dimension mismatch");
  ComplexMatrix out = -rho;
  for (Eigen::Index j = 0; j < n; ++j) {
    Complex d = 0;
    for (Eigen::Index i = 0; i < n; ++i) d += a(i, j) * rho(i, i);
    out(j, j) = d;
  }
  return out;
}

/// Circulant profile a_ij = alpha_{i-j}.
inline RealMatrix circulant_profile(const AlphaVector& alpha) {
  const int n = alpha.n();
  RealMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = alpha[i - j];
  return a;
}

inline ComplexMatrix choi_map_apply(const AlphaVector& alpha, const ComplexMatrix& rho) {
  return choi_map_apply(circulant_profile(alpha), rho);
}

/// sum_ij E_ij (x) Lambda(E_ij)
inline BipartiteOperator choi_matrix(const RealMatrix& a) {
  const int n = static_cast<int>(a.rows());
  require_dim(n);
  BipartiteOperator w = BipartiteOperator::zero(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) w += tensor(matrix_unit(n, i, j), choi_map_apply(a, matrix_unit(n, i, j)));
  return w;
}

inline BipartiteOperator choi_matrix(const AlphaVector& alpha) { return choi_matrix(circulant_profile(alpha)); }

/// W[a0, a1, ..., a_{n-1}]^# = W[a0, a_{n-1}, ..., a1]
inline AlphaVector dual_witness(const AlphaVector& a) {
  std::vector<double> d(a.values().size());
  for (int k = 0; k < a.n(); ++k) d[k] = a[-k];
  return AlphaVector(std::move(d));
}

inline BipartiteOperator flip_conjugate(const BipartiteOperator& w) {
  const ComplexMatrix f = flip(w.dim()).matrix();
  return {w.dim(), f * w.matrix() * f};
}

inline bool is_self_dual(const AlphaVector& a, double tol = 1e-9) {
  for (int k = 1; k < a.n(); ++k)
    if (std::abs(a[k] - a[-k]) > tol) return false;
  return true;
}

// Named members -----------------------------------------------------------

/// (0, 1, ..., 1): W = I (x) I - n P+, the reduction-map witness.
inline AlphaVector reduction_alpha(int n) {
  require_dim(n);
  std::vector<double> a(static_cast<std::size_t>(n), 1.0);
  a[0] = 0.0;
  return AlphaVector(std::move(a));
}

/// Choi points of the n = 3 circle: I at (b, c) = (1, 0), II at (0, 1).
inline AlphaVector choi_I_alpha() { return AlphaVector({1.0, 1.0, 0.0}); }
inline AlphaVector choi_II_alpha() { return AlphaVector({1.0, 0.0, 1.0}); }

/// alpha_0 = n-k, alpha_1..alpha_{k-1} = 1, rest 0; outside the torus class
/// for 2 <= k <= n-2.
inline AlphaVector non_torus_alpha(int n, int k) {
  require_dim(n);
  if (k < 1 || k > n) throw InvalidInput("non-torus family needs 1 <= k <= n");
  std::vector<double> a(static_cast<std::size_t>(n), 0.0);
  a[0] = n - k;
  for (int j = 1; j < k; ++j) a[j] = 1.0;
  return AlphaVector(std::move(a));
}

inline WitnessRecord named_witness(std::string_view name, int n, int k = 2) {
  AlphaVector a = [&] {
    if (name == "reduction" || name == "wprime") return reduction_alpha(n);
    if (name == "choi-I" || name == "choi-II") {
      if (n != 3) throw InvalidInput(std::string(name) + " is defined for n = 3 only");
      return name == "choi-I" ? choi_I_alpha() : choi_II_alpha();
    }
    if (name == "non-torus") return non_torus_alpha(n, k);
    throw InvalidInput("unknown named witness '" + std::string(name) + "'");
  }();
  WitnessRecord r = make_record(std::move(a), Provenance::Named);
  r.name = std::string(name);
  return r;
}

}  // namespace bwl
