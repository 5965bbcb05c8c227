#pragma once

// Block-positivity of W[alpha] (equivalently positivity of the map Lambda).
//
// Exact answers exist for n = 2 and n = 3. For general n the engine combines
// necessary conditions from the cyclic inequalities, the sufficient |c_k| <= 1
// test from the Weyl expansion, and a see-saw minimizer over product vectors
// that can refute block-positivity but never prove it.

#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include "bwl/witness.hpp"

namespace bwl {

enum class Trinary { Yes, No, Undetermined };

enum class Method { ExactN2, ExactN3, CyclicNecessary, SeeSaw, WeylSufficient, DecomposableSplit };

inline std::string_view to_string(Trinary t) {
  switch (t) {
    case Trinary::Yes: return "yes";
    case Trinary::No: return "no";
    case Trinary::Undetermined: return "undetermined";
  }
  return "undetermined";
}

inline std::string_view to_string(Method m) {
  switch (m) {
    case Method::ExactN2: return "exact-n2";
    case Method::ExactN3: return "exact-n3";
    case Method::CyclicNecessary: return "cyclic-necessary";
    case Method::SeeSaw: return "see-saw";
    case Method::WeylSufficient: return "weyl-sufficient";
    case Method::DecomposableSplit: return "decomposable-split";
  }
  return "see-saw";
}

/// Product vector x (x) y and the value <x(x)y|W|x(x)y>.
struct ProductCertificate {
  ComplexVector x;
  ComplexVector y;
  double value = 0;
};

struct PositivityVerdict {
  Trinary block_positive = Trinary::Undetermined;
  bool is_cp = false;
  Method method = Method::SeeSaw;
  std::optional<ProductCertificate> certificate;
  std::optional<bool> decomposable;  // meaningful when block_positive == Yes
  std::optional<bool> optimal;       // n = 3 only

  bool is_witness() const { return block_positive == Trinary::Yes && !is_cp; }
};

/// <x (x) y| W |x (x) y>
inline double product_expectation(const BipartiteOperator& w, const ComplexVector& x, const ComplexVector& y) {
  const ComplexVector v = kron(x, y);
  return (v.adjoint() * w.matrix() * v)(0).real();
}

/// x = y = (1, ..., 1)/sqrt(n); gives (sum alpha + 1 - n)/n on W[alpha].
inline ProductCertificate uniform_product_certificate(const AlphaVector& a) {
  const int n = a.n();
  const ComplexVector u = ComplexVector::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
  return {u, u, product_expectation(witness_from_alpha(a), u, u)};
}

// Cyclic inequalities ------------------------------------------------------

/// sum_i t_i^2 / ((alpha_0 + 1) t_i^2 + sum_{k>=1} alpha_k t_{i+k}^2)
/// 0/0 terms contribute 0; a positive numerator over a zero denominator
/// returns +infinity.
inline double cyclic_lhs(const AlphaVector& a, const std::vector<double>& t) {
  const int n = a.n();
  if (static_cast<int>(t.size()) != n) throw InvalidInput("cyclic_lhs: t must have length n");
  bool nonzero = false;
  for (double ti : t) {
    if (ti < 0) throw InvalidInput("cyclic_lhs: t must be nonnegative");
    nonzero = nonzero || ti > 0;
  }
  if (!nonzero) throw InvalidInput("cyclic_lhs: t must be nonzero");
  double total = 0;
  for (int i = 0; i < n; ++i) {
    const double num = t[i] * t[i];
    double den = (a[0] + 1.0) * num;
    for (int k = 1; k < n; ++k) den += a[k] * t[mod(i + k, n)] * t[mod(i + k, n)];
    if (den == 0.0) {
      if (num > 0.0) return std::numeric_limits<double>::infinity();
      continue;
    }
    total += num / den;
  }
  return total;
}

struct CyclicMaximum {
  double value = 0;
  std::vector<double> t;  // unit 2-norm, nonnegative
};

namespace detail {

// Euclidean projection onto {s : s_i >= floor, sum s = 1}.
inline RealVector project_simplex(const RealVector& v, double floor) {
  const auto n = v.size();
  const double budget = 1.0 - floor * static_cast<double>(n);
  RealVector u = v.array() - floor;
  RealVector sorted = u;
  std::sort(sorted.data(), sorted.data() + n, std::greater<>());
  double cumulative = 0, theta = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    cumulative += sorted(i);
    const double candidate = (cumulative - budget) / static_cast<double>(i + 1);
    if (sorted(i) - candidate > 0) theta = candidate;
  }
  return (u.array() - theta).max(0.0) + floor;
}

// f(s) = sum_i s_i / D_i(s), s = t^2 on the probability simplex.
struct CyclicObjective {
  const AlphaVector& a;

  double denominator(const RealVector& s, int i) const {
    const int n = a.n();
    double d = (a[0] + 1.0) * s(i);
    for (int k = 1; k < n; ++k) d += a[k] * s(mod(i + k, n));
    return d;
  }
  double operator()(const RealVector& s) const {
    double f = 0;
    for (int i = 0; i < a.n(); ++i) f += s(i) / denominator(s, i);
    return f;
  }
  RealVector gradient(const RealVector& s) const {
    const int n = a.n();
    RealVector g = RealVector::Zero(n);
    for (int i = 0; i < n; ++i) {
      const double d = denominator(s, i);
      g(i) += 1.0 / d;
      const double w = s(i) / (d * d);
      g(i) -= w * (a[0] + 1.0);
      for (int k = 1; k < n; ++k) g(mod(i + k, n)) -= w * a[k];
    }
    return g;
  }
};

}  // namespace detail

/// Multi-start projected gradient ascent of the cyclic left-hand side.
/// Vertices, edge midpoints and the uniform point are always tried; `restarts`
/// further starts are drawn from a seeded flat Dirichlet. A value > 1 refutes
/// positivity of Lambda; a value <= 1 is evidence only.
inline CyclicMaximum cyclic_maximize(const AlphaVector& a, int restarts = 16, std::uint64_t seed = 0xC1C11CULL,
                                     int iterations = 400) {
  const int n = a.n();
  constexpr double kFloor = 1e-15;
  const detail::CyclicObjective f{a};

  std::vector<RealVector> starts;
  starts.push_back(RealVector::Constant(n, 1.0 / n));
  for (int i = 0; i < n; ++i) {
    starts.push_back(RealVector::Unit(n, i));
    for (int j = i + 1; j < n; ++j) {
      RealVector s = RealVector::Zero(n);
      s(i) = s(j) = 0.5;
      starts.push_back(s);
    }
  }
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> expo(1.0);
  for (int r = 0; r < restarts; ++r) {
    RealVector s(n);
    for (int i = 0; i < n; ++i) s(i) = expo(rng);
    starts.push_back(s / s.sum());
  }

  CyclicMaximum best{-1.0, {}};
  for (RealVector s : starts) {
    s = detail::project_simplex(s, kFloor);
    double value = f(s);
    double step = 1.0;
    for (int it = 0; it < iterations; ++it) {
      const RealVector g = f.gradient(s);
      bool moved = false;
      while (step > 1e-14) {
        const RealVector trial = detail::project_simplex(s + step * g, kFloor);
        const double tv = f(trial);
        if (tv > value + 1e-15) {
          s = trial;
          value = tv;
          step *= 2.0;
          moved = true;
          break;
        }
        step *= 0.5;
      }
      if (!moved) break;
    }
    if (value > best.value) {
      best.value = value;
      best.t.assign(static_cast<std::size_t>(n), 0.0);
      for (int i = 0; i < n; ++i) best.t[i] = std::sqrt(s(i));
    }
  }
  return best;
}

struct NecessaryConditions {
  bool sum_at_least_n_minus_1 = false;  // sum alpha >= n-1
  bool alpha0_in_range = false;         // 0 <= alpha_0 < n-1
  bool is_cp = false;                   // alpha_0 >= n-1
  bool on_boundary = false;             // sum alpha = n-1

  bool witness_candidate() const { return sum_at_least_n_minus_1 && alpha0_in_range; }
};

inline NecessaryConditions necessary_conditions(const AlphaVector& a, double tol = 1e-10) {
  const double n1 = a.n() - 1.0;
  NecessaryConditions c;
  c.sum_at_least_n_minus_1 = a.sum() >= n1 - tol;
  c.alpha0_in_range = a[0] >= 0.0 && a[0] < n1 - tol;
  c.is_cp = a[0] >= n1 - tol;
  c.on_boundary = std::abs(a.sum() - n1) <= tol;
  return c;
}

// See-saw -----------------------------------------------------------------

struct SeeSawOptions {
  int restarts = 24;
  int iterations = 200;
  double stop = 1e-12;
  std::uint64_t seed = 0x5EE5A3ULL;
  bool record_trace = false;
};

struct SeeSawResult {
  double value = std::numeric_limits<double>::infinity();
  ComplexVector x;
  ComplexVector y;
  std::vector<std::vector<double>> traces;  // per restart, if requested
};

namespace detail {

// (x (x) I)^dag W (x (x) I): quadratic form on the second factor.
inline ComplexMatrix contract_first(const ComplexMatrix& w, const ComplexVector& x, int n) {
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int ip = 0; ip < n; ++ip) {
      const Complex coeff = std::conj(x(i)) * x(ip);
      if (coeff != Complex{}) out += coeff * w.block(i * n, ip * n, n, n);
    }
  return out;
}

// (I (x) y)^dag W (I (x) y): quadratic form on the first factor.
inline ComplexMatrix contract_second(const ComplexMatrix& w, const ComplexVector& y, int n) {
  ComplexMatrix out(n, n);
  for (int i = 0; i < n; ++i)
    for (int ip = 0; ip < n; ++ip) out(i, ip) = y.dot(w.block(i * n, ip * n, n, n) * y);
  return out;
}

inline ComplexVector random_unit(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  ComplexVector v(n);
  for (int i = 0; i < n; ++i) v(i) = Complex{g(rng), g(rng)};
  return v.normalized();
}

}  // namespace detail

/// Alternating minimization of <x(x)y|W|x(x)y> over unit x, y. The returned
/// value is an upper bound on the true minimum.
inline SeeSawResult see_saw_min(const BipartiteOperator& w, const SeeSawOptions& opt = {}) {
  const int n = w.dim();
  const ComplexMatrix h = detail::hermitized(w.matrix(), default_tolerances());
  std::mt19937_64 rng(opt.seed);
  SeeSawResult best;
  for (int r = 0; r < opt.restarts; ++r) {
    ComplexVector x = detail::random_unit(n, rng);
    ComplexVector y = detail::random_unit(n, rng);
    double value = std::numeric_limits<double>::infinity();
    std::vector<double> trace;
    for (int it = 0; it < opt.iterations; ++it) {
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> ex(detail::contract_second(h, y, n));
      x = ex.eigenvectors().col(0);
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> ey(detail::contract_first(h, x, n));
      y = ey.eigenvectors().col(0);
      const double next = ey.eigenvalues()(0);
      if (opt.record_trace) trace.push_back(next);
      const bool converged = value - next < opt.stop;
      value = std::min(value, next);
      if (converged) break;
    }
    if (opt.record_trace) best.traces.push_back(std::move(trace));
    if (value < best.value) {
      best.value = value;
      best.x = x;
      best.y = y;
    }
  }
  return best;
}

/// Sufficient test from the Weyl expansion: W is block-positive when every
/// coefficient other than c_00 has modulus at most c_00/(n-1). False means
/// undetermined, not refuted.
inline bool weyl_sufficient_check(const SpectralCoefficients& s, double tol = 1e-10) {
  s.validate();
  const double c0 = s.c(0).real();
  if (c0 <= 0) return false;
  const double bound = c0 / (s.n() - 1);
  return s.max_tail_modulus() <= bound + tol && std::abs(s.off_column) <= bound + tol;
}

// Exact classifiers -------------------------------------------------------

namespace detail {

inline PositivityVerdict refuted(const AlphaVector& a, Method m, const SeeSawOptions& opt) {
  PositivityVerdict v;
  v.block_positive = Trinary::No;
  v.method = m;
  if (a.sum() < a.n() - 1.0) {
    v.certificate = uniform_product_certificate(a);
  } else {
    const SeeSawResult r = see_saw_min(witness_from_alpha(a), opt);
    if (r.value < 0) v.certificate = ProductCertificate{r.x, r.y, r.value};
  }
  return v;
}

}  // namespace detail

/// n = 2: block-positive iff sum alpha >= 1; every positive map on M_2 is
/// decomposable.
inline PositivityVerdict classify_n2(const AlphaVector& a, double tol = 1e-10, const SeeSawOptions& opt = {}) {
  if (a.n() != 2) throw InvalidInput("classify_n2 requires n = 2");
  const NecessaryConditions nc = necessary_conditions(a, tol);
  if (!nc.sum_at_least_n_minus_1) return detail::refuted(a, Method::ExactN2, opt);
  PositivityVerdict v;
  v.block_positive = Trinary::Yes;
  v.is_cp = nc.is_cp;
  v.method = Method::ExactN2;
  v.decomposable = true;
  return v;
}

/// n = 3 with (a, b, c) = alpha: witness iff a+b+c >= 2, 0 <= a < 2 and, when
/// a <= 1, bc >= (1-a)^2. A witness is indecomposable iff 4bc < (2-a)^2.
inline PositivityVerdict classify_n3(const AlphaVector& alpha, double tol = 1e-10, const SeeSawOptions& opt = {}) {
  if (alpha.n() != 3) throw InvalidInput("classify_n3 requires n = 3");
  const double a = alpha[0], b = alpha[1], c = alpha[2];
  const NecessaryConditions nc = necessary_conditions(alpha, tol);
  const bool extra = a > 1.0 || b * c >= (1.0 - a) * (1.0 - a) - tol;
  if (!nc.sum_at_least_n_minus_1 || !extra) return detail::refuted(alpha, Method::ExactN3, opt);

  PositivityVerdict v;
  v.block_positive = Trinary::Yes;
  v.is_cp = nc.is_cp;
  v.method = Method::ExactN3;
  if (v.is_cp) {
    v.decomposable = true;
  } else {
    v.decomposable = !(4.0 * b * c < (2.0 - a) * (2.0 - a) - tol);
    const bool on_circle = nc.on_boundary && std::abs(b * c - (1.0 - a) * (1.0 - a)) <= 1e-9;
    if (a <= 1.0 + tol && on_circle) v.optimal = true;
  }
  return v;
}

}  // namespace bwl
