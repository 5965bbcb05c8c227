#pragma once

#include <variant>

#include "bwl/decomposition.hpp"
#include "bwl/positivity.hpp"

namespace bwl {

struct ClassifyOptions {
  ToleranceConfig tol{};
  SeeSawOptions see_saw{};
  int cyclic_restarts = 16;
};

namespace detail {

inline std::optional<bool> decomposability_flag(const AlphaVector& a, const ToleranceConfig& tol) {
  if (split_exists(symmetric_floor(a), tol)) return true;
  const auto k = strongest_ppt_index(a);
  if (k && std::abs(a[*k] - a[-*k]) > tol.symmetry &&
      pairing_formula(a, *k, default_epsilon(a, *k)) < -tol.certificate)
    return false;
  return std::nullopt;
}

}  // namespace detail

/// Verdict for any n. Exact for n = 2, 3; for larger n a "yes" needs the
/// Weyl sufficient test or an explicit decomposable split, a "no" needs a
/// product vector with negative expectation or a cyclic violation.
inline PositivityVerdict classify(const AlphaVector& a, const ClassifyOptions& opt = {}) {
  const ToleranceConfig& tol = opt.tol;
  if (a.n() == 2) return classify_n2(a, tol.certificate, opt.see_saw);
  if (a.n() == 3) return classify_n3(a, tol.certificate, opt.see_saw);

  const NecessaryConditions nc = necessary_conditions(a, tol.certificate);
  if (!nc.sum_at_least_n_minus_1) return detail::refuted(a, Method::CyclicNecessary, opt.see_saw);

  PositivityVerdict v;
  if (nc.is_cp) {
    v.block_positive = Trinary::Yes;
    v.is_cp = true;
    v.method = Method::CyclicNecessary;
    v.decomposable = true;
    return v;
  }
  if (split_exists(symmetric_floor(a), tol)) {
    v.block_positive = Trinary::Yes;
    v.method = Method::DecomposableSplit;
    v.decomposable = true;
    return v;
  }
  if (weyl_sufficient_check(alpha_to_c(a), tol.certificate)) {
    v.block_positive = Trinary::Yes;
    v.method = Method::WeylSufficient;
    v.decomposable = detail::decomposability_flag(a, tol);
    return v;
  }
  const SeeSawResult r = see_saw_min(witness_from_alpha(a), opt.see_saw);
  if (r.value < -tol.certificate) {
    v.block_positive = Trinary::No;
    v.method = Method::SeeSaw;
    v.certificate = ProductCertificate{r.x, r.y, r.value};
    return v;
  }
  if (cyclic_maximize(a, opt.cyclic_restarts, opt.see_saw.seed).value > 1.0 + 1e-9) {
    v.block_positive = Trinary::No;
    v.method = Method::CyclicNecessary;
    return v;
  }
  v.block_positive = Trinary::Undetermined;
  v.method = Method::SeeSaw;
  return v;
}

enum class WitnessClass { CompletelyPositive, DecomposableWitness, IndecomposableWitness, NotBlockPositive,
                          Undetermined };

inline std::string_view to_string(WitnessClass c) {
  switch (c) {
    case WitnessClass::CompletelyPositive: return "cp";
    case WitnessClass::DecomposableWitness: return "decomposable-ew";
    case WitnessClass::IndecomposableWitness: return "indecomposable-ew";
    case WitnessClass::NotBlockPositive: return "not-block-positive";
    case WitnessClass::Undetermined: return "undetermined";
  }
  return "undetermined";
}

inline WitnessClass witness_class(const PositivityVerdict& v) {
  if (v.block_positive == Trinary::No) return WitnessClass::NotBlockPositive;
  if (v.block_positive == Trinary::Undetermined) return WitnessClass::Undetermined;
  if (v.is_cp) return WitnessClass::CompletelyPositive;
  if (!v.decomposable) return WitnessClass::Undetermined;
  return *v.decomposable ? WitnessClass::DecomposableWitness : WitnessClass::IndecomposableWitness;
}

// Certification -----------------------------------------------------------

using Certificate = std::variant<DecompositionCertificate, PPTCertificate, ProductCertificate>;

struct CertifyOptions {
  std::optional<int> k;
  std::optional<double> epsilon;
  ClassifyOptions classify{};
};

/// One machine-checkable certificate for W[alpha]:
///  * not block-positive: product vector with negative expectation;
///  * completely positive: the trivial split P = W, Q = 0;
///  * symmetric alpha: W = P + Q^Gamma;
///  * asymmetric alpha: PPT state with negative pairing, or, off the
///    boundary, a split of the symmetric floor plus a PSD remainder.
/// Throws NoCertificate in the gray band where neither can clear tolerance.
inline Certificate certify(const AlphaVector& a, const CertifyOptions& opt = {}) {
  const ToleranceConfig& tol = opt.classify.tol;
  const PositivityVerdict v = classify(a, opt.classify);
  if (v.block_positive == Trinary::No) {
    if (v.certificate && v.certificate->value < -tol.certificate) return *v.certificate;
    throw NoCertificate("not block-positive but no product vector below tolerance was found",
                        v.certificate ? v.certificate->value : 0.0);
  }

  if (v.is_cp) {
    const BipartiteOperator w = witness_from_alpha(a);
    DecompositionCertificate cert{w, BipartiteOperator::zero(a.n()), 0, {}, {}, min_eigenvalue(w), 0};
    if (cert.min_eig_p < -tol.certificate) throw VerificationFailure("CP verdict but W has a negative eigenvalue");
    return cert;
  }

  const double defect = symmetry_defect(a).first;
  if (defect <= tol.symmetry) {
    if (split_exists(a, tol)) return decompose(a, tol);
    throw NoCertificate("symmetric alpha without a PSD split", defect);
  }

  std::optional<int> k = opt.k;
  if (!k) k = strongest_ppt_index(a);
  std::optional<PPTCertificate> ppt;
  if (k) ppt = ppt_certificate(a, k, opt.epsilon, tol);
  if (ppt && ppt->pairing < -tol.certificate) return *ppt;
  if (!opt.k)
    if (auto split = dominated_split(a, tol)) return *split;
  if (!ppt) throw NoCertificate("no index with alpha_k > 0 and alpha_k != alpha_{n-k}", defect);
  const PPTCertificate& cert = *ppt;
  throw NoCertificate("PPT pairing " + std::to_string(cert.pairing) + " at k = " + std::to_string(cert.k) +
                            " does not clear tolerance",
                      cert.pairing);
}

}  // namespace bwl
