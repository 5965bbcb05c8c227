#include <random>

#include <gtest/gtest.h>

#include "bwl/classify.hpp"

using namespace bwl;

namespace {

const double kPi = std::numbers::pi;

std::optional<int> sign_for(int n, std::mt19937_64& rng) {
  if (n % 2) return std::nullopt;
  return (rng() & 1) ? 1 : -1;
}

AlphaVector random_torus(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0, kTwoPi);
  std::vector<double> ph(static_cast<std::size_t>(torus_phase_count(n)));
  for (double& p : ph) p = u(rng);
  return witness_from_torus(n, ph, sign_for(n, rng)).alpha;
}

// Independent check of a split: residual, and PSD of both parts.
void expect_valid_split(const DecompositionCertificate& cert, const AlphaVector& a, double tol = 1e-10) {
  const ComplexMatrix w = witness_from_alpha(a).matrix();
  const int n = a.n();
  const ComplexMatrix qg = partial_transpose(cert.q.matrix(), n);
  EXPECT_LE((w - cert.p.matrix() - qg).norm(), tol);
  EXPECT_GE(hermitian_eigenvalues(cert.p.matrix()).minCoeff(), -tol);
  EXPECT_GE(hermitian_eigenvalues(cert.q.matrix()).minCoeff(), -tol);
}

}  // namespace

TEST(IsDecomposable, Examples) {
  EXPECT_TRUE(is_decomposable(AlphaVector{0.0, 1.0, 1.0}));
  EXPECT_FALSE(is_decomposable(AlphaVector{1.0, 0.8, 0.2}));
  EXPECT_FALSE(is_decomposable(witness_from_torus(4, {kPi / 2}, 1).alpha));
  EXPECT_TRUE(c_criterion_decomposable(alpha_to_c(AlphaVector{0.0, 1.0, 1.0})));
}

TEST(IsDecomposable, AgreesWithCCriterionOnTorus) {
  std::mt19937_64 rng(31);
  for (int n : {3, 4, 5, 6})
    for (int j = 0; j < 12; ++j) {
      const int m = torus_phase_count(n);
      std::vector<double> ph(static_cast<std::size_t>(m));
      for (int i = 0; i < m; ++i) ph[i] = kPi * ((j >> i) & 1);  // 0 or pi: decomposable lattice
      if (j >= 6) ph[0] += 0.3;
      const AlphaVector a = witness_from_torus(n, ph, sign_for(n, rng)).alpha;
      EXPECT_EQ(is_decomposable(a), c_criterion_decomposable(alpha_to_c(a))) << n << " " << j;
      EXPECT_EQ(is_decomposable(a), j < 6);
    }
}

TEST(IsDecomposable, GenericTorusPointsAreIndecomposable) {
  std::mt19937_64 rng(32);
  for (int n : {3, 4, 5})
    for (int trial = 0; trial < 100; ++trial) EXPECT_FALSE(is_decomposable(random_torus(n, rng)));
}

TEST(Decompose, ReductionWitness) {
  const AlphaVector a{0.0, 1.0, 1.0};
  const DecompositionCertificate cert = decompose(a);
  expect_valid_split(cert, a, 1e-12);
  // the circulant block vanishes; W = (I - F)^Gamma = I - 3P+
  EXPECT_LT(cert.p.matrix().norm(), 1e-14);
  EXPECT_LT((cert.q.matrix() - (ComplexMatrix::Identity(9, 9) - flip(3).matrix())).norm(), 1e-14);
  for (double m : cert.circulant_row) EXPECT_NEAR(m, 0.0, 1e-15);
}

TEST(Decompose, TorusPointAtZeroPhase) {
  const AlphaVector a = witness_from_torus(3, {0.0}, std::nullopt).alpha;
  const DecompositionCertificate cert = decompose(a);
  expect_valid_split(cert, a);
  EXPECT_NEAR(cert.circulant_row[0], 4.0 / 3, 1e-12);
  EXPECT_NEAR(cert.circulant_row[1], -2.0 / 3, 1e-12);
  EXPECT_NEAR(cert.circulant_row[2], -2.0 / 3, 1e-12);
  std::vector<double> ev = cert.circulant_eigenvalues;
  std::sort(ev.begin(), ev.end());
  EXPECT_NEAR(ev[0], 0, 1e-12);
  EXPECT_NEAR(ev[1], 2, 1e-12);
  EXPECT_NEAR(ev[2], 2, 1e-12);
}

TEST(Decompose, SymmetricNEqualsFour) {
  const AlphaVector a{1.0, 1.0, 0.0, 1.0};
  const DecompositionCertificate cert = decompose(a);
  expect_valid_split(cert, a, 1e-12);
  const ComplexVector c = alpha_to_c(a).c;
  EXPECT_NEAR(cert.circulant_eigenvalues[0], 0.0, 1e-12);
  for (int j = 1; j < 4; ++j) EXPECT_NEAR(cert.circulant_eigenvalues[j], c(j).real() + 1, 1e-12);
}

TEST(Decompose, CirculantEigenvaluesOnSymmetricTorusPoints) {
  for (int n : {3, 4, 5, 6, 7}) {
    const int m = torus_phase_count(n);
    for (int mask = 0; mask < (1 << m); ++mask) {
      std::vector<double> ph(static_cast<std::size_t>(m));
      for (int i = 0; i < m; ++i) ph[i] = kPi * ((mask >> i) & 1);
      for (int s : {1, -1}) {
        if (n % 2 && s == -1) continue;
        const AlphaVector a = witness_from_torus(n, ph, n % 2 ? std::nullopt : std::optional<int>(s)).alpha;
        const DecompositionCertificate cert = decompose(a);
        expect_valid_split(cert, a);
        EXPECT_NEAR(cert.circulant_eigenvalues[0], 0.0, 1e-10);
        for (int j = 1; j < n; ++j) {
          const double ev = cert.circulant_eigenvalues[j];
          EXPECT_TRUE(std::abs(ev) < 1e-10 || std::abs(ev - 2) < 1e-10) << n << " " << j << " " << ev;
        }
      }
    }
  }
}

TEST(Decompose, RandomSymmetricBlockPositive) {
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> u(0, 1.5);
  int built = 0;
  for (int trial = 0; trial < 200 && built < 40; ++trial) {
    const int n = 3 + trial % 4;
    std::vector<double> a(static_cast<std::size_t>(n));
    for (int k = 0; k <= n / 2; ++k) a[k] = a[mod(-k, n)] = u(rng);
    const AlphaVector alpha(a);
    if (!split_exists(alpha)) continue;
    expect_valid_split(decompose(alpha), alpha);
    ++built;
  }
  EXPECT_GE(built, 20);
}

TEST(Decompose, Errors) {
  try {
    decompose(AlphaVector{1.0, 0.8, 0.2});
    FAIL();
  } catch (const InvalidInput& e) {
    EXPECT_NE(std::string(e.what()).find("alpha_1"), std::string::npos);
  }
  // symmetric but below the sum bound: circulant block is not PSD
  EXPECT_THROW(decompose(AlphaVector{0.0, 0.5, 0.5}), InvalidInput);
}

TEST(PPTCertificate, PairingExamples) {
  const AlphaVector a{1.0, 0.8, 0.2};
  const PPTCertificate half = ppt_certificate(a, 1, 0.5);
  EXPECT_NEAR(half.pairing, -0.6, 1e-12);
  EXPECT_NEAR(half.closed_form, -0.6, 1e-12);
  const PPTCertificate one = ppt_certificate(a, 1, 1.0);
  EXPECT_NEAR(one.pairing, 0.0, 1e-12);

  const AlphaVector b{1.0, 0.0, 1.0, 1.0};
  const PPTCertificate q = ppt_certificate(b, 3, 0.25);
  EXPECT_NEAR(q.pairing, -3.0, 1e-12);
}

TEST(PPTCertificate, StateIsPPTAndPairingIndependentlyComputed) {
  const AlphaVector a{1.0, 0.8, 0.2};
  const PPTCertificate cert = ppt_certificate(a, 1, 0.5);
  const ComplexMatrix rho = cert.rho.matrix();
  EXPECT_GE(hermitian_eigenvalues(rho).minCoeff(), -1e-12);
  EXPECT_GE(hermitian_eigenvalues(partial_transpose(rho, 3)).minCoeff(), -1e-12);
  EXPECT_NEAR((rho * witness_from_alpha(a).matrix()).trace().real(), -0.6, 1e-12);
  EXPECT_TRUE(verify(cert, witness_from_alpha(a)));
}

TEST(PPTCertificate, DefaultEpsilonGivesSquareRootGap) {
  std::mt19937_64 rng(34);
  for (int n : {3, 4, 5})
    for (int trial = 0; trial < 10; ++trial) {
      const AlphaVector a = random_torus(n, rng);
      const PPTCertificate cert = ppt_certificate(a);
      const double gap = std::sqrt(a[cert.k]) - std::sqrt(a[-cert.k]);
      EXPECT_NEAR(cert.pairing, -n * gap * gap, 1e-9);
      EXPECT_NEAR(cert.pairing, cert.closed_form, 1e-10);
      EXPECT_GE(cert.min_eig_rho, -1e-10);
      EXPECT_GE(cert.min_eig_rho_pt, -1e-10);
    }
}

TEST(PPTCertificate, PicksStrongestIndex) {
  const AlphaVector a{0.5, 1.4, 0.6, 0.5, 0.0};
  // strengths (sqrt a_k - sqrt a_{-k})^2: k=1 vs 4: 1.4; k=2 vs 3: ~0.0025
  EXPECT_EQ(strongest_ppt_index(a), 1);
  EXPECT_EQ(ppt_certificate(a).k, 1);
  EXPECT_FALSE(strongest_ppt_index(AlphaVector{0.0, 1.0, 1.0}));
}

TEST(PPTCertificate, Errors) {
  try {
    ppt_certificate(AlphaVector{0.0, 1.0, 1.0}, 1);
    FAIL();
  } catch (const InvalidInput& e) {
    EXPECT_NE(std::string(e.what()).find("no certificate exists at this index"), std::string::npos);
  }
  EXPECT_THROW(ppt_certificate(AlphaVector{1.0, 0.0, 1.0, 1.0}, 1), InvalidInput);
  EXPECT_THROW(ppt_certificate(AlphaVector{1.0, 0.8, 0.2}, 3), InvalidInput);
  EXPECT_THROW(ppt_state(3, 1, 0.0), InvalidInput);
  EXPECT_THROW(ppt_state(4, 2, 1.0), InvalidInput);
}

TEST(NegativityWindow, Examples) {
  const auto w = negativity_window(AlphaVector{0.5, 1.0, 0.0, 0.0, 4.0 - 2.5}, 1);
  EXPECT_NEAR(w.lo, 1.0, 1e-15);
  EXPECT_NEAR(w.hi, 1.5, 1e-15);

  const AlphaVector b{0.0, 1.0, 0.0, 0.0, 3.0};  // alpha_1 = 1, alpha_4 = 3
  const auto v = negativity_window(b, 1);
  EXPECT_NEAR(v.lo, 1.0, 1e-15);
  EXPECT_NEAR(v.hi, 3.0, 1e-15);
  EXPECT_LT(pairing_formula(b, 1, 2.0), 0);
  EXPECT_GE(pairing_formula(b, 1, 5.0), 0);

  EXPECT_TRUE(negativity_window(AlphaVector{0.0, 1.0, 1.0}, 1).empty());

  const auto c = negativity_window(AlphaVector{1.0, 0.8, 0.2}, 1);
  EXPECT_NEAR(c.lo, 0.25, 1e-15);
  EXPECT_NEAR(c.hi, 1.0, 1e-15);
}

TEST(NegativityWindow, VanishingAlphaK) {
  // pairing n (alpha_{n-k}/eps - alpha_{n-k}) is negative exactly for eps > 1
  const AlphaVector a{1.0, 0.0, 1.0, 1.0};
  const auto w = negativity_window(a, 1);
  EXPECT_TRUE(w.degenerate);
  EXPECT_EQ(w.lo, 1.0);
  EXPECT_TRUE(std::isinf(w.hi));
  EXPECT_LT(pairing_formula(a, 1, 3.0), 0);
  EXPECT_GT(pairing_formula(a, 1, 0.5), 0);
}

TEST(NegativityWindow, PairingSignMatchesWindow) {
  std::mt19937_64 rng(35);
  std::uniform_real_distribution<double> eps(0.05, 6.0);
  for (int trial = 0; trial < 20; ++trial) {
    const AlphaVector a = random_torus(5, rng);
    for (int k = 1; k < 5; ++k) {
      if (!(a[k] > 0)) continue;
      const auto w = negativity_window(a, k);
      for (int s = 0; s < 10; ++s) {
        const double e = eps(rng);
        if (std::abs(e - w.lo) < 1e-6 || std::abs(e - w.hi) < 1e-6) continue;
        EXPECT_EQ(w.contains(e), pairing_formula(a, k, e) < 0) << trial << " " << k << " " << e;
      }
    }
  }
}

TEST(Dichotomy, ExactlyOneCertificateOnBoundary) {
  std::mt19937_64 rng(36);
  for (int n : {3, 4, 5})
    for (int trial = 0; trial < 30; ++trial) {
      AlphaVector a = random_torus(n, rng);
      if (trial % 3 == 0) a = witness_from_torus(n, std::vector<double>(torus_phase_count(n), kPi * (trial % 2)),
                                                 n % 2 ? std::nullopt : std::optional<int>(1))
                                  .alpha;
      bool split = false, ppt = false;
      try {
        expect_valid_split(decompose(a), a);
        split = true;
      } catch (const InvalidInput&) {
      }
      try {
        ppt = verify(ppt_certificate(a), witness_from_alpha(a));
      } catch (const InvalidInput&) {
      }
      EXPECT_NE(split, ppt) << "n = " << n << " trial " << trial;
    }
}

TEST(Dichotomy, N3AgreesWithClosedFormCriterion) {
  for (int j = 0; j < 48; ++j) {
    const AlphaVector a = witness_from_torus(3, {kTwoPi * j / 48}, std::nullopt).alpha;
    const bool closed_form = !(4 * a[1] * a[2] < (2 - a[0]) * (2 - a[0]) - 1e-10);
    EXPECT_EQ(is_decomposable(a), closed_form) << j;
    EXPECT_EQ(*classify_n3(a).decomposable, closed_form) << j;
  }
}

TEST(Certify, RoutesToTheRightCertificate) {
  EXPECT_TRUE(std::holds_alternative<PPTCertificate>(certify(AlphaVector{1.0, 0.8, 0.2})));
  EXPECT_TRUE(std::holds_alternative<DecompositionCertificate>(certify(AlphaVector{0.0, 1.0, 1.0})));
  EXPECT_TRUE(std::holds_alternative<ProductCertificate>(certify(AlphaVector{0.6, 1.35, 0.05})));
  const Certificate cp = certify(AlphaVector{2.5, 0.1, 0.4});
  ASSERT_TRUE(std::holds_alternative<DecompositionCertificate>(cp));
  expect_valid_split(std::get<DecompositionCertificate>(cp), AlphaVector{2.5, 0.1, 0.4});
}

TEST(Certify, GrayBandRaisesNoCertificate) {
  const AlphaVector a{1.0, 0.5 + 1e-6, 0.5 - 1e-6};
  try {
    certify(a);
    FAIL() << "expected NoCertificate";
  } catch (const NoCertificate& e) {
    EXPECT_LT(e.margin(), 0.0);
    EXPECT_GT(e.margin(), -1e-10);
  }
}

TEST(Certify, AsymmetricInteriorPointUsesSymmetricFloor) {
  // dominates the reduction witness (0, 1, 1) componentwise
  const AlphaVector a{0.2, 1.6, 1.0};
  const Certificate c = certify(a);
  ASSERT_TRUE(std::holds_alternative<DecompositionCertificate>(c));
  expect_valid_split(std::get<DecompositionCertificate>(c), a);
}
