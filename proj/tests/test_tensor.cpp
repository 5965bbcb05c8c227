#include <random>

#include <gtest/gtest.h>

#include "bwl/weyl.hpp"

using namespace bwl;

namespace {

ComplexMatrix random_matrix(Eigen::Index r, Eigen::Index c, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  ComplexMatrix m(r, c);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < c; ++j) m(i, j) = Complex(g(rng), g(rng));
  return m;
}

ComplexMatrix random_hermitian(Eigen::Index d, std::mt19937_64& rng) {
  const ComplexMatrix m = random_matrix(d, d, rng);
  return (m + m.adjoint()) / 2.0;
}

// Reference partial transpose written entry by entry: <ij|X^G|kl> = <il|X|kj>.
ComplexMatrix pt_by_entries(const ComplexMatrix& x, int n) {
  ComplexMatrix out(x.rows(), x.cols());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) out(i * n + j, k * n + l) = x(i * n + l, k * n + j);
  return out;
}

}  // namespace

TEST(Kron, IdentityTimesIdentity) {
  const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
  EXPECT_TRUE(kron(id, id).isApprox(ComplexMatrix::Identity(4, 4)));
}

TEST(Kron, MatrixUnitsLandOnSingleEntry) {
  const ComplexMatrix k = kron(matrix_unit(2, 0, 0), matrix_unit(2, 1, 1));
  ASSERT_EQ(k.rows(), 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) EXPECT_EQ(k(i, j), (i == 1 && j == 1) ? Complex(1) : Complex(0));
}

TEST(Kron, WeylTimesConjugateIsUnitary) {
  const ComplexMatrix u = weyl(2, 1, 0);
  const ComplexMatrix k = kron(u, u.conjugate());
  EXPECT_LT((k * k.adjoint() - ComplexMatrix::Identity(4, 4)).norm(), 1e-14);
}

TEST(Kron, ShapeOfRectangularFactors) {
  std::mt19937_64 rng(1);
  const ComplexMatrix a = random_matrix(2, 3, rng), b = random_matrix(4, 1, rng);
  const ComplexMatrix k = kron(a, b);
  EXPECT_EQ(k.rows(), 8);
  EXPECT_EQ(k.cols(), 3);
  EXPECT_EQ(k(5, 2), a(1, 2) * b(1, 0));
}

TEST(BipartiteOperator, RejectsWrongSize) {
  EXPECT_THROW(BipartiteOperator(3, ComplexMatrix::Identity(8, 8)), InvalidInput);
  EXPECT_THROW(BipartiteOperator(2, ComplexMatrix::Identity(4, 3)), InvalidInput);
}

TEST(PartialTranspose, IdentityIsFixed) {
  const BipartiteOperator id = BipartiteOperator::identity(3);
  EXPECT_EQ(partial_transpose(id).matrix(), id.matrix());
}

TEST(PartialTranspose, MaximallyEntangledProjectorGivesFlip) {
  for (int n : {2, 3}) {
    ComplexMatrix flip_ref = ComplexMatrix::Zero(n * n, n * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) flip_ref(j * n + i, i * n + j) = 1.0;
    ComplexVector psi = ComplexVector::Zero(n * n);
    for (int i = 0; i < n; ++i) psi(i * n + i) = 1.0;
    const BipartiteOperator unnormalized(n, psi * psi.adjoint());
    EXPECT_LT((partial_transpose(unnormalized).matrix() - flip_ref).norm(), 1e-14) << "n = " << n;
  }
}

TEST(PartialTranspose, MatchesEntrywiseDefinition) {
  std::mt19937_64 rng(7);
  for (int n : {2, 3, 4}) {
    const ComplexMatrix x = random_matrix(n * n, n * n, rng);
    EXPECT_EQ(partial_transpose(x, n), pt_by_entries(x, n));
  }
}

TEST(PartialTranspose, PropertiesOnRandomInputs) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 3;
    const BipartiteOperator x(n, random_matrix(n * n, n * n, rng));
    const BipartiteOperator y(n, random_matrix(n * n, n * n, rng));
    EXPECT_EQ(partial_transpose(partial_transpose(x)).matrix(), x.matrix());
    EXPECT_NEAR(std::abs(partial_transpose(x).matrix().trace() - x.matrix().trace()), 0.0, 1e-12);
    const Complex s(0.3, -1.2);
    const ComplexMatrix lhs = partial_transpose(BipartiteOperator(n, x.matrix() + s * y.matrix())).matrix();
    const ComplexMatrix rhs = partial_transpose(x).matrix() + s * partial_transpose(y).matrix();
    EXPECT_LT((lhs - rhs).norm(), 1e-12);
    EXPECT_LT((partial_transpose(x).matrix().adjoint() - partial_transpose(x.matrix().adjoint(), n)).norm(), 1e-14);
  }
}

TEST(MinEigenvalue, Examples) {
  EXPECT_NEAR(min_eigenvalue(ComplexMatrix::Identity(3, 3)), 1.0, 1e-14);
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 0.5;
  d(1, 1) = 2.0;
  EXPECT_NEAR(min_eigenvalue(d), 0.5, 1e-14);
}

TEST(MinEigenvalue, ReductionWitnessBuiltByHand) {
  // I (x) I - 3 P+ at n = 3: the maximally entangled direction carries 1 - 3 = -2
  const int n = 3;
  ComplexVector psi = ComplexVector::Zero(n * n);
  for (int i = 0; i < n; ++i) psi(i * n + i) = 1.0 / std::sqrt(3.0);
  const ComplexMatrix w = ComplexMatrix::Identity(9, 9) - 3.0 * psi * psi.adjoint();
  EXPECT_NEAR(min_eigenvalue(w), -2.0, 1e-12);
}

TEST(MinEigenvalue, RejectsNonHermitian) {
  ComplexMatrix m = ComplexMatrix::Identity(2, 2);
  m(0, 1) = 1.0;
  EXPECT_THROW(min_eigenvalue(m), InvalidInput);
  EXPECT_FALSE(is_hermitian(m));
}

TEST(MinEigenvalue, ToleratesRoundoffAsymmetry) {
  ComplexMatrix m = ComplexMatrix::Identity(2, 2);
  m(0, 1) = 1e-14;
  EXPECT_NO_THROW(min_eigenvalue(m));
}

TEST(HermitianEigenvalues, ResidualsOnRandomInputs) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const ComplexMatrix m = random_hermitian(9, rng);
    const auto [lambda, v] = min_eigenpair(m);
    EXPECT_LE((m * v - lambda * v).norm(), 10 * 1e-10 * m.norm());
    EXPECT_NEAR(v.norm(), 1.0, 1e-12);
    const RealVector ev = hermitian_eigenvalues(m);
    EXPECT_NEAR(ev.sum(), m.trace().real(), 1e-10);
    EXPECT_NEAR(ev.minCoeff(), lambda, 1e-12);
  }
}

TEST(Dft, Examples) {
  RealVector delta(3);
  delta << 2, 0, 0;
  const ComplexVector c = dft(delta);
  for (int k = 0; k < 3; ++k) EXPECT_LT(std::abs(c(k) - 2.0), 1e-15);

  RealVector red(3);
  red << 0, 1, 1;
  const ComplexVector r = dft(red);
  EXPECT_LT(std::abs(r(0) - 2.0), 1e-14);
  EXPECT_LT(std::abs(r(1) + 1.0), 1e-14);
  EXPECT_LT(std::abs(r(2) + 1.0), 1e-14);
}

TEST(Dft, MatchesExplicitSum) {
  const double pi = std::numbers::pi;
  ComplexVector v(4);
  v << Complex(1, 2), Complex(-0.5, 0), Complex(0, 3), Complex(2, -1);
  const ComplexVector c = dft(v);
  for (int k = 0; k < 4; ++k) {
    Complex s = 0;
    for (int l = 0; l < 4; ++l) s += std::polar(1.0, -2 * pi * k * l / 4) * v(l);
    EXPECT_LT(std::abs(c(k) - s), 1e-14);
  }
}

TEST(Dft, RoundTrip) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1, 1);
  RealVector fixed(3);
  fixed << 0.3, 1.1, 0.6;
  EXPECT_LT((idft(dft(fixed)) - fixed.cast<Complex>()).cwiseAbs().maxCoeff(), 1e-15);
  for (int n = 1; n <= 16; ++n) {
    ComplexVector v(n);
    for (int i = 0; i < n; ++i) v(i) = Complex(u(rng), u(rng));
    EXPECT_LE((idft(dft(v)) - v).cwiseAbs().maxCoeff(), 1e-12) << "n = " << n;
  }
}

TEST(Dft, RealInputIsConjugateSymmetric) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0, 2);
  for (int n = 2; n <= 9; ++n) {
    RealVector v(n);
    for (int i = 0; i < n; ++i) v(i) = u(rng);
    const ComplexVector c = dft(v);
    for (int k = 0; k < n; ++k) EXPECT_LT(std::abs(c(k) - std::conj(c(mod(n - k, n)))), 1e-12);
  }
}
