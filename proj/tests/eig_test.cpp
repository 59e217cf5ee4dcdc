// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <random>

#include "nhlattice/eig.hpp"
#include "nhlattice/errors.hpp"
#include "nhlattice/model.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace nhlattice;
using testing_support::from_eigen;
using testing_support::to_eigen;

namespace {

ComplexMatrix random_matrix(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g;
  ComplexMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = Complex(g(rng), g(rng));
  return m;
}

double spread(const ComplexMatrix& m) { return m.max_abs() / m.min_nonzero_abs(); }

}  // namespace

TEST(Eigensystem, PauliX) {
  const EigenSystem es = eigensystem(ComplexMatrix(2, {0.0, 1.0, 1.0, 0.0}));
  ASSERT_EQ(es.size(), 2u);
  EXPECT_NEAR(std::abs(es.eigenvalues[0] - Complex(-1.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(es.eigenvalues[1] - Complex(1.0)), 0.0, 1e-15);
  const double r = 1.0 / std::sqrt(2.0);
  // Unit norm, largest component real positive.
  const ComplexVector v0 = es.right(0);
  const ComplexVector v1 = es.right(1);
  EXPECT_NEAR(std::abs(v0[0] - r) + std::abs(v0[1] + r), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(v1[0] - r) + std::abs(v1[1] - r), 0.0, 1e-15);
  EXPECT_NEAR(es.cond_v, 1.0, 1e-14);
}

TEST(Eigensystem, JordanBlockIsDefective) {
  const EigenSystem es = eigensystem(ComplexMatrix(2, {0.0, 1.0, 0.0, 0.0}));
  EXPECT_EQ(es.eigenvalues[0], Complex(0.0));
  EXPECT_EQ(es.eigenvalues[1], Complex(0.0));
  EXPECT_GE(es.cond_v, kDefectiveCondition);
  EXPECT_TRUE(es.defective());
}

TEST(Eigensystem, RandomMatricesAgainstEigen) {
  std::mt19937_64 rng(21);
  for (std::size_t n : {1u, 2u, 3u, 5u, 8u, 17u, 40u}) {
    for (int d = 0; d < 5; ++d) {
      const ComplexMatrix m = random_matrix(rng, n);
      const EigenSystem es = eigensystem(m);
      const auto expected = oracle::eigenvalues(to_eigen(m));
      EXPECT_LT(multiset_distance(es.eigenvalues, expected), 1e-10 * es.scale) << "n=" << n;
      EXPECT_LT(es.max_residual, 1e-13);
      EXPECT_LT(es.max_left_residual, 1e-13);
      for (std::size_t k = 0; k + 1 < n; ++k) {
        EXPECT_FALSE(std::real(es.eigenvalues[k + 1]) < std::real(es.eigenvalues[k]));
      }
    }
  }
}

TEST(Eigensystem, BiorthogonalityOfSeparatedModes) {
  std::mt19937_64 rng(22);
  const ComplexMatrix m = random_matrix(rng, 12);
  const EigenSystem es = eigensystem(m);
  ASSERT_GT(min_pairwise_gap(es.eigenvalues), 1e-6 * m.frobenius_norm());
  for (std::size_t j = 0; j < es.size(); ++j) {
    for (std::size_t k = 0; k < es.size(); ++k) {
      const double overlap = std::abs(bilinear(es.left(j), es.right(k)));
      if (j != k) EXPECT_LT(overlap, 1e-8);
      else EXPECT_GT(overlap, 1e-6);
    }
  }
}

TEST(Eigensystem, HatanoNelsonRingAtUnitRho) {
  const ModelParams p = BoundaryFamily{1.0, 0.0, 4.0, 1.0}.expand(10);
  const ComplexVector ev = eigenvalues(build_hamiltonian(p));
  std::vector<Complex> expected;
  for (int m = 0; m < 10; ++m) expected.emplace_back(2.0 * std::cos(2 * oracle::kPi * m / 10));
  EXPECT_LT(multiset_distance(ev, expected), 1e-8);
  for (const Complex& e : ev) EXPECT_LT(std::abs(e.imag()), 1e-10);
}

TEST(Eigensystem, HermitianSpecializations) {
  // Purely imaginary q leaves the transformed matrix Hermitian for unit |alpha|.
  for (double phi : {0.0, 1.0, 2.5}) {
    ModelParams p = BoundaryFamily{0.0, phi, Complex(0.0, 0.8), 1.0}.expand(9);
    const ComplexMatrix ht = build_transformed(p);
    for (const Complex& e : eigenvalues(ht)) EXPECT_LT(std::abs(e.imag()), 1e-10 * ht.frobenius_norm());
  }
  const ComplexMatrix ht = build_transformed(BoundaryFamily{1.0, 0.4, 3.0, 1.0}.expand(10));
  for (const Complex& e : eigenvalues(ht)) EXPECT_LT(std::abs(e.imag()), 1e-10 * ht.frobenius_norm());
}

TEST(Eigensystem, NonFiniteInputFailsLoudly) {
  ComplexMatrix m = ComplexMatrix::identity(3);
  m(1, 2) = std::nan("");
  EXPECT_THROW(eigensystem(m), NumericalError);
}

TEST(Eigensystem, DeterministicAcrossCalls) {
  std::mt19937_64 rng(23);
  const ComplexMatrix m = random_matrix(rng, 20);
  const EigenSystem a = eigensystem(m);
  const EigenSystem b = eigensystem(m);
  EXPECT_EQ(a.eigenvalues, b.eigenvalues);
  EXPECT_EQ(a.right_vectors, b.right_vectors);
  EXPECT_EQ(a.left_vectors, b.left_vectors);
}

TEST(Eigensystem, BalancingDoesNotChangeWellConditionedSpectra) {
  std::mt19937_64 rng(24);
  for (int d = 0; d < 10; ++d) {
    const ComplexMatrix m = random_matrix(rng, 10);
    const EigenSystem es = eigensystem(m);
    ASSERT_LT(es.cond_v, 1e6);
    const ComplexVector raw = eigenvalues(m, {.balance = false, .label = {}});
    EXPECT_LT(multiset_distance(es.eigenvalues, raw), 1e-8);
  }
}

TEST(Eigensystem, GradedCornersKeepSmallResiduals) {
  for (double rho : {0.0, 0.5, 1.5, 2.0}) {
    const ModelParams p = BoundaryFamily{rho, 0.3, 3.0, 1.0}.expand(20);
    for (Frame f : {Frame::bare, Frame::transformed}) {
      const EigenSystem es = eigensystem(build_matrix(p, f));
      EXPECT_LT(es.max_residual, 1e-12) << "rho=" << rho;
      EXPECT_LT(es.max_left_residual, 1e-12) << "rho=" << rho;
    }
  }
}

TEST(Balance, HermitianTridiagonalUnchangedUpToRatioTwo) {
  ComplexMatrix m(6);
  for (std::size_t i = 0; i + 1 < 6; ++i) m(i, i + 1) = m(i + 1, i) = 1.0;
  const BalancedMatrix b = balance(m);
  for (double s : b.scaling) {
    EXPECT_EQ(std::exp2(std::round(std::log2(s))), s);  // power of two
  }
  const double ratio = *std::max_element(b.scaling.begin(), b.scaling.end()) /
                       *std::min_element(b.scaling.begin(), b.scaling.end());
  EXPECT_LE(ratio, 2.0);
}

TEST(Balance, ShrinksGradedCorners) {
  const ModelParams p = BoundaryFamily{2.0, 0.0, 4.0, 1.0}.expand(10);
  const ComplexMatrix ht = build_transformed(p);
  const BalancedMatrix b = balance(ht);
  EXPECT_GE(spread(ht) / spread(b.matrix), 1e8);
  // B = D^{-1} M D.
  for (std::size_t i = 0; i < 10; ++i)
    for (std::size_t j = 0; j < 10; ++j)
      EXPECT_EQ(b.matrix(i, j), ht(i, j) * (b.scaling[j] / b.scaling[i]));
}

TEST(Balance, UndoesDiagonalSimilarity) {
  std::mt19937_64 rng(25);
  for (int draw = 0; draw < 10; ++draw) {
    const ComplexMatrix a = random_matrix(rng, 6);
    // D^{-1} A D with D = diag(1, 1e10, ..., 1e10).
    std::vector<double> d(6, 1e10);
    d[0] = 1.0;
    ComplexMatrix scaled = a;
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = 0; j < 6; ++j) scaled(i, j) *= d[j] / d[i];
    const ComplexMatrix b = balance(scaled).matrix;
    EXPECT_LE(spread(b), 4.0 * spread(a));
  }
}

TEST(SingularValues, AgainstEigen) {
  std::mt19937_64 rng(26);
  for (std::size_t n : {1u, 3u, 9u, 25u}) {
    const ComplexMatrix m = random_matrix(rng, n);
    const auto sv = singular_values(m);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(m));
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_NEAR(sv[i], svd.singularValues()(static_cast<Eigen::Index>(i)), 1e-12 * sv[0]);
    }
  }
  EXPECT_EQ(condition_number(ComplexMatrix(2, {1.0, 1.0, 1.0, 1.0})),
            std::numeric_limits<double>::infinity());
}

TEST(MultisetDistance, Examples) {
  const std::vector<Complex> a{1.0, Complex(0, 1)};
  const std::vector<Complex> b{Complex(0, 1), 1.0};
  EXPECT_EQ(multiset_distance(a, b), 0.0);
  const double eps = 1e-7;
  EXPECT_DOUBLE_EQ(multiset_distance(std::vector<Complex>{0.0, 0.0}, std::vector<Complex>{eps, -eps}),
                   eps);
  EXPECT_THROW(multiset_distance(a, std::vector<Complex>{1.0}), ValidationError);
  EXPECT_EQ(multiset_distance(std::vector<Complex>{}, std::vector<Complex>{}), 0.0);
}

TEST(MultisetDistance, AgainstPermutationOracle) {
  std::mt19937_64 rng(27);
  std::normal_distribution<double> g;
  for (int d = 0; d < 200; ++d) {
    const std::size_t n = 1 + d % 7;
    std::vector<Complex> a(n);
    std::vector<Complex> b(n);
    for (auto& z : a) z = Complex(g(rng), g(rng));
    for (auto& z : b) z = Complex(g(rng), g(rng));
    EXPECT_DOUBLE_EQ(multiset_distance(a, b), oracle::matching_distance(a, b));
  }
}

TEST(ResolveDegenerate, RecoversMomentumModes) {
  const ModelParams p = BoundaryFamily{1.0, 0.0, 2.0, 1.0}.expand(8);
  const ComplexMatrix h = build_hamiltonian(p);
  const EigenSystem es = resolve_degenerate(h, eigensystem(h), twist_generator(p, Frame::bare));
  EXPECT_LT(es.max_residual, 1e-13);
  // Every resolved right mode is a single plane wave under the e^{-qn/2}
  // envelope, so |v_n| e^{qn/2} is flat.
  for (std::size_t k = 0; k < es.size(); ++k) {
    const ComplexVector v = es.right(k);
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (std::size_t n = 0; n < v.size(); ++n) {
      const double flat = std::abs(v[n]) * std::exp(1.0 * double(n + 1));
      lo = std::min(lo, flat);
      hi = std::max(hi, flat);
    }
    EXPECT_LT(hi / lo - 1.0, 1e-8) << "mode " << k;
  }
}

TEST(ResolveDegenerate, LeavesDefectiveClustersAlone) {
  const ComplexMatrix jordan(2, {0.0, 1.0, 0.0, 0.0});
  const EigenSystem es = eigensystem(jordan);
  const EigenSystem out = resolve_degenerate(jordan, es, ComplexMatrix(2, {1.0, 0.0, 0.0, -1.0}));
  EXPECT_EQ(out.right_vectors, es.right_vectors);
}
