// Copyright 2026 The wtt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "wtt/linalg.hpp"

#include <array>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

namespace wtt {
namespace {

ComplexMatrix random_matrix(int rows, int cols, std::mt19937& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  ComplexMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = Complex(n(rng), n(rng));
  }
  return m;
}

ComplexMatrix random_density(int dim, std::mt19937& rng) {
  const ComplexMatrix a = random_matrix(dim, dim, rng);
  ComplexMatrix rho = a * a.adjoint();
  return rho / rho.trace();
}

ComplexMatrix random_hermitian(int dim, std::mt19937& rng) {
  const ComplexMatrix a = random_matrix(dim, dim, rng);
  return 0.5 * (a + a.adjoint());
}

TEST(Kron, MatchesIndexFormula) {
  std::mt19937 rng(1);
  const ComplexMatrix a = random_matrix(2, 3, rng);
  const ComplexMatrix b = random_matrix(3, 2, rng);
  const ComplexMatrix k = kron(a, b);
  ASSERT_EQ(k.rows(), 6);
  ASSERT_EQ(k.cols(), 6);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j)
      for (int p = 0; p < 3; ++p)
        for (int q = 0; q < 2; ++q) EXPECT_EQ(k(i * 3 + p, j * 2 + q), a(i, j) * b(p, q));
}

TEST(Kron, SpanIsLeftAssociative) {
  std::mt19937 rng(2);
  const std::array<ComplexMatrix, 3> f{random_matrix(2, 2, rng), random_matrix(3, 3, rng), random_matrix(2, 2, rng)};
  EXPECT_LT((kron(f) - kron(kron(f[0], f[1]), f[2])).norm(), 1e-13);
}

TEST(PartialTrace, ProductStateFactorizes) {
  std::mt19937 rng(3);
  const ComplexMatrix a = random_density(2, rng);
  const ComplexMatrix b = random_density(3, rng);
  const ComplexMatrix c = random_density(2, rng);
  const ComplexMatrix rho = kron(kron(a, b), c);
  const std::array<int, 3> dims{2, 3, 2};
  const std::array<int, 2> outer{0, 2};
  const std::array<int, 1> middle{1};
  EXPECT_LT((partial_trace(rho, dims, outer) - kron(a, c)).norm(), 1e-13);
  EXPECT_LT((partial_trace(rho, dims, middle) - b).norm(), 1e-13);
}

TEST(PartialTrace, ComposesForEntangledStates) {
  std::mt19937 rng(4);
  const ComplexMatrix rho = random_density(12, rng);
  const std::array<int, 3> dims{2, 3, 2};
  const std::array<int, 2> keep02{0, 2};
  const std::array<int, 1> keep0{0};
  const std::array<int, 2> dims02{2, 2};
  const ComplexMatrix two_step = partial_trace(partial_trace(rho, dims, keep02), dims02, keep0);
  EXPECT_LT((two_step - partial_trace(rho, dims, keep0)).norm(), 1e-13);

  // Direct sum over the traced indices.
  ComplexMatrix oracle = ComplexMatrix::Zero(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int m = 0; m < 3; ++m)
        for (int r = 0; r < 2; ++r) oracle(i, j) += rho(i * 6 + m * 2 + r, j * 6 + m * 2 + r);
  EXPECT_LT((oracle - partial_trace(rho, dims, keep0)).norm(), 1e-13);
}

TEST(HermitianEig, ReconstructsAndRejectsNonHermitian) {
  std::mt19937 rng(5);
  const ComplexMatrix h = random_hermitian(6, rng);
  const HermitianSpectrum s = hermitian_eig(h);
  EXPECT_LT((s.apply([](double x) { return Complex(x); }) - h).norm(), 1e-12);
  for (int k = 1; k < s.dim(); ++k) EXPECT_LE(s.eigenvalues(k - 1), s.eigenvalues(k));
  ComplexMatrix bad = h;
  bad(0, 1) += 1.0;
  EXPECT_THROW(hermitian_eig(bad), std::invalid_argument);
}

TEST(UnitaryExp, MatchesTaylorSeries) {
  std::mt19937 rng(6);
  const ComplexMatrix h = random_hermitian(5, rng) * 0.3;
  const double t = 0.7;
  ComplexMatrix term = identity(5);
  ComplexMatrix sum = term;
  for (int k = 1; k < 40; ++k) {
    term = term * (Complex(0.0, -t) * h) / static_cast<double>(k);
    sum += term;
  }
  EXPECT_LT((unitary_exp(h, t) - sum).norm(), 1e-12);
  const ComplexMatrix u = unitary_exp(h, t);
  EXPECT_LT((u * u.adjoint() - identity(5)).norm(), 1e-12);
}

TEST(ThermalState, BoltzmannPopulations) {
  ComplexMatrix h = ComplexMatrix::Zero(3, 3);
  h(0, 0) = -3.0;
  h(2, 2) = 3.0;
  const double beta = 1.0 / 4.0;
  const ComplexMatrix rho = thermal_state(h, beta);
  const double z = std::exp(0.75) + 1.0 + std::exp(-0.75);
  EXPECT_NEAR(rho(0, 0).real(), std::exp(0.75) / z, 1e-14);
  EXPECT_NEAR(rho(1, 1).real(), 1.0 / z, 1e-14);
  EXPECT_NEAR(rho(2, 2).real(), std::exp(-0.75) / z, 1e-14);
  EXPECT_LT(std::abs(rho(0, 1)), 1e-15);
}

TEST(ThermalState, LargeGapDoesNotOverflow) {
  ComplexMatrix h = ComplexMatrix::Zero(2, 2);
  h(0, 0) = -5000.0;
  h(1, 1) = 5000.0;
  const ComplexMatrix rho = thermal_state(h, 1.0);
  EXPECT_NEAR(rho(0, 0).real(), 1.0, 1e-14);
  EXPECT_TRUE(is_density_matrix(rho));
}

TEST(TraceDistance, PureStates) {
  ComplexMatrix zero = ComplexMatrix::Zero(2, 2);
  zero(0, 0) = 1.0;
  ComplexMatrix one = ComplexMatrix::Zero(2, 2);
  one(1, 1) = 1.0;
  const ComplexMatrix plus = ComplexMatrix::Constant(2, 2, 0.5);
  EXPECT_NEAR(trace_distance(zero, one), 1.0, 1e-14);
  // sqrt(1 - |<0|+>|^2) for pure states.
  EXPECT_NEAR(trace_distance(zero, plus), 1.0 / std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(trace_distance(plus, plus), 0.0, 1e-14);
}

TEST(DensityChecks, PurityPositivityAndCommutator) {
  std::mt19937 rng(7);
  const ComplexMatrix rho = random_density(4, rng);
  EXPECT_TRUE(is_density_matrix(rho));
  EXPECT_NEAR(purity(rho), (rho * rho).trace().real(), 1e-14);
  EXPECT_NEAR(purity(identity(4) / 4.0), 0.25, 1e-15);
  ComplexMatrix neg = identity(2);
  neg(1, 1) = -0.5;
  neg /= neg.trace();
  EXPECT_FALSE(is_density_matrix(neg));
  EXPECT_NEAR(min_eigenvalue(neg), -1.0, 1e-14);
  EXPECT_NEAR(commutator_norm(rho, identity(4)), 0.0, 1e-15);
  EXPECT_GT(commutator_norm(rho, random_hermitian(4, rng)), 1e-3);
  EXPECT_NEAR(hermitian_defect(rho), 0.0, 1e-15);
}

}  // namespace
}  // namespace wtt
