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

#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace wtt {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

/// Tolerance on max |A - A^dagger| below which a matrix is treated as Hermitian.
inline constexpr double kHermitianTol = 1e-10;

/// Eigen-decomposition of a Hermitian matrix. Eigenvalues ascend; column k of
/// `eigenvectors` belongs to eigenvalue k.
struct HermitianSpectrum {
  RealVector eigenvalues;
  ComplexMatrix eigenvectors;

  int dim() const { return static_cast<int>(eigenvalues.size()); }
  /// V f(diag(lambda)) V^dagger for a scalar function applied to the eigenvalues.
  template <typename F>
  ComplexMatrix apply(F&& f) const {
    Eigen::VectorXcd d(eigenvalues.size());
    for (Eigen::Index k = 0; k < eigenvalues.size(); ++k) d(k) = f(eigenvalues(k));
    return eigenvectors * d.asDiagonal() * eigenvectors.adjoint();
  }
};

ComplexMatrix identity(int dim);

/// Kronecker product; (ra*rb) x (ca*cb).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix kron(std::span<const ComplexMatrix> factors);

/// Reduced matrix over the subsystems in `keep` (original order preserved).
/// Throws std::invalid_argument on dimension mismatch or an invalid keep set.
ComplexMatrix partial_trace(const ComplexMatrix& rho, std::span<const int> dims,
                            std::span<const int> keep);

/// Max absolute element of A - A^dagger.
double hermitian_defect(const ComplexMatrix& a);

/// Throws std::invalid_argument when the input is not Hermitian within
/// kHermitianTol. The decomposition runs on (A + A^dagger)/2.
HermitianSpectrum hermitian_eig(const ComplexMatrix& h);

/// exp(-i h t) from a precomputed spectrum.
ComplexMatrix unitary_exp(const HermitianSpectrum& spectrum, double t);
ComplexMatrix unitary_exp(const ComplexMatrix& h, double t);

/// exp(-beta h) / Tr exp(-beta h). Requires beta >= 0 and finite.
ComplexMatrix thermal_state(const ComplexMatrix& h, double beta);

/// 1/2 Tr|r1 - r2|.
double trace_distance(const ComplexMatrix& r1, const ComplexMatrix& r2);

/// Hermitian, unit trace and eigenvalues >= -tol, all within `tol`.
bool is_density_matrix(const ComplexMatrix& rho, double tol = kHermitianTol);

double purity(const ComplexMatrix& rho);
double min_eigenvalue(const ComplexMatrix& hermitian);

/// Max absolute element of [a, b].
double commutator_norm(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace wtt
