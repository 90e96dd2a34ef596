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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace wtt {

ComplexMatrix identity(int dim) { return ComplexMatrix::Identity(dim, dim); }

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix kron(std::span<const ComplexMatrix> factors) {
  if (factors.empty()) return identity(1);
  ComplexMatrix out = factors.front();
  for (std::size_t k = 1; k < factors.size(); ++k) out = kron(out, factors[k]);
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, std::span<const int> dims,
                            std::span<const int> keep) {
  const int n = static_cast<int>(dims.size());
  if (n == 0) throw std::invalid_argument("partial_trace: empty dims");
  long total = 1;
  for (int d : dims) {
    if (d <= 0) throw std::invalid_argument("partial_trace: non-positive subsystem dimension");
    total *= d;
  }
  if (rho.rows() != total || rho.cols() != total) {
    std::ostringstream msg;
    msg << "partial_trace: matrix is " << rho.rows() << "x" << rho.cols()
        << " but subsystem dimensions multiply to " << total;
    throw std::invalid_argument(msg.str());
  }
  if (keep.empty()) throw std::invalid_argument("partial_trace: keep set is empty");
  std::vector<bool> kept(n, false);
  for (int k : keep) {
    if (k < 0 || k >= n) throw std::invalid_argument("partial_trace: keep index out of range");
    if (kept[k]) throw std::invalid_argument("partial_trace: duplicate keep index");
    kept[k] = true;
  }

  // Row-major strides of the full index.
  std::vector<long> stride(n);
  stride[n - 1] = 1;
  for (int k = n - 2; k >= 0; --k) stride[k] = stride[k + 1] * dims[k + 1];

  std::vector<int> kept_axes;
  std::vector<int> traced_axes;
  for (int k = 0; k < n; ++k) (kept[k] ? kept_axes : traced_axes).push_back(k);

  long dk = 1;
  for (int k : kept_axes) dk *= dims[k];
  long dt = total / dk;

  // Offsets into the full index for every kept multi-index and traced multi-index.
  auto offsets = [&](const std::vector<int>& axes, long count) {
    std::vector<long> off(count, 0);
    for (long idx = 0; idx < count; ++idx) {
      long rem = idx;
      long o = 0;
      for (auto it = axes.rbegin(); it != axes.rend(); ++it) {
        o += (rem % dims[*it]) * stride[*it];
        rem /= dims[*it];
      }
      off[idx] = o;
    }
    return off;
  };
  const std::vector<long> kept_off = offsets(kept_axes, dk);
  const std::vector<long> traced_off = offsets(traced_axes, dt);

  ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
  for (long i = 0; i < dk; ++i) {
    for (long j = 0; j < dk; ++j) {
      Complex acc{0.0, 0.0};
      for (long e = 0; e < dt; ++e) acc += rho(kept_off[i] + traced_off[e], kept_off[j] + traced_off[e]);
      out(i, j) = acc;
    }
  }
  return out;
}

double hermitian_defect(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) return std::numeric_limits<double>::infinity();
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

HermitianSpectrum hermitian_eig(const ComplexMatrix& h) {
  if (h.rows() != h.cols()) throw std::invalid_argument("hermitian_eig: matrix is not square");
  const double defect = hermitian_defect(h);
  if (!(defect <= kHermitianTol)) {
    std::ostringstream msg;
    msg << "hermitian_eig: input is not Hermitian (max |A - A^dagger| = " << defect << ")";
    throw std::invalid_argument(msg.str());
  }
  const ComplexMatrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success) throw std::runtime_error("hermitian_eig: decomposition failed");
  return HermitianSpectrum{solver.eigenvalues(), solver.eigenvectors()};
}

ComplexMatrix unitary_exp(const HermitianSpectrum& spectrum, double t) {
  return spectrum.apply([t](double lambda) { return std::exp(Complex(0.0, -lambda * t)); });
}

ComplexMatrix unitary_exp(const ComplexMatrix& h, double t) { return unitary_exp(hermitian_eig(h), t); }

ComplexMatrix thermal_state(const ComplexMatrix& h, double beta) {
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw std::invalid_argument("thermal_state: beta must be finite and >= 0");
  const HermitianSpectrum s = hermitian_eig(h);
  // Shift by the ground energy so large beta does not overflow.
  const double e0 = s.eigenvalues.minCoeff();
  double z = 0.0;
  for (Eigen::Index k = 0; k < s.eigenvalues.size(); ++k) z += std::exp(-beta * (s.eigenvalues(k) - e0));
  return s.apply([&](double lambda) { return Complex(std::exp(-beta * (lambda - e0)) / z, 0.0); });
}

double trace_distance(const ComplexMatrix& r1, const ComplexMatrix& r2) {
  if (r1.rows() != r2.rows() || r1.cols() != r2.cols() || r1.rows() != r1.cols()) {
    throw std::invalid_argument("trace_distance: dimension mismatch");
  }
  const ComplexMatrix diff = r1 - r2;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(0.5 * (diff + diff.adjoint()), Eigen::EigenvaluesOnly);
  return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

double purity(const ComplexMatrix& rho) { return (rho * rho).trace().real(); }

double min_eigenvalue(const ComplexMatrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(0.5 * (hermitian + hermitian.adjoint()),
                                                      Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

bool is_density_matrix(const ComplexMatrix& rho, double tol) {
  if (rho.rows() != rho.cols() || rho.rows() == 0) return false;
  if (hermitian_defect(rho) > tol) return false;
  if (std::abs(rho.trace() - Complex(1.0, 0.0)) > tol) return false;
  return min_eigenvalue(rho) >= -tol;
}

double commutator_norm(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a * b - b * a).cwiseAbs().maxCoeff();
}

}  // namespace wtt
