// Copyright 2026 The qcad Authors
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

// Dense complex matrix kernel. Sized for the 3x3 single-qutrit and 9x9
// two-qutrit operators but generic over dimension.

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace qcad {

using Complex = std::complex<double>;

/// Square complex matrix stored row-major.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t dim);
  /// Takes ownership of `entries` (length dim*dim, finite).
  ComplexMatrix(std::size_t dim, std::vector<Complex> entries);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::span<const double> values);
  static ComplexMatrix diagonal(std::span<const Complex> values);
  /// |row><col| in a space of dimension `dim`.
  static ComplexMatrix basis_op(std::size_t dim, std::size_t row,
                                std::size_t col);
  /// |v><v| for a column vector v.
  static ComplexMatrix outer(std::span<const Complex> v);

  std::size_t dim() const noexcept { return dim_; }
  std::span<const Complex> entries() const noexcept { return data_; }

  Complex& operator()(std::size_t row, std::size_t col) {
    return data_[row * dim_ + col];
  }
  const Complex& operator()(std::size_t row, std::size_t col) const {
    return data_[row * dim_ + col];
  }

  Complex trace() const;
  bool all_finite() const;
  /// max |a[i,j] - conj(a[j,i])|
  double hermiticity_defect() const;
  bool is_hermitian(double tol = 1e-10) const {
    return hermiticity_defect() <= tol;
  }
  double frobenius_norm() const;

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(Complex s);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(ComplexMatrix a, Complex s);
ComplexMatrix operator*(Complex s, ComplexMatrix a);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix dagger(const ComplexMatrix& a);

/// k rho k^dagger
ComplexMatrix sandwich(const ComplexMatrix& k, const ComplexMatrix& rho);

/// (a + a^dagger) / 2
ComplexMatrix hermitize(const ComplexMatrix& a);

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// Eigenvalues of a Hermitian matrix in ascending order, computed with
/// cyclic complex Jacobi rotations. Throws NotHermitian when the input
/// deviates from Hermitian by more than 1e-10 and NoConvergence when the
/// off-diagonal mass is still above 1e-13 after 100 sweeps.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a);

/// Transposes the second factor of a dimA x dimB bipartite operator.
/// Composite index (i,j) = i*dimB + j.
ComplexMatrix partial_transpose(const ComplexMatrix& rho, std::size_t dim_a,
                                std::size_t dim_b);

/// Sum of |lambda| over the spectrum of a Hermitian matrix. Eigenvalues with
/// |lambda| < 1e-12 count as zero.
double trace_norm(const ComplexMatrix& a);

/// Half the trace norm of (a - b).
double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b);

inline constexpr double kEigenClamp = 1e-12;

}  // namespace qcad
