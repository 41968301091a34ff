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

#include "qcad/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qcad/error.hpp"

namespace qcad {

namespace {

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b,
                      const char* op) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(op) + ": dimensions " + std::to_string(a.dim()) +
                    " and " + std::to_string(b.dim()) + " differ");
  }
}

constexpr double kHermitianTol = 1e-10;
constexpr double kJacobiTol = 1e-13;
constexpr int kJacobiMaxSweeps = 100;

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

}  // namespace

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::ZeroProbability: return "ZeroProbability";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::IncompleteGrid: return "IncompleteGrid";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<Complex> entries)
    : dim_(dim), data_(std::move(entries)) {
  if (data_.size() != dim_ * dim_) {
    throw Error(ErrorCode::DimensionMismatch,
                "ComplexMatrix: expected " + std::to_string(dim_ * dim_) +
                    " entries, got " + std::to_string(data_.size()));
  }
  if (!all_finite()) {
    throw Error(ErrorCode::InvalidArgument, "ComplexMatrix: non-finite entry");
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> values) {
  ComplexMatrix m(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::basis_op(std::size_t dim, std::size_t row,
                                      std::size_t col) {
  if (row >= dim || col >= dim) {
    throw Error(ErrorCode::OutOfRange, "basis_op: index outside dimension");
  }
  ComplexMatrix m(dim);
  m(row, col) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const Complex> v) {
  ComplexMatrix m(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = v[i] * std::conj(v[j]);
  return m;
}

Complex ComplexMatrix::trace() const {
  Complex t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

bool ComplexMatrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

double ComplexMatrix::hermiticity_defect() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = i; j < dim_; ++j)
      worst = std::max(worst, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
  return worst;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& z : data_) s += std::norm(z);
  return std::sqrt(s);
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  require_same_dim(*this, rhs, "operator+");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  require_same_dim(*this, rhs, "operator-");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
  for (auto& z : data_) z *= s;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "operator*");
  const std::size_t n = a.dim();
  ComplexMatrix c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t na = a.dim(), nb = b.dim();
  ComplexMatrix c(na * nb);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j) {
      const Complex aij = a(i, j);
      for (std::size_t k = 0; k < nb; ++k)
        for (std::size_t l = 0; l < nb; ++l)
          c(i * nb + k, j * nb + l) = aij * b(k, l);
    }
  return c;
}

ComplexMatrix dagger(const ComplexMatrix& a) {
  ComplexMatrix c(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) c(i, j) = std::conj(a(j, i));
  return c;
}

ComplexMatrix sandwich(const ComplexMatrix& k, const ComplexMatrix& rho) {
  return k * rho * dagger(k);
}

ComplexMatrix hermitize(const ComplexMatrix& a) {
  ComplexMatrix c = a + dagger(a);
  c *= 0.5;
  return c;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "max_abs_diff");
  double worst = 0.0;
  for (std::size_t k = 0; k < a.entries().size(); ++k)
    worst = std::max(worst, std::abs(a.entries()[k] - b.entries()[k]));
  return worst;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a) {
  if (!a.is_hermitian(kHermitianTol)) {
    throw Error(ErrorCode::NotHermitian,
                "hermitian_eigenvalues: hermiticity defect " +
                    std::to_string(a.hermiticity_defect()));
  }
  const std::size_t n = a.dim();
  ComplexMatrix m = hermitize(a);

  int sweep = 0;
  while (off_diagonal_norm(m) >= kJacobiTol) {
    if (sweep++ == kJacobiMaxSweeps) {
      throw Error(ErrorCode::NoConvergence,
                  "hermitian_eigenvalues: no convergence after " +
                      std::to_string(kJacobiMaxSweeps) + " sweeps");
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = m(p, q);
        const double r = std::abs(apq);
        if (r == 0.0) continue;
        // J = [[c, s e^{i phi}], [-s e^{-i phi}, c]] on (p, q) zeroes m(p,q)
        // in J^dagger m J.
        const Complex phase = apq / r;
        const double app = m(p, p).real(), aqq = m(q, q).real();
        const double theta = 0.5 * std::atan2(2.0 * r, aqq - app);
        const double c = std::cos(theta), s = std::sin(theta);
        const Complex s_phase = s * phase;
        const Complex s_phase_conj = s * std::conj(phase);
        for (std::size_t k = 0; k < n; ++k) {
          const Complex mkp = m(k, p), mkq = m(k, q);
          m(k, p) = c * mkp - s_phase_conj * mkq;
          m(k, q) = s_phase * mkp + c * mkq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex mpk = m(p, k), mqk = m(q, k);
          m(p, k) = c * mpk - s_phase * mqk;
          m(q, k) = s_phase_conj * mpk + c * mqk;
        }
        m(p, q) = 0.0;
        m(q, p) = 0.0;
        m(p, p) = m(p, p).real();
        m(q, q) = m(q, q).real();
      }
    }
  }

  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = m(i, i).real();
  std::sort(eig.begin(), eig.end());
  return eig;
}

ComplexMatrix partial_transpose(const ComplexMatrix& rho, std::size_t dim_a,
                                std::size_t dim_b) {
  if (rho.dim() != dim_a * dim_b) {
    throw Error(ErrorCode::DimensionMismatch,
                "partial_transpose: matrix dimension " +
                    std::to_string(rho.dim()) + " != " +
                    std::to_string(dim_a) + "*" + std::to_string(dim_b));
  }
  ComplexMatrix out(rho.dim());
  for (std::size_t i = 0; i < dim_a; ++i)
    for (std::size_t j = 0; j < dim_b; ++j)
      for (std::size_t k = 0; k < dim_a; ++k)
        for (std::size_t l = 0; l < dim_b; ++l)
          out(i * dim_b + l, k * dim_b + j) = rho(i * dim_b + j, k * dim_b + l);
  return out;
}

double trace_norm(const ComplexMatrix& a) {
  double sum = 0.0;
  for (double lambda : hermitian_eigenvalues(a))
    if (std::abs(lambda) >= kEigenClamp) sum += std::abs(lambda);
  return sum;
}

double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  double sum = 0.0;
  for (double lambda : hermitian_eigenvalues(a - b)) sum += std::abs(lambda);
  return 0.5 * sum;
}

}  // namespace qcad
