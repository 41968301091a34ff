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

// Shared generators and oracles for the test binaries.

#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "qcad/error.hpp"
#include "qcad/linalg.hpp"
#include "qcad/states.hpp"

#define CHECK_THROWS_CODE(expr, ecode)                       \
  do {                                                       \
    bool thrown_ = false;                                    \
    try {                                                    \
      (void)(expr);                                          \
    } catch (const qcad::Error& e_) {                        \
      thrown_ = true;                                        \
      CHECK(e_.code() == (ecode));                           \
    }                                                        \
    CHECK_MESSAGE(thrown_, "expected qcad::Error: " #expr);  \
  } while (0)

namespace qcad::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double unit() { return std::uniform_real_distribution<double>(0.0, 1.0)(rng_); }
  double normal() { return std::normal_distribution<double>()(rng_); }
  Complex cnormal() { return {normal(), normal()}; }

  ComplexMatrix matrix(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) m(i, j) = cnormal();
    return m;
  }

  ComplexMatrix hermitian(std::size_t dim) { return hermitize(matrix(dim)); }

  ComplexMatrix density(std::size_t dim) {
    const ComplexMatrix g = matrix(dim);
    ComplexMatrix rho = g * dagger(g);
    rho *= 1.0 / rho.trace().real();
    return hermitize(rho);
  }

  // Product of random complex Givens rotations.
  ComplexMatrix unitary(std::size_t dim) {
    ComplexMatrix u = ComplexMatrix::identity(dim);
    for (int k = 0; k < 4 * static_cast<int>(dim * dim); ++k) {
      const std::size_t p = static_cast<std::size_t>(unit() * dim) % dim;
      std::size_t q = static_cast<std::size_t>(unit() * dim) % dim;
      if (p == q) q = (q + 1) % dim;
      const double theta = 2.0 * M_PI * unit();
      const double phi = 2.0 * M_PI * unit();
      ComplexMatrix g = ComplexMatrix::identity(dim);
      g(p, p) = std::cos(theta);
      g(q, q) = std::cos(theta);
      g(p, q) = std::sin(theta) * std::polar(1.0, phi);
      g(q, p) = -std::sin(theta) * std::polar(1.0, -phi);
      u = g * u;
    }
    return u;
  }

  StateAmplitudes amplitudes() {
    StateAmplitudes a{std::abs(normal()), cnormal(), cnormal()};
    const double s = std::sqrt(a.norm_squared());
    a.alpha /= s;
    a.beta /= s;
    a.gamma /= s;
    return a;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline ComplexMatrix sigma(std::size_t i, std::size_t j, std::size_t dim = 3) {
  return ComplexMatrix::basis_op(dim, i, j);
}

inline ComplexMatrix ket_projector(std::size_t i, std::size_t j) {
  const std::size_t k = ket_index(i, j);
  return ComplexMatrix::basis_op(kPairDim, k, k);
}

inline double sum_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

}  // namespace qcad::testing
