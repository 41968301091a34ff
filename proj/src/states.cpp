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

#include "qcad/states.hpp"

#include <array>
#include <cmath>
#include <string>

#include "qcad/error.hpp"

namespace qcad {

namespace {
constexpr double kNormTol = 1e-12;
constexpr double kDensityTol = 1e-10;
}  // namespace

StateAmplitudes StateAmplitudes::balanced() {
  const double a = 1.0 / std::sqrt(3.0);
  return {a, a, a};
}

double StateAmplitudes::norm_squared() const {
  return alpha * alpha + std::norm(beta) + std::norm(gamma);
}

std::string_view to_string(StateClass c) noexcept {
  return c == StateClass::Class1 ? "class1" : "class2";
}

ComplexMatrix make_state(StateClass cls, const StateAmplitudes& amps) {
  if (!(amps.alpha >= 0.0)) {
    throw Error(ErrorCode::NotNormalized,
                "make_state: alpha must be real and non-negative");
  }
  const double n2 = amps.norm_squared();
  if (!(std::abs(n2 - 1.0) <= kNormTol)) {
    throw Error(ErrorCode::NotNormalized,
                "make_state: amplitudes have squared norm " + std::to_string(n2));
  }

  std::array<Complex, kPairDim> psi{};
  if (cls == StateClass::Class1) {
    psi[ket_index(0, 0)] = amps.alpha;
    psi[ket_index(1, 1)] = amps.beta;
    psi[ket_index(2, 2)] = amps.gamma;
  } else {
    psi[ket_index(0, 2)] = amps.alpha;
    psi[ket_index(2, 0)] = amps.beta;
    psi[ket_index(1, 1)] = amps.gamma;
  }
  return ComplexMatrix::outer(psi);
}

DensityReport validate_density(const ComplexMatrix& rho) {
  DensityReport r;
  r.hermitian = rho.is_hermitian(kDensityTol);
  const Complex tr = rho.trace();
  r.unit_trace = std::abs(tr - 1.0) <= kDensityTol;
  if (r.hermitian) {
    try {
      r.positive = hermitian_eigenvalues(rho).front() > -kDensityTol;
    } catch (const Error&) {
      r.positive = false;
    }
  }
  return r;
}

double negativity(const ComplexMatrix& rho) {
  if (rho.dim() != kPairDim) {
    throw Error(ErrorCode::DimensionMismatch,
                "negativity: expected a 9x9 two-qutrit state");
  }
  const double n =
      0.5 * (trace_norm(partial_transpose(rho, kQutritDim, kQutritDim)) - 1.0);
  // Trace-norm rounding can leave a tiny negative residue for separable input.
  return n < 0.0 ? 0.0 : n;
}

}  // namespace qcad
