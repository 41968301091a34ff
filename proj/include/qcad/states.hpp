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

// Two-qutrit initial states and entanglement measure.
//
// Basis ordering: |ij> <-> index 3*i + j.
//   index: 0    1    2    3    4    5    6    7    8
//   ket:   |00> |01> |02> |10> |11> |12> |20> |21> |22>

#pragma once

#include <string_view>

#include "qcad/linalg.hpp"

namespace qcad {

inline constexpr std::size_t kQutritDim = 3;
inline constexpr std::size_t kPairDim = 9;

inline constexpr std::size_t ket_index(std::size_t i, std::size_t j) {
  return kQutritDim * i + j;
}

/// alpha real and non-negative; beta and gamma complex.
struct StateAmplitudes {
  double alpha = 0.0;
  Complex beta;
  Complex gamma;

  /// alpha = beta = gamma = 1/sqrt(3)
  static StateAmplitudes balanced();
  double norm_squared() const;
};

enum class StateClass {
  /// alpha|00> + beta|11> + gamma|22>
  Class1,
  /// alpha|02> + beta|20> + gamma|11>
  Class2,
};

std::string_view to_string(StateClass c) noexcept;

/// Throws NotNormalized when |alpha^2 + |beta|^2 + |gamma|^2 - 1| > 1e-12 or
/// alpha < 0.
ComplexMatrix make_state(StateClass cls, const StateAmplitudes& amps);

struct DensityReport {
  bool hermitian = false;
  bool unit_trace = false;
  bool positive = false;

  bool ok() const { return hermitian && unit_trace && positive; }
};

/// Hermiticity (1e-10), unit trace (1e-10) and min eigenvalue > -1e-10.
DensityReport validate_density(const ComplexMatrix& rho);

/// (||rho^{T_B}||_1 - 1) / 2 for a two-qutrit density matrix.
double negativity(const ComplexMatrix& rho);

}  // namespace qcad
