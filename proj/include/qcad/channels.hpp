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

// Amplitude-damping channels for V-type qutrits: single-qutrit AD, the
// uncorrelated two-qutrit product, the fully correlated channel in which only
// |11> -> |00> and |22> -> |00> occur, and their convex mixture (CAD).
// A Lindblad RK4 integrator reproduces the same dynamics from the generators.

#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "qcad/linalg.hpp"

namespace qcad {

/// Damping magnitudes of the two excited levels and the correlation weight.
struct ChannelParams {
  double d1 = 0.0;
  double d2 = 0.0;
  double mu = 0.0;

  /// Throws OutOfRange unless all three lie in [0, 1].
  void validate() const;
};

struct RateParams {
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  double t = 0.0;
};

struct Damping {
  double d1 = 0.0;
  double d2 = 0.0;
};

/// d = 1 - exp(-gamma t) per level.
Damping damping_from_rates(const RateParams& r);

/// Ordered Kraus operators of uniform dimension.
class KrausSet {
 public:
  explicit KrausSet(std::vector<ComplexMatrix> ops);

  const std::vector<ComplexMatrix>& operators() const noexcept { return ops_; }
  std::size_t size() const noexcept { return ops_.size(); }
  std::size_t dim() const noexcept { return ops_.front().dim(); }

  /// max |sum_i K_i^dagger K_i - I|
  double completeness_defect() const;

  /// sum_i K_i rho K_i^dagger
  ComplexMatrix apply(const ComplexMatrix& rho) const;

 private:
  std::vector<ComplexMatrix> ops_;
};

/// {E0, E1, E2}: E0 = diag(1, sqrt(1-d1), sqrt(1-d2)), E1 = sqrt(d1)|0><1|,
/// E2 = sqrt(d2)|0><2|.
KrausSet ad_kraus_single(double d1, double d2);

/// E_i (x) E_j for i, j in {0,1,2}, ordered row-major in (i, j).
KrausSet ad_kraus_pair(double d1, double d2);

/// {A00, A11, A22} of the fully correlated channel.
KrausSet fcad_kraus(double d1, double d2);

/// The CAD map held as its two Kraus branches plus the mixing weight.
/// apply(rho) = (1 - mu) * uncorrelated(rho) + mu * correlated(rho).
class CadChannel {
 public:
  explicit CadChannel(const ChannelParams& params);

  const ChannelParams& params() const noexcept { return params_; }
  const KrausSet& uncorrelated() const noexcept { return uncorrelated_; }
  const KrausSet& correlated() const noexcept { return correlated_; }

  ComplexMatrix apply(const ComplexMatrix& rho) const;

  /// No-decay Kraus operators E0 (x) E0 and A00.
  const ComplexMatrix& no_decay_uncorrelated() const {
    return uncorrelated_.operators().front();
  }
  const ComplexMatrix& no_decay_correlated() const {
    return correlated_.operators().front();
  }

 private:
  ChannelParams params_;
  KrausSet uncorrelated_;
  KrausSet correlated_;
};

ComplexMatrix cad_apply(const ComplexMatrix& rho, const ChannelParams& params);

/// Lindblad generator sum_k rate_k (L_k rho L_k^dagger - {L_k^dagger L_k, rho}/2).
class LindbladGenerator {
 public:
  void add_jump(double rate, ComplexMatrix jump);
  ComplexMatrix operator()(const ComplexMatrix& rho) const;

 private:
  struct Jump {
    double rate;
    ComplexMatrix op;
    ComplexMatrix op_dagger;
    ComplexMatrix number;  // op^dagger op
  };
  std::vector<Jump> jumps_;
};

/// Spontaneous decay of a V-type qutrit: jumps sigma_01, sigma_02.
LindbladGenerator single_qutrit_generator(double gamma1, double gamma2);

/// Synchronized decay of two qutrits: jumps sigma_01 (x) sigma_01 and
/// sigma_02 (x) sigma_02.
LindbladGenerator fcad_generator(double gamma1, double gamma2);

ComplexMatrix lindblad_rhs_single(const ComplexMatrix& rho, double gamma1,
                                  double gamma2);
ComplexMatrix lindblad_rhs_fcad(const ComplexMatrix& rho, double gamma1,
                                double gamma2);

using Rhs = std::function<ComplexMatrix(const ComplexMatrix&)>;

/// Classical fixed-step RK4; the state is re-Hermitized after every step.
/// Throws InvalidArgument for steps < 1.
ComplexMatrix integrate_rk4(const Rhs& rhs, const ComplexMatrix& rho0,
                            double t_final, int steps);

inline constexpr int kDefaultRk4StepsPerUnit = 10000;

}  // namespace qcad
