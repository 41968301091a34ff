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

// Entanglement protection against CAD noise.
//
// WM+QMR: local weak measurement on both qutrits, the CAD channel, then a
// local measurement reversal. EAM+QMR: post-select the no-click branches of
// the channel (E0(x)E0 and A00), then the local reversal. Both are
// probabilistic; the success probability is the trace of the unnormalized
// conditional state.

#pragma once

#include "qcad/channels.hpp"
#include "qcad/linalg.hpp"

namespace qcad {

/// WM strengths (p, q) and reversal strengths (p_r, q_r), all in [0, 1].
struct ProtectionParams {
  double p = 0.0;
  double q = 0.0;
  double p_r = 0.0;
  double q_r = 0.0;

  void validate() const;
};

struct ReversalStrengths {
  double p_r = 0.0;
  double q_r = 0.0;
};

struct ProtocolOutcome {
  ComplexMatrix state;  ///< normalized conditional state
  double probability = 0.0;
};

/// Below this trace the conditional state is not defined.
inline constexpr double kZeroProbability = 1e-12;

/// diag(1, sqrt(1-p), sqrt(1-q))
ComplexMatrix wm_operator(double p, double q);

/// diag(sqrt((1-p_r)(1-q_r)), sqrt(1-q_r), sqrt(1-p_r))
ComplexMatrix qmr_operator(double p_r, double q_r);

/// Cyclic trit flip |0> -> |1> -> |2> -> |0>.
ComplexMatrix trit_flip();

/// The reversal built from five physical steps: flip, WM(p_r, q_r), flip,
/// WM(p_r, q_r), flip.
ComplexMatrix qmr_via_flips(double p_r, double q_r);

/// p_r = 1 - (1-q)(1-d2), q_r = 1 - (1-p)(1-d1). The pairing is crossed:
/// p_r follows the |2> level, q_r the |1> level.
ReversalStrengths optimal_qmr_wm(double p, double q, double d1, double d2);

/// p_r = d1, q_r = d2.
ReversalStrengths optimal_qmr_eam(double d1, double d2);

ProtocolOutcome wm_qmr_pipeline(const ComplexMatrix& rho0,
                                const ProtectionParams& prot,
                                const ChannelParams& ch);

/// How the two no-click branches are weighted before the reversal.
enum class EamWeighting {
  /// (1-mu) E00 rho E00^dagger + mu A00 rho A00^dagger. The probability
  /// includes the chance of observing no click.
  Joint,
  /// Each branch renormalized to unit trace before mixing with (1-mu), mu.
  /// The probability is then that of the reversal alone.
  BranchNormalized,
};

/// p and q in `prot` are ignored: the scheme has no pre-measurement.
ProtocolOutcome eam_qmr_pipeline(const ComplexMatrix& rho0,
                                 const ProtectionParams& prot,
                                 const ChannelParams& ch,
                                 EamWeighting weighting = EamWeighting::Joint);

struct ReversalSearchResult {
  ReversalStrengths strengths;
  double negativity = 0.0;
  double probability = 0.0;
};

/// Brute-force scan of (p_r, q_r) on a uniform grid with `steps` points per
/// axis over [0, 1), maximizing the negativity of the WM+QMR output.
ReversalSearchResult search_wm_reversal(const ComplexMatrix& rho0, double p,
                                        double q, const ChannelParams& ch,
                                        int steps);

}  // namespace qcad
