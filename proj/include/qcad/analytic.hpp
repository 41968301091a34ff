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

// Closed-form output states for the alpha|00> + beta|11> + gamma|22> family.
// These are written element by element and serve as an independent check on
// the Kraus pipelines in channels/protection.
//
// Element (k, l) uses 1-based indices k = 3i + j + 1 for the ket |ij>:
//   k:   1    2    3    4    5    6    7    8    9
//   ket: |00> |01> |02> |10> |11> |12> |20> |21> |22>

#pragma once

#include "qcad/channels.hpp"
#include "qcad/protection.hpp"
#include "qcad/states.hpp"

namespace qcad::analytic {

struct Outcome {
  ComplexMatrix state;
  double probability = 0.0;
};

/// CAD output for a Class1 input.
ComplexMatrix rho1_cad(const StateAmplitudes& amps, const ChannelParams& ch);

/// WM + CAD + reversal output for a Class1 input, normalized by the closed
/// form success probability wm_probability().
Outcome rho1_wm(const StateAmplitudes& amps, const ProtectionParams& prot,
                const ChannelParams& ch);

/// Closed-form success probability of the WM scheme.
double wm_probability(const StateAmplitudes& amps, const ProtectionParams& prot,
                      const ChannelParams& ch);

/// Traces of the two no-click branches: G1 for E0(x)E0, G2 for A00.
double eam_branch_trace_uncorrelated(const StateAmplitudes& amps,
                                     const ChannelParams& ch);
double eam_branch_trace_correlated(const StateAmplitudes& amps,
                                   const ChannelParams& ch);

/// EAM + reversal output for a Class1 input (p, q in `prot` unused).
Outcome rho1_eam(const StateAmplitudes& amps, const ChannelParams& ch,
                 const ProtectionParams& prot,
                 EamWeighting weighting = EamWeighting::Joint);

double eam_probability(const StateAmplitudes& amps, const ChannelParams& ch,
                       const ProtectionParams& prot,
                       EamWeighting weighting = EamWeighting::Joint);

/// Branch-normalized EAM probability written over the common denominator
/// G1*G2. Algebraically equal to
/// eam_probability(..., EamWeighting::BranchNormalized).
double eam_probability_common_denominator(const StateAmplitudes& amps,
                                          const ChannelParams& ch,
                                          const ProtectionParams& prot);

}  // namespace qcad::analytic
