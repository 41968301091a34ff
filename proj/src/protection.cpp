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

#include "qcad/protection.hpp"

#include <cmath>
#include <string>

#include "qcad/error.hpp"
#include "qcad/states.hpp"

namespace qcad {

namespace {

void require_unit(double v, const char* name, const char* op) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw Error(ErrorCode::OutOfRange, std::string(op) + ": " + name + " = " +
                                           std::to_string(v) +
                                           " outside [0, 1]");
  }
}

void require_pair_state(const ComplexMatrix& rho, const char* op) {
  if (rho.dim() != kPairDim) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(op) + ": expected a 9x9 two-qutrit state");
  }
}

ProtocolOutcome normalize(ComplexMatrix unnormalized, const char* op) {
  const double prob = unnormalized.trace().real();
  if (!(prob >= kZeroProbability)) {
    throw Error(ErrorCode::ZeroProbability,
                std::string(op) + ": success probability " +
                    std::to_string(prob) + " below threshold");
  }
  unnormalized *= 1.0 / prob;
  return {std::move(unnormalized), prob};
}

}  // namespace

void ProtectionParams::validate() const {
  require_unit(p, "p", "ProtectionParams");
  require_unit(q, "q", "ProtectionParams");
  require_unit(p_r, "p_r", "ProtectionParams");
  require_unit(q_r, "q_r", "ProtectionParams");
}

ComplexMatrix wm_operator(double p, double q) {
  require_unit(p, "p", "wm_operator");
  require_unit(q, "q", "wm_operator");
  const double diag[] = {1.0, std::sqrt(1.0 - p), std::sqrt(1.0 - q)};
  return ComplexMatrix::diagonal(diag);
}

ComplexMatrix qmr_operator(double p_r, double q_r) {
  require_unit(p_r, "p_r", "qmr_operator");
  require_unit(q_r, "q_r", "qmr_operator");
  const double diag[] = {std::sqrt((1.0 - p_r) * (1.0 - q_r)),
                         std::sqrt(1.0 - q_r), std::sqrt(1.0 - p_r)};
  return ComplexMatrix::diagonal(diag);
}

ComplexMatrix trit_flip() {
  ComplexMatrix t(kQutritDim);
  t(0, 2) = 1.0;
  t(1, 0) = 1.0;
  t(2, 1) = 1.0;
  return t;
}

ComplexMatrix qmr_via_flips(double p_r, double q_r) {
  const ComplexMatrix t = trit_flip();
  const ComplexMatrix wm = wm_operator(p_r, q_r);
  return t * wm * t * wm * t;
}

ReversalStrengths optimal_qmr_wm(double p, double q, double d1, double d2) {
  require_unit(p, "p", "optimal_qmr_wm");
  require_unit(q, "q", "optimal_qmr_wm");
  require_unit(d1, "d1", "optimal_qmr_wm");
  require_unit(d2, "d2", "optimal_qmr_wm");
  return {1.0 - (1.0 - q) * (1.0 - d2), 1.0 - (1.0 - p) * (1.0 - d1)};
}

ReversalStrengths optimal_qmr_eam(double d1, double d2) {
  require_unit(d1, "d1", "optimal_qmr_eam");
  require_unit(d2, "d2", "optimal_qmr_eam");
  return {d1, d2};
}

ProtocolOutcome wm_qmr_pipeline(const ComplexMatrix& rho0,
                                const ProtectionParams& prot,
                                const ChannelParams& ch) {
  require_pair_state(rho0, "wm_qmr_pipeline");
  prot.validate();
  const ComplexMatrix e_wm = wm_operator(prot.p, prot.q);
  const ComplexMatrix e_r = qmr_operator(prot.p_r, prot.q_r);
  const ComplexMatrix m_wm = kron(e_wm, e_wm);
  const ComplexMatrix m_r = kron(e_r, e_r);

  const CadChannel channel(ch);
  return normalize(sandwich(m_r, channel.apply(sandwich(m_wm, rho0))),
                   "wm_qmr_pipeline");
}

ProtocolOutcome eam_qmr_pipeline(const ComplexMatrix& rho0,
                                 const ProtectionParams& prot,
                                 const ChannelParams& ch,
                                 EamWeighting weighting) {
  require_pair_state(rho0, "eam_qmr_pipeline");
  prot.validate();
  const CadChannel channel(ch);
  ComplexMatrix uncorr = sandwich(channel.no_decay_uncorrelated(), rho0);
  ComplexMatrix corr = sandwich(channel.no_decay_correlated(), rho0);

  double w_uncorr = 1.0 - ch.mu;
  double w_corr = ch.mu;
  if (weighting == EamWeighting::BranchNormalized) {
    // A branch that carries no weight after post-selection drops out.
    const double g_uncorr = uncorr.trace().real();
    const double g_corr = corr.trace().real();
    w_uncorr = g_uncorr < kZeroProbability ? 0.0 : w_uncorr / g_uncorr;
    w_corr = g_corr < kZeroProbability ? 0.0 : w_corr / g_corr;
  }
  uncorr *= w_uncorr;
  corr *= w_corr;

  const ComplexMatrix e_r = qmr_operator(prot.p_r, prot.q_r);
  return normalize(sandwich(kron(e_r, e_r), uncorr + corr), "eam_qmr_pipeline");
}

ReversalSearchResult search_wm_reversal(const ComplexMatrix& rho0, double p,
                                        double q, const ChannelParams& ch,
                                        int steps) {
  if (steps < 1) {
    throw Error(ErrorCode::InvalidArgument,
                "search_wm_reversal: steps must be >= 1");
  }
  ReversalSearchResult best;
  best.negativity = -1.0;
  for (int i = 0; i < steps; ++i) {
    for (int j = 0; j < steps; ++j) {
      const ProtectionParams prot{p, q, static_cast<double>(i) / steps,
                                  static_cast<double>(j) / steps};
      try {
        const ProtocolOutcome out = wm_qmr_pipeline(rho0, prot, ch);
        const double n = negativity(out.state);
        if (n > best.negativity) best = {{prot.p_r, prot.q_r}, n, out.probability};
      } catch (const Error& e) {
        if (e.code() != ErrorCode::ZeroProbability) throw;
      }
    }
  }
  if (best.negativity < 0.0) {
    throw Error(ErrorCode::ZeroProbability,
                "search_wm_reversal: every grid point has zero probability");
  }
  return best;
}

}  // namespace qcad
