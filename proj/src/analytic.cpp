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

#include "qcad/analytic.hpp"

#include <cmath>
#include <string>

#include "qcad/error.hpp"

namespace qcad::analytic {

namespace {

// Writes element (k, l) in 1-based ket numbering together with its Hermitian
// partner (l, k).
class ElementWriter {
 public:
  explicit ElementWriter(ComplexMatrix& m) : m_(m) {}

  void diag(std::size_t k, double v) { m_(k - 1, k - 1) = v; }
  void pair(std::size_t k, std::size_t l, Complex v) {
    m_(k - 1, l - 1) = v;
    m_(l - 1, k - 1) = std::conj(v);
  }

 private:
  ComplexMatrix& m_;
};

// Shorthand for the recurring complements 1 - x.
struct Bars {
  double mu, d1, d2, p, q, pr, qr;

  Bars(const ChannelParams& ch, const ProtectionParams& prot)
      : mu(1.0 - ch.mu),
        d1(1.0 - ch.d1),
        d2(1.0 - ch.d2),
        p(1.0 - prot.p),
        q(1.0 - prot.q),
        pr(1.0 - prot.p_r),
        qr(1.0 - prot.q_r) {}
};

void check_inputs(const StateAmplitudes& amps, const ChannelParams& ch,
                  const ProtectionParams& prot) {
  ch.validate();
  prot.validate();
  if (!(amps.alpha >= 0.0) || std::abs(amps.norm_squared() - 1.0) > 1e-12) {
    throw Error(ErrorCode::NotNormalized,
                "analytic: amplitudes must satisfy alpha >= 0 and unit norm");
  }
}

Outcome normalized(ComplexMatrix m, double probability, const char* op) {
  if (!(probability >= kZeroProbability)) {
    throw Error(ErrorCode::ZeroProbability,
                std::string(op) + ": success probability " +
                    std::to_string(probability) + " below threshold");
  }
  m *= 1.0 / probability;
  return {std::move(m), probability};
}

struct BranchWeights {
  double uncorrelated;
  double correlated;
};

BranchWeights eam_weights(const StateAmplitudes& amps, const ChannelParams& ch,
                          EamWeighting weighting) {
  BranchWeights w{1.0 - ch.mu, ch.mu};
  if (weighting == EamWeighting::BranchNormalized) {
    const double g1 = eam_branch_trace_uncorrelated(amps, ch);
    const double g2 = eam_branch_trace_correlated(amps, ch);
    w.uncorrelated = g1 < kZeroProbability ? 0.0 : w.uncorrelated / g1;
    w.correlated = g2 < kZeroProbability ? 0.0 : w.correlated / g2;
  }
  return w;
}

}  // namespace

ComplexMatrix rho1_cad(const StateAmplitudes& amps, const ChannelParams& ch) {
  check_inputs(amps, ch, {});
  const Bars b(ch, {});
  const double mu = ch.mu, d1 = ch.d1, d2 = ch.d2;
  const double a = amps.alpha;
  const Complex be = amps.beta, ga = amps.gamma;
  const double b2 = std::norm(be), g2 = std::norm(ga);

  ComplexMatrix m(kPairDim);
  ElementWriter w(m);
  w.diag(1, a * a + b2 * (b.mu * d1 * d1 + mu * d1) +
                g2 * (b.mu * d2 * d2 + mu * d2));
  w.pair(1, 5, a * std::conj(be) * (b.mu * b.d1 + mu * std::sqrt(b.d1)));
  w.pair(1, 9, a * std::conj(ga) * (b.mu * b.d2 + mu * std::sqrt(b.d2)));
  w.diag(2, b2 * b.mu * b.d1 * d1);
  w.diag(4, b2 * b.mu * b.d1 * d1);
  w.diag(3, g2 * b.mu * b.d2 * d2);
  w.diag(7, g2 * b.mu * b.d2 * d2);
  w.diag(5, b2 * (b.mu * b.d1 * b.d1 + mu * b.d1));
  w.pair(5, 9, be * std::conj(ga) *
                   (b.mu * b.d1 * b.d2 + mu * std::sqrt(b.d1 * b.d2)));
  w.diag(9, g2 * (b.mu * b.d2 * b.d2 + mu * b.d2));
  return m;
}

double wm_probability(const StateAmplitudes& amps, const ProtectionParams& prot,
                      const ChannelParams& ch) {
  check_inputs(amps, ch, prot);
  const Bars b(ch, prot);
  const double mu = ch.mu, d1 = ch.d1, d2 = ch.d2;
  const double pr = prot.p_r, qr = prot.q_r;
  const double a2 = amps.alpha * amps.alpha;
  const double b2 = std::norm(amps.beta), g2 = std::norm(amps.gamma);
  return a2 * b.pr * b.pr * b.qr * b.qr +
         b2 * b.p * b.p * b.qr * b.qr *
             (1.0 + b.mu * d1 * d1 * pr * pr - 2.0 * b.mu * d1 * pr -
              mu * d1 * (2.0 * pr - pr * pr)) +
         g2 * b.q * b.q * b.pr * b.pr *
             (1.0 + b.mu * d2 * d2 * qr * qr - 2.0 * b.mu * d2 * qr -
              mu * d2 * (2.0 * qr - qr * qr));
}

Outcome rho1_wm(const StateAmplitudes& amps, const ProtectionParams& prot,
                const ChannelParams& ch) {
  check_inputs(amps, ch, prot);
  const Bars b(ch, prot);
  const double mu = ch.mu, d1 = ch.d1, d2 = ch.d2;
  const double a = amps.alpha;
  const Complex be = amps.beta, ga = amps.gamma;
  const double b2 = std::norm(be), g2 = std::norm(ga);
  const double P = b.pr, Q = b.qr;

  ComplexMatrix m(kPairDim);
  ElementWriter w(m);
  w.diag(1, (a * a + b2 * (b.mu * d1 * d1 + mu * d1) * b.p * b.p +
             g2 * (b.mu * d2 * d2 + mu * d2) * b.q * b.q) *
                P * P * Q * Q);
  w.pair(1, 5, a * std::conj(be) * (b.mu * b.d1 + mu * std::sqrt(b.d1)) * b.p *
                   P * Q * Q);
  w.pair(1, 9, a * std::conj(ga) * (b.mu * b.d2 + mu * std::sqrt(b.d2)) * b.q *
                   P * P * Q);
  w.diag(2, b2 * b.mu * b.d1 * d1 * b.p * b.p * P * Q * Q);
  w.diag(4, b2 * b.mu * b.d1 * d1 * b.p * b.p * P * Q * Q);
  w.diag(3, g2 * b.mu * b.d2 * d2 * b.q * b.q * P * P * Q);
  w.diag(7, g2 * b.mu * b.d2 * d2 * b.q * b.q * P * P * Q);
  w.diag(5, b2 * (b.mu * b.d1 * b.d1 + mu * b.d1) * b.p * b.p * Q * Q);
  w.pair(5, 9, be * std::conj(ga) *
                   (b.mu * b.d1 * b.d2 + mu * std::sqrt(b.d1 * b.d2)) * b.p *
                   b.q * P * Q);
  w.diag(9, g2 * (b.mu * b.d2 * b.d2 + mu * b.d2) * b.q * b.q * P * P);

  return normalized(std::move(m), wm_probability(amps, prot, ch), "rho1_wm");
}

double eam_branch_trace_uncorrelated(const StateAmplitudes& amps,
                                     const ChannelParams& ch) {
  const double db1 = 1.0 - ch.d1, db2 = 1.0 - ch.d2;
  return amps.alpha * amps.alpha + std::norm(amps.beta) * db1 * db1 +
         std::norm(amps.gamma) * db2 * db2;
}

double eam_branch_trace_correlated(const StateAmplitudes& amps,
                                   const ChannelParams& ch) {
  return amps.alpha * amps.alpha + std::norm(amps.beta) * (1.0 - ch.d1) +
         std::norm(amps.gamma) * (1.0 - ch.d2);
}

double eam_probability(const StateAmplitudes& amps, const ChannelParams& ch,
                       const ProtectionParams& prot, EamWeighting weighting) {
  check_inputs(amps, ch, prot);
  const Bars b(ch, prot);
  const BranchWeights wt = eam_weights(amps, ch, weighting);
  const double P = b.pr, Q = b.qr;
  return P * P * Q * Q * (wt.uncorrelated + wt.correlated) * amps.alpha *
             amps.alpha +
         Q * Q * (wt.uncorrelated * b.d1 * b.d1 + wt.correlated * b.d1) *
             std::norm(amps.beta) +
         P * P * (wt.uncorrelated * b.d2 * b.d2 + wt.correlated * b.d2) *
             std::norm(amps.gamma);
}

double eam_probability_common_denominator(const StateAmplitudes& amps,
                                          const ChannelParams& ch,
                                          const ProtectionParams& prot) {
  check_inputs(amps, ch, prot);
  const Bars b(ch, prot);
  const double mu = ch.mu;
  const double g1 = eam_branch_trace_uncorrelated(amps, ch);
  const double g2 = eam_branch_trace_correlated(amps, ch);
  if (g1 < kZeroProbability || g2 < kZeroProbability) {
    throw Error(ErrorCode::ZeroProbability,
                "eam_probability_common_denominator: empty no-click branch");
  }
  const double P = b.pr, Q = b.qr;
  return (P * P * Q * Q * (mu * g1 + b.mu * g2) * amps.alpha * amps.alpha +
          Q * Q * (mu * b.d1 * g1 + b.mu * b.d1 * b.d1 * g2) *
              std::norm(amps.beta) +
          P * P * (mu * b.d2 * g1 + b.mu * b.d2 * b.d2 * g2) *
              std::norm(amps.gamma)) /
         (g1 * g2);
}

Outcome rho1_eam(const StateAmplitudes& amps, const ChannelParams& ch,
                 const ProtectionParams& prot, EamWeighting weighting) {
  check_inputs(amps, ch, prot);
  const Bars b(ch, prot);
  const BranchWeights wt = eam_weights(amps, ch, weighting);
  const double w1 = wt.uncorrelated, w2 = wt.correlated;
  const double a = amps.alpha;
  const Complex be = amps.beta, ga = amps.gamma;
  const double P = b.pr, Q = b.qr;

  ComplexMatrix m(kPairDim);
  ElementWriter w(m);
  w.diag(1, P * P * Q * Q * (w1 + w2) * a * a);
  w.pair(1, 5, P * Q * Q * (w1 * b.d1 + w2 * std::sqrt(b.d1)) * a *
                   std::conj(be));
  w.pair(1, 9, P * P * Q * (w1 * b.d2 + w2 * std::sqrt(b.d2)) * a *
                   std::conj(ga));
  w.diag(5, Q * Q * (w1 * b.d1 * b.d1 + w2 * b.d1) * std::norm(be));
  w.pair(5, 9, P * Q * (w1 * b.d1 * b.d2 + w2 * std::sqrt(b.d1 * b.d2)) * be *
                   std::conj(ga));
  w.diag(9, P * P * (w1 * b.d2 * b.d2 + w2 * b.d2) * std::norm(ga));

  return normalized(std::move(m), eam_probability(amps, ch, prot, weighting),
                    "rho1_eam");
}

}  // namespace qcad::analytic
