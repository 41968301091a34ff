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

#include <doctest.h>

#include <cmath>

#include "qcad/channels.hpp"
#include "qcad/protection.hpp"
#include "qcad/states.hpp"
#include "support.hpp"

using namespace qcad;
using qcad::testing::Gen;

namespace {

const StateAmplitudes kBalanced = StateAmplitudes::balanced();

ComplexMatrix class1() { return make_state(StateClass::Class1, kBalanced); }
ComplexMatrix class2() { return make_state(StateClass::Class2, kBalanced); }

ComplexMatrix diag3(double a, double b, double c) {
  const double v[] = {a, b, c};
  return ComplexMatrix::diagonal(v);
}

// The CAD map written as one 12-operator Kraus set with sqrt(1-mu), sqrt(mu)
// prefactors.
ComplexMatrix cad_single_set(const ComplexMatrix& rho, const ChannelParams& ch) {
  const KrausSet ad = ad_kraus_pair(ch.d1, ch.d2);
  const KrausSet fc = fcad_kraus(ch.d1, ch.d2);
  ComplexMatrix out(9);
  for (const auto& k : ad.operators()) out += sandwich(std::sqrt(1 - ch.mu) * k, rho);
  for (const auto& k : fc.operators()) out += sandwich(std::sqrt(ch.mu) * k, rho);
  return out;
}

}  // namespace

TEST_CASE("wm_operator examples") {
  CHECK(wm_operator(0.0, 0.0) == ComplexMatrix::identity(3));
  CHECK(wm_operator(1.0, 1.0) == diag3(1, 0, 0));
  Gen g(401);
  for (int trial = 0; trial < 20; ++trial) {
    const double p = g.unit(), q = g.unit();
    const ComplexMatrix e = wm_operator(p, q);
    const ComplexMatrix povm = dagger(e) * e + diag3(0, p, 0) + diag3(0, 0, q);
    CHECK(max_abs_diff(povm, ComplexMatrix::identity(3)) < 1e-15);
  }
  CHECK_THROWS_CODE(wm_operator(1.2, 0.0), ErrorCode::OutOfRange);
}

TEST_CASE("qmr_operator examples") {
  CHECK(qmr_operator(0.0, 0.0) == ComplexMatrix::identity(3));
  CHECK(max_abs_diff(qmr_operator(0.5, 0.5), diag3(0.5, std::sqrt(0.5), std::sqrt(0.5))) <
        1e-15);
  Gen g(402);
  for (int trial = 0; trial < 20; ++trial) {
    const double pr = 0.99 * g.unit(), qr = 0.99 * g.unit();
    const ComplexMatrix w = wm_operator(pr, qr);
    const ComplexMatrix inv = diag3(1.0, 1.0 / w(1, 1).real(), 1.0 / w(2, 2).real());
    CHECK(max_abs_diff(qmr_operator(pr, qr), std::sqrt((1 - pr) * (1 - qr)) * inv) < 1e-14);
  }
  CHECK_THROWS_CODE(qmr_operator(0.0, -0.5), ErrorCode::OutOfRange);
}

TEST_CASE("trit flip and the five-step reversal") {
  const ComplexMatrix t = trit_flip();
  CHECK(dagger(t) * t == ComplexMatrix::identity(3));
  CHECK(t * t * t == ComplexMatrix::identity(3));
  // |0> -> |1> -> |2> -> |0>
  CHECK(t(1, 0) == Complex(1.0));
  CHECK(t(2, 1) == Complex(1.0));
  CHECK(t(0, 2) == Complex(1.0));

  CHECK(max_abs_diff(qmr_via_flips(0.0, 0.0), ComplexMatrix::identity(3)) < 1e-15);
  CHECK(max_abs_diff(qmr_via_flips(0.3, 0.7), qmr_operator(0.3, 0.7)) < 1e-14);
  Gen g(403);
  for (int trial = 0; trial < 100; ++trial) {
    const double pr = g.unit(), qr = g.unit();
    CHECK(max_abs_diff(qmr_via_flips(pr, qr), qmr_operator(pr, qr)) < 1e-14);
  }
  CHECK_THROWS_CODE(qmr_via_flips(1.5, 0.0), ErrorCode::OutOfRange);
}

TEST_CASE("optimal_qmr_wm examples") {
  for (double d : {0.0, 0.25, 0.8}) {
    const ReversalStrengths r = optimal_qmr_wm(0.0, 0.0, d, d);
    CHECK(r.p_r == doctest::Approx(d).epsilon(1e-15));
    CHECK(r.q_r == doctest::Approx(d).epsilon(1e-15));
  }
  const ReversalStrengths w = optimal_qmr_wm(0.3, 0.7, 0.0, 0.0);
  CHECK(w.p_r == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(w.q_r == doctest::Approx(0.3).epsilon(1e-15));
  const ReversalStrengths one = optimal_qmr_wm(1.0, 1.0, 0.4, 0.6);
  CHECK(one.p_r == 1.0);
  CHECK(one.q_r == 1.0);
  const ReversalStrengths x = optimal_qmr_wm(0.2, 0.5, 0.1, 0.3);
  CHECK(x.p_r == doctest::Approx(1 - 0.5 * 0.7));
  CHECK(x.q_r == doctest::Approx(1 - 0.8 * 0.9));
  CHECK_THROWS_CODE(optimal_qmr_wm(0.2, 0.5, 0.1, 1.3), ErrorCode::OutOfRange);
}

TEST_CASE("optimal_qmr_eam examples") {
  const ReversalStrengths z = optimal_qmr_eam(0.0, 0.0);
  CHECK(z.p_r == 0.0);
  CHECK(z.q_r == 0.0);
  const ReversalStrengths s = optimal_qmr_eam(0.6, 0.6);
  CHECK(s.p_r == 0.6);
  CHECK(s.q_r == 0.6);
  const ReversalStrengths o = optimal_qmr_eam(1.0, 1.0);
  CHECK(o.p_r == 1.0);
  CHECK(o.q_r == 1.0);
  CHECK_THROWS_CODE(eam_qmr_pipeline(class2(), {0, 0, 1.0, 1.0}, {1.0, 1.0, 0.5}),
                    ErrorCode::ZeroProbability);
}

TEST_CASE("wm_qmr_pipeline examples") {
  Gen g(404);
  const ComplexMatrix rho = g.density(9);
  for (double mu : {0.0, 0.4, 1.0}) {
    const ProtocolOutcome id = wm_qmr_pipeline(rho, {0, 0, 0, 0}, {0, 0, mu});
    CHECK(max_abs_diff(id.state, rho) < 1e-15);
    CHECK(std::abs(id.probability - 1.0) < 1e-15);
  }
  const ChannelParams ch{0.4, 0.4, 0.6};
  const ReversalStrengths r = optimal_qmr_wm(0.9, 0.9, 0.4, 0.4);
  const ProtocolOutcome out = wm_qmr_pipeline(class1(), {0.9, 0.9, r.p_r, r.q_r}, ch);
  CHECK(negativity(out.state) > negativity(cad_apply(class1(), ch)));
  CHECK(validate_density(out.state).ok());

  const ProtocolOutcome p1 = wm_qmr_pipeline(class1(), {0, 0, 0, 0}, {0, 0, 0.3});
  CHECK(std::abs(p1.probability - 1.0) < 1e-15);

  CHECK_THROWS_CODE(wm_qmr_pipeline(ComplexMatrix::identity(3), {0, 0, 0, 0}, {0, 0, 0}),
                    ErrorCode::DimensionMismatch);
  CHECK_THROWS_CODE(wm_qmr_pipeline(class1(), {0, 0, 1.0, 1.0}, {0.5, 0.5, 0.5}),
                    ErrorCode::ZeroProbability);
  CHECK_THROWS_CODE(wm_qmr_pipeline(class1(), {0, 0, 2.0, 0}, {0.5, 0.5, 0.5}),
                    ErrorCode::OutOfRange);
}

TEST_CASE("wm_qmr_pipeline matches a direct construction") {
  Gen g(405);
  for (int trial = 0; trial < 50; ++trial) {
    const ComplexMatrix rho = g.density(9);
    const ChannelParams ch{g.unit(), g.unit(), g.unit()};
    const ProtectionParams prot{g.unit(), g.unit(), 0.9 * g.unit(), 0.9 * g.unit()};
    const double wm_d[] = {1.0, std::sqrt(1 - prot.p), std::sqrt(1 - prot.q)};
    const double r_d[] = {std::sqrt((1 - prot.p_r) * (1 - prot.q_r)), std::sqrt(1 - prot.q_r),
                          std::sqrt(1 - prot.p_r)};
    const ComplexMatrix mw = kron(ComplexMatrix::diagonal(wm_d), ComplexMatrix::diagonal(wm_d));
    const ComplexMatrix mr = kron(ComplexMatrix::diagonal(r_d), ComplexMatrix::diagonal(r_d));
    const ComplexMatrix raw = mr * cad_single_set(mw * rho * dagger(mw), ch) * dagger(mr);
    const double tr = raw.trace().real();
    const ProtocolOutcome out = wm_qmr_pipeline(rho, prot, ch);
    CHECK(std::abs(out.probability - tr) < 1e-12);
    CHECK(max_abs_diff(out.state, (1.0 / tr) * raw) < 1e-10);
  }
}

TEST_CASE("eam_qmr_pipeline examples") {
  Gen g(406);
  const ComplexMatrix rho = g.density(9);
  for (EamWeighting w : {EamWeighting::Joint, EamWeighting::BranchNormalized}) {
    const ProtocolOutcome id = eam_qmr_pipeline(rho, {0, 0, 0, 0}, {0, 0, 0.5}, w);
    CHECK(max_abs_diff(id.state, rho) < 1e-15);
    CHECK(std::abs(id.probability - 1.0) < 1e-15);
  }

  for (double d : {0.2, 0.5, 0.8})
    for (double mu : {0.0, 0.6, 1.0})
      for (EamWeighting w : {EamWeighting::Joint, EamWeighting::BranchNormalized}) {
        const ReversalStrengths r = optimal_qmr_eam(d, d);
        const ProtocolOutcome out = eam_qmr_pipeline(class2(), {0, 0, r.p_r, r.q_r}, {d, d, mu}, w);
        CHECK(max_abs_diff(out.state, class2()) < 1e-10);
        CHECK(std::abs(negativity(out.state) - 1.0) < 1e-9);
      }

  const ChannelParams ch{0.6, 0.6, 0.6};
  const ReversalStrengths re = optimal_qmr_eam(0.6, 0.6);
  const ReversalStrengths rw = optimal_qmr_wm(0.9, 0.9, 0.6, 0.6);
  const double n_eam = negativity(eam_qmr_pipeline(class1(), {0, 0, re.p_r, re.q_r}, ch).state);
  const double n_wm = negativity(wm_qmr_pipeline(class1(), {0.9, 0.9, rw.p_r, rw.q_r}, ch).state);
  CHECK(n_eam > negativity(cad_apply(class1(), ch)));
  CHECK(n_eam > n_wm);
}

TEST_CASE("eam_qmr_pipeline ignores the WM strengths") {
  Gen g(407);
  const ComplexMatrix rho = g.density(9);
  const ChannelParams ch{0.3, 0.7, 0.4};
  const ProtocolOutcome a = eam_qmr_pipeline(rho, {0.0, 0.0, 0.3, 0.7}, ch);
  const ProtocolOutcome b = eam_qmr_pipeline(rho, {0.9, 0.2, 0.3, 0.7}, ch);
  CHECK(a.state == b.state);
  CHECK(a.probability == b.probability);
}

TEST_CASE("eam joint probability is the post-selected trace") {
  Gen g(408);
  for (int trial = 0; trial < 30; ++trial) {
    const ComplexMatrix rho = g.density(9);
    const ChannelParams ch{g.unit(), g.unit(), g.unit()};
    const ProtectionParams prot{0, 0, 0.9 * g.unit(), 0.9 * g.unit()};
    const CadChannel c(ch);
    const double r_d[] = {std::sqrt((1 - prot.p_r) * (1 - prot.q_r)), std::sqrt(1 - prot.q_r),
                          std::sqrt(1 - prot.p_r)};
    const ComplexMatrix mr = kron(ComplexMatrix::diagonal(r_d), ComplexMatrix::diagonal(r_d));
    const ComplexMatrix e00 = ad_kraus_pair(ch.d1, ch.d2).operators()[0];
    const ComplexMatrix a00 = fcad_kraus(ch.d1, ch.d2).operators()[0];
    const ComplexMatrix raw =
        mr * ((1 - ch.mu) * sandwich(e00, rho) + ch.mu * sandwich(a00, rho)) * dagger(mr);
    const ProtocolOutcome out = eam_qmr_pipeline(rho, prot, ch);
    CHECK(std::abs(out.probability - raw.trace().real()) < 1e-12);
    CHECK(max_abs_diff(out.state, (1.0 / raw.trace().real()) * raw) < 1e-10);
  }
}

TEST_CASE("protocols never create entanglement") {
  const double grid[] = {0.0, 0.25, 0.5, 0.75, 0.95};
  for (const ComplexMatrix& rho0 : {class1(), class2()}) {
    const double n0 = negativity(rho0);
    for (double d : grid)
      for (double mu : grid)
        for (double p : grid) {
          const ChannelParams ch{d, d, mu};
          const ReversalStrengths w = optimal_qmr_wm(p, p, d, d);
          const ReversalStrengths e = optimal_qmr_eam(d, d);
          const ProtocolOutcome wm = wm_qmr_pipeline(rho0, {p, p, w.p_r, w.q_r}, ch);
          CHECK(negativity(wm.state) <= n0 + 1e-9);
          CHECK(validate_density(wm.state).ok());
          CHECK(wm.probability <= 1.0 + 1e-9);
          for (EamWeighting wt : {EamWeighting::Joint, EamWeighting::BranchNormalized}) {
            const ProtocolOutcome eam = eam_qmr_pipeline(rho0, {0, 0, e.p_r, e.q_r}, ch, wt);
            CHECK(negativity(eam.state) <= n0 + 1e-9);
            CHECK(eam.probability <= 1.0 + 1e-9);
          }
        }
  }
}

TEST_CASE("wm strength trades probability for negativity") {
  double prev_n = -1.0, prev_p = 2.0;
  for (double p : {0.0, 0.3, 0.6, 0.9}) {
    const ReversalStrengths r = optimal_qmr_wm(p, p, 0.5, 0.5);
    const ProtocolOutcome out = wm_qmr_pipeline(class1(), {p, p, r.p_r, r.q_r}, {0.5, 0.5, 0.6});
    const double n = negativity(out.state);
    CHECK(n >= prev_n);
    CHECK(out.probability <= prev_p);
    prev_n = n;
    prev_p = out.probability;
  }
}

TEST_CASE("eam dominates wm at p = 0.9") {
  for (const ComplexMatrix& rho0 : {class1(), class2()})
    for (int k = 1; k <= 9; ++k) {
      const double d = k / 10.0;
      for (double mu : {0.0, 0.3, 0.6, 1.0}) {
        const ChannelParams ch{d, d, mu};
        const ReversalStrengths w = optimal_qmr_wm(0.9, 0.9, d, d);
        const ReversalStrengths e = optimal_qmr_eam(d, d);
        const ProtocolOutcome wm = wm_qmr_pipeline(rho0, {0.9, 0.9, w.p_r, w.q_r}, ch);
        const ProtocolOutcome eam = eam_qmr_pipeline(rho0, {0, 0, e.p_r, e.q_r}, ch);
        CHECK(negativity(eam.state) >= negativity(wm.state) - 1e-9);
        CHECK(eam.probability >= wm.probability - 1e-9);
      }
    }
}

TEST_CASE("wm recovers class1 near the projective limit") {
  // p = 0.99 keeps every point above the zero-probability threshold.
  auto recovered = [](double d, double mu) {
    const ReversalStrengths r = optimal_qmr_wm(0.99, 0.99, d, d);
    return negativity(wm_qmr_pipeline(class1(), {0.99, 0.99, r.p_r, r.q_r}, {d, d, mu}).state);
  };
  for (int k = 1; k <= 9; ++k) CHECK(std::abs(recovered(k / 10.0, 0.0) - 1.0) < 0.02);
  for (double d : {0.1, 0.2, 0.3}) CHECK(std::abs(recovered(d, 1.0) - 1.0) < 0.02);
  // Under full correlation the residual loss grows with d.
  CHECK(recovered(0.9, 1.0) < recovered(0.5, 1.0));
}

TEST_CASE("search_wm_reversal scans the grid") {
  const ChannelParams ch{0.5, 0.5, 0.6};
  const ReversalSearchResult best = search_wm_reversal(class1(), 0.6, 0.6, ch, 20);
  CHECK(best.strengths.p_r >= 0.0);
  CHECK(best.strengths.p_r < 1.0);
  CHECK(best.strengths.q_r < 1.0);
  // The optimum on the grid is at least as good as every grid point sampled here.
  for (double pr : {0.0, 0.25, 0.5, 0.75})
    for (double qr : {0.0, 0.25, 0.5, 0.75}) {
      const ProtocolOutcome o = wm_qmr_pipeline(class1(), {0.6, 0.6, pr, qr}, ch);
      CHECK(best.negativity >= negativity(o.state) - 1e-12);
    }
  const ProtocolOutcome at = wm_qmr_pipeline(
      class1(), {0.6, 0.6, best.strengths.p_r, best.strengths.q_r}, ch);
  CHECK(std::abs(at.probability - best.probability) < 1e-15);
  CHECK_THROWS_CODE(search_wm_reversal(class1(), 0.6, 0.6, ch, 0), ErrorCode::InvalidArgument);
}
