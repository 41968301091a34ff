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

#include "qcad/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "qcad/analytic.hpp"
#include "qcad/channels.hpp"
#include "qcad/error.hpp"
#include "qcad/protection.hpp"
#include "qcad/states.hpp"

namespace qcad {

namespace {

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

// G G^dagger / tr for a complex Gaussian G.
ComplexMatrix random_density(std::mt19937_64& rng, std::size_t dim) {
  std::normal_distribution<double> n;
  ComplexMatrix g(dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) g(i, j) = {n(rng), n(rng)};
  ComplexMatrix rho = g * dagger(g);
  rho *= 1.0 / rho.trace().real();
  return hermitize(rho);
}

StateAmplitudes random_amplitudes(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  StateAmplitudes a{std::abs(n(rng)), {n(rng), n(rng)}, {n(rng), n(rng)}};
  const double s = std::sqrt(a.norm_squared());
  a.alpha /= s;
  a.beta /= s;
  a.gamma /= s;
  return a;
}

class Runner {
 public:
  explicit Runner(const std::function<void(const CheckResult&)>& cb) : cb_(cb) {}

  template <class Fn>
  void check(std::string name, Fn&& fn) {
    CheckResult r{std::move(name), false, {}};
    try {
      std::tie(r.passed, r.detail) = fn();
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("exception: ") + e.what();
    }
    if (cb_) cb_(r);
    results_.push_back(std::move(r));
  }

  std::vector<CheckResult> take() { return std::move(results_); }

 private:
  const std::function<void(const CheckResult&)>& cb_;
  std::vector<CheckResult> results_;
};

using Verdict = std::pair<bool, std::string>;

Verdict within(double worst, double tol) {
  return {worst < tol, "max deviation " + sci(worst) + " (tolerance " + sci(tol) + ")"};
}

}  // namespace

std::vector<CheckResult> run_verification(
    const std::function<void(const CheckResult&)>& on_result) {
  Runner run(on_result);
  const StateAmplitudes balanced = StateAmplitudes::balanced();
  const ComplexMatrix class1 = make_state(StateClass::Class1, balanced);
  const ComplexMatrix class2 = make_state(StateClass::Class2, balanced);

  run.check("kraus completeness", [] {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const double d1 = u(rng), d2 = u(rng);
      worst = std::max({worst, ad_kraus_single(d1, d2).completeness_defect(),
                        ad_kraus_pair(d1, d2).completeness_defect(),
                        fcad_kraus(d1, d2).completeness_defect()});
    }
    return within(worst, 1e-12);
  });

  run.check("lindblad/kraus agreement", [] {
    std::mt19937_64 rng(12);
    const ComplexMatrix rho1 = random_density(rng, 3);
    const ComplexMatrix rho2 = random_density(rng, 9);
    double worst = 0.0;
    for (double gamma : {0.5, 1.0, 2.0}) {
      for (double t : {0.2, 1.0, 3.0}) {
        const Damping d = damping_from_rates({gamma, gamma, t});
        const ComplexMatrix single = integrate_rk4(
            single_qutrit_generator(gamma, gamma), rho1, t, 10000);
        const ComplexMatrix pair =
            integrate_rk4(fcad_generator(gamma, gamma), rho2, t, 10000);
        worst = std::max(
            {worst, trace_distance(single, ad_kraus_single(d.d1, d.d2).apply(rho1)),
             trace_distance(pair, fcad_kraus(d.d1, d.d2).apply(rho2))});
      }
    }
    return within(worst, 1e-8);
  });

  run.check("closed forms match Kraus pipelines", [] {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      const StateAmplitudes a = random_amplitudes(rng);
      const ComplexMatrix rho0 = make_state(StateClass::Class1, a);
      const ChannelParams ch{u(rng), u(rng), u(rng)};
      const ProtectionParams prot{u(rng), u(rng), u(rng), u(rng)};
      worst = std::max(worst, max_abs_diff(analytic::rho1_cad(a, ch), cad_apply(rho0, ch)));
      const auto wm = wm_qmr_pipeline(rho0, prot, ch);
      const auto wm_cf = analytic::rho1_wm(a, prot, ch);
      worst = std::max({worst, max_abs_diff(wm.state, wm_cf.state),
                        std::abs(wm.probability - wm_cf.probability)});
      for (EamWeighting w : {EamWeighting::Joint, EamWeighting::BranchNormalized}) {
        const auto eam = eam_qmr_pipeline(rho0, prot, ch, w);
        const auto eam_cf = analytic::rho1_eam(a, ch, prot, w);
        worst = std::max({worst, max_abs_diff(eam.state, eam_cf.state),
                          std::abs(eam.probability - eam_cf.probability)});
      }
    }
    return within(worst, 1e-12);
  });

  run.check("full damping endpoints", [&] {
    double worst = 0.0;
    for (double mu : {0.0, 0.5, 1.0})
      worst = std::max(worst, negativity(cad_apply(class1, {1.0, 1.0, mu})));
    const double residual = negativity(cad_apply(class2, {1.0, 1.0, 1.0}));
    worst = std::max(worst, std::abs(residual - (std::sqrt(5.0) - 1.0) / 6.0));
    return within(worst, 1e-9);
  });

  run.check("uncorrelated decay of class1", [&] {
    double worst = 0.0;
    for (int k = 0; k <= 10; ++k) {
      const double d = k / 10.0;
      worst = std::max(worst, std::abs(negativity(cad_apply(class1, {d, d, 0.0})) -
                                       (1.0 - d) * (1.0 - d)));
    }
    return within(worst, 1e-10);
  });

  run.check("eam recovers class2 exactly", [&] {
    double worst = 0.0;
    for (double d : {0.2, 0.5, 0.8}) {
      for (double mu : {0.0, 0.6, 1.0}) {
        const ReversalStrengths rs = optimal_qmr_eam(d, d);
        const auto out = eam_qmr_pipeline(class2, {0, 0, rs.p_r, rs.q_r}, {d, d, mu});
        worst = std::max({worst, max_abs_diff(out.state, class2),
                          std::abs(negativity(out.state) - 1.0)});
      }
    }
    return within(worst, 1e-10);
  });

  run.check("eam dominates wm at p = 0.9", [&] {
    double worst = -1.0;
    for (const ComplexMatrix* rho0 : {&class1, &class2}) {
      for (int k = 1; k <= 9; ++k) {
        const double d = k / 10.0;
        for (double mu : {0.0, 0.3, 0.6, 1.0}) {
          const ChannelParams ch{d, d, mu};
          const ReversalStrengths w = optimal_qmr_wm(0.9, 0.9, d, d);
          const ReversalStrengths e = optimal_qmr_eam(d, d);
          const auto wm = wm_qmr_pipeline(*rho0, {0.9, 0.9, w.p_r, w.q_r}, ch);
          const auto eam = eam_qmr_pipeline(*rho0, {0, 0, e.p_r, e.q_r}, ch);
          worst = std::max({worst, negativity(wm.state) - negativity(eam.state),
                            wm.probability - eam.probability});
        }
      }
    }
    return Verdict{worst <= 1e-9, "largest wm excess " + sci(worst)};
  });

  run.check("wm strength trades probability for negativity", [&] {
    double prev_n = -1.0, prev_p = 2.0;
    bool ok = true;
    for (double p : {0.0, 0.3, 0.6, 0.9}) {
      const ReversalStrengths rs = optimal_qmr_wm(p, p, 0.5, 0.5);
      const auto out = wm_qmr_pipeline(class1, {p, p, rs.p_r, rs.q_r}, {0.5, 0.5, 0.6});
      const double n = negativity(out.state);
      ok = ok && n >= prev_n - 1e-12 && out.probability <= prev_p + 1e-12;
      prev_n = n;
      prev_p = out.probability;
    }
    return Verdict{ok, ok ? "monotone" : "not monotone"};
  });

  run.check("local protocols never create entanglement", [&] {
    const double grid[] = {0.0, 0.25, 0.5, 0.75, 0.95};
    double worst = -1.0;
    for (const ComplexMatrix* rho0 : {&class1, &class2}) {
      const double n0 = negativity(*rho0);
      for (double d : grid)
        for (double mu : grid)
          for (double p : grid) {
            const ChannelParams ch{d, d, mu};
            const ReversalStrengths w = optimal_qmr_wm(p, p, d, d);
            const ReversalStrengths e = optimal_qmr_eam(d, d);
            worst = std::max(
                worst,
                negativity(wm_qmr_pipeline(*rho0, {p, p, w.p_r, w.q_r}, ch).state) - n0);
            worst = std::max(
                worst,
                negativity(eam_qmr_pipeline(*rho0, {0, 0, e.p_r, e.q_r}, ch).state) - n0);
          }
    }
    return Verdict{worst <= 1e-9, "largest gain " + sci(worst)};
  });

  run.check("reversal from trit flips", [] {
    std::mt19937_64 rng(14);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const double pr = u(rng), qr = u(rng);
      worst = std::max(worst, max_abs_diff(qmr_via_flips(pr, qr), qmr_operator(pr, qr)));
    }
    return within(worst, 1e-14);
  });

  run.check("cad preserves density matrices", [] {
    std::mt19937_64 rng(15);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    bool ok = true;
    for (int i = 0; i < 20; ++i) {
      const ComplexMatrix rho = random_density(rng, 9);
      const ComplexMatrix out = cad_apply(rho, {u(rng), u(rng), u(rng)});
      ok = ok && validate_density(out).ok() &&
           std::abs(out.trace().real() - 1.0) < 1e-12;
    }
    return Verdict{ok, ok ? "trace, hermiticity and positivity kept" : "violated"};
  });

  return run.take();
}

}  // namespace qcad
