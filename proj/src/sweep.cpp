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

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "qcad/error.hpp"
#include "qcad/sweep.hpp"

namespace qcad {

namespace {

struct GridPoint {
  StateClass cls;
  double d1, d2, mu, p;
  Scheme scheme;
};

std::vector<GridPoint> enumerate_grid(const SweepConfig& cfg) {
  std::vector<std::pair<double, double>> dampings;
  if (cfg.lock_d) {
    for (double d : cfg.d.values()) dampings.emplace_back(d, d);
  } else {
    for (double d1 : cfg.d1.values())
      for (double d2 : cfg.d2.values()) dampings.emplace_back(d1, d2);
  }
  const bool sweeps_p = cfg.scheme == Scheme::Wm || cfg.scheme == Scheme::Compare;
  const std::vector<double> ps = sweeps_p ? cfg.p.values() : std::vector<double>{0.0};
  std::vector<Scheme> schemes;
  if (cfg.scheme == Scheme::Compare) schemes = {Scheme::Wm, Scheme::Eam};
  else schemes = {cfg.scheme};

  std::vector<GridPoint> points;
  for (StateClass cls : cfg.classes)
    for (const auto& [d1, d2] : dampings)
      for (double mu : cfg.mu.values())
        for (double p : ps)
          for (Scheme s : schemes) points.push_back({cls, d1, d2, mu, p, s});
  return points;
}

template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i; (i = next.fetch_add(1)) < n;) {
          try {
            fn(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next.store(n);
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

PointResult evaluate_point(const SweepConfig& cfg, StateClass cls, double d1,
                           double d2, double mu, double p, Scheme scheme) {
  PointResult out;
  SweepRecord& r = out.record;
  r.state_class = cls;
  r.d1 = d1;
  r.d2 = d2;
  r.mu = mu;
  r.scheme = scheme;
  const ChannelParams ch{d1, d2, mu};
  const ComplexMatrix rho0 = make_state(cls, cfg.amplitudes);

  try {
    switch (scheme) {
      case Scheme::None: {
        ComplexMatrix rho = cad_apply(rho0, ch);
        r.negativity = negativity(rho);
        r.probability = 1.0;
        out.state = std::move(rho);
        break;
      }
      case Scheme::Wm: {
        r.p = p;
        r.q = cfg.q_policy.equal_p ? p : cfg.q_policy.fixed;
        const ReversalStrengths rs = cfg.qmr_policy.optimal
                                         ? optimal_qmr_wm(r.p, r.q, d1, d2)
                                         : cfg.qmr_policy.fixed;
        r.p_r = rs.p_r;
        r.q_r = rs.q_r;
        ProtocolOutcome o = wm_qmr_pipeline(rho0, {r.p, r.q, r.p_r, r.q_r}, ch);
        r.negativity = negativity(o.state);
        r.probability = o.probability;
        out.state = std::move(o.state);
        break;
      }
      case Scheme::Eam: {
        const ReversalStrengths rs = cfg.qmr_policy.optimal
                                         ? optimal_qmr_eam(d1, d2)
                                         : cfg.qmr_policy.fixed;
        r.p_r = rs.p_r;
        r.q_r = rs.q_r;
        ProtocolOutcome o = eam_qmr_pipeline(rho0, {0.0, 0.0, r.p_r, r.q_r}, ch,
                                             cfg.eam_weighting);
        r.negativity = negativity(o.state);
        r.probability = o.probability;
        out.state = std::move(o.state);
        break;
      }
      case Scheme::Compare:
        throw Error(ErrorCode::InvalidArgument,
                    "evaluate_point: compare is not a single scheme");
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::ZeroProbability) throw;
    r.negativity.reset();
    r.probability.reset();
    out.state.reset();
  }
  return out;
}

std::vector<SweepRecord> run_sweep(const SweepConfig& cfg) {
  const std::vector<GridPoint> points = enumerate_grid(cfg);
  std::vector<SweepRecord> records(points.size());
  parallel_for(points.size(), cfg.threads, [&](std::size_t i) {
    const GridPoint& g = points[i];
    records[i] =
        evaluate_point(cfg, g.cls, g.d1, g.d2, g.mu, g.p, g.scheme).record;
  });
  return records;
}

std::vector<PointResult> evolve_first_point(const SweepConfig& cfg) {
  const std::vector<GridPoint> points = enumerate_grid(cfg);
  std::vector<PointResult> out;
  for (const GridPoint& g : points) {
    const GridPoint& first = points.front();
    if (g.cls != first.cls || g.d1 != first.d1 || g.d2 != first.d2 ||
        g.mu != first.mu || g.p != first.p)
      break;
    out.push_back(evaluate_point(cfg, g.cls, g.d1, g.d2, g.mu, g.p, g.scheme));
  }
  return out;
}

std::optional<double> record_field(const SweepRecord& r, std::string_view name) {
  if (name == "d" || name == "d1") return r.d1;
  if (name == "d2") return r.d2;
  if (name == "mu") return r.mu;
  if (name == "p") return r.p;
  if (name == "q") return r.q;
  if (name == "p_r") return r.p_r;
  if (name == "q_r") return r.q_r;
  if (name == "negativity") return r.negativity;
  if (name == "probability") return r.probability;
  throw Error(ErrorCode::InvalidArgument,
              "record_field: unknown column \"" + std::string(name) + "\"");
}

}  // namespace qcad
