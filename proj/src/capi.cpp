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

#include "qcad/qcad.h"

#include <exception>
#include <memory>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "qcad/channels.hpp"
#include "qcad/error.hpp"
#include "qcad/protection.hpp"
#include "qcad/states.hpp"
#include "qcad/sweep.hpp"
#include "qcad/verify.hpp"

struct qcad_matrix {
  qcad::ComplexMatrix m;
};

struct qcad_config {
  qcad::SweepConfig cfg;
};

struct qcad_records {
  std::vector<qcad::SweepRecord> rows;
  std::vector<std::optional<qcad::ComplexMatrix>> states;
};

namespace {

thread_local std::string last_error;

qcad_status to_status(qcad::ErrorCode c) {
  using qcad::ErrorCode;
  switch (c) {
    case ErrorCode::InvalidArgument: return QCAD_ERR_INVALID_ARGUMENT;
    case ErrorCode::OutOfRange: return QCAD_ERR_OUT_OF_RANGE;
    case ErrorCode::DimensionMismatch: return QCAD_ERR_DIMENSION_MISMATCH;
    case ErrorCode::NotHermitian: return QCAD_ERR_NOT_HERMITIAN;
    case ErrorCode::NoConvergence: return QCAD_ERR_NO_CONVERGENCE;
    case ErrorCode::NotNormalized: return QCAD_ERR_NOT_NORMALIZED;
    case ErrorCode::ZeroProbability: return QCAD_ERR_ZERO_PROBABILITY;
    case ErrorCode::ParseError: return QCAD_ERR_PARSE;
    case ErrorCode::ValidationError: return QCAD_ERR_VALIDATION;
    case ErrorCode::IncompleteGrid: return QCAD_ERR_INCOMPLETE_GRID;
    case ErrorCode::IoError: return QCAD_ERR_IO;
  }
  return QCAD_ERR_INTERNAL;
}

template <class Fn>
qcad_status guarded(Fn&& fn) noexcept {
  try {
    fn();
    return QCAD_OK;
  } catch (const qcad::Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return QCAD_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return QCAD_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown exception";
    return QCAD_ERR_INTERNAL;
  }
}

void require(bool cond, const char* what) {
  if (!cond) throw qcad::Error(qcad::ErrorCode::InvalidArgument, what);
}

qcad::StateClass from_c(qcad_state_class c) {
  if (c == QCAD_CLASS1) return qcad::StateClass::Class1;
  if (c == QCAD_CLASS2) return qcad::StateClass::Class2;
  throw qcad::Error(qcad::ErrorCode::InvalidArgument, "unknown state class");
}

qcad::EamWeighting from_c(qcad_eam_weighting w) {
  if (w == QCAD_EAM_JOINT) return qcad::EamWeighting::Joint;
  if (w == QCAD_EAM_BRANCH_NORMALIZED) return qcad::EamWeighting::BranchNormalized;
  throw qcad::Error(qcad::ErrorCode::InvalidArgument, "unknown EAM weighting");
}

qcad::ChannelParams from_c(const qcad_channel& c) { return {c.d1, c.d2, c.mu}; }

qcad::ProtectionParams from_c(const qcad_protection& p) {
  return {p.p, p.q, p.p_r, p.q_r};
}

qcad_matrix* wrap(qcad::ComplexMatrix m) { return new qcad_matrix{std::move(m)}; }

qcad_scheme to_c(qcad::Scheme s) {
  switch (s) {
    case qcad::Scheme::Wm: return QCAD_SCHEME_WM;
    case qcad::Scheme::Eam: return QCAD_SCHEME_EAM;
    default: return QCAD_SCHEME_NONE;
  }
}

}  // namespace

extern "C" {

const char* qcad_version(void) { return "1.0.0"; }

const char* qcad_status_string(qcad_status status) {
  switch (status) {
    case QCAD_OK: return "ok";
    case QCAD_ERR_INVALID_ARGUMENT: return "invalid argument";
    case QCAD_ERR_OUT_OF_RANGE: return "out of range";
    case QCAD_ERR_DIMENSION_MISMATCH: return "dimension mismatch";
    case QCAD_ERR_NOT_HERMITIAN: return "not hermitian";
    case QCAD_ERR_NO_CONVERGENCE: return "no convergence";
    case QCAD_ERR_NOT_NORMALIZED: return "not normalized";
    case QCAD_ERR_ZERO_PROBABILITY: return "zero probability";
    case QCAD_ERR_PARSE: return "parse error";
    case QCAD_ERR_VALIDATION: return "validation error";
    case QCAD_ERR_INCOMPLETE_GRID: return "incomplete grid";
    case QCAD_ERR_IO: return "i/o error";
    case QCAD_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* qcad_last_error(void) { return last_error.c_str(); }

qcad_status qcad_matrix_create(size_t dim, const double* re, const double* im,
                               qcad_matrix** out) {
  return guarded([&] {
    require(out != nullptr && re != nullptr, "qcad_matrix_create: null pointer");
    require(dim > 0, "qcad_matrix_create: dim must be positive");
    std::vector<qcad::Complex> entries(dim * dim);
    for (size_t k = 0; k < entries.size(); ++k)
      entries[k] = {re[k], im ? im[k] : 0.0};
    *out = wrap(qcad::ComplexMatrix(dim, std::move(entries)));
  });
}

void qcad_matrix_free(qcad_matrix* m) { delete m; }

size_t qcad_matrix_dim(const qcad_matrix* m) { return m ? m->m.dim() : 0; }

qcad_status qcad_matrix_get(const qcad_matrix* m, size_t row, size_t col,
                            double* re, double* im) {
  return guarded([&] {
    require(m != nullptr, "qcad_matrix_get: null matrix");
    if (row >= m->m.dim() || col >= m->m.dim())
      throw qcad::Error(qcad::ErrorCode::OutOfRange, "qcad_matrix_get: index");
    const qcad::Complex z = m->m(row, col);
    if (re) *re = z.real();
    if (im) *im = z.imag();
  });
}

qcad_status qcad_make_state(qcad_state_class cls, const qcad_amplitudes* amps,
                            qcad_matrix** out) {
  return guarded([&] {
    require(out != nullptr, "qcad_make_state: null output");
    const qcad::StateAmplitudes a =
        amps ? qcad::StateAmplitudes{amps->alpha,
                                     {amps->beta_re, amps->beta_im},
                                     {amps->gamma_re, amps->gamma_im}}
             : qcad::StateAmplitudes::balanced();
    *out = wrap(qcad::make_state(from_c(cls), a));
  });
}

qcad_status qcad_negativity(const qcad_matrix* rho, double* out) {
  return guarded([&] {
    require(rho && out, "qcad_negativity: null pointer");
    *out = qcad::negativity(rho->m);
  });
}

qcad_status qcad_cad_apply(const qcad_matrix* rho, const qcad_channel* ch,
                           qcad_matrix** out) {
  return guarded([&] {
    require(rho && ch && out, "qcad_cad_apply: null pointer");
    *out = wrap(qcad::cad_apply(rho->m, from_c(*ch)));
  });
}

qcad_status qcad_wm_qmr(const qcad_matrix* rho, const qcad_protection* prot,
                        const qcad_channel* ch, qcad_matrix** state,
                        double* probability) {
  return guarded([&] {
    require(rho && prot && ch && state, "qcad_wm_qmr: null pointer");
    qcad::ProtocolOutcome o = qcad::wm_qmr_pipeline(rho->m, from_c(*prot), from_c(*ch));
    if (probability) *probability = o.probability;
    *state = wrap(std::move(o.state));
  });
}

qcad_status qcad_eam_qmr(const qcad_matrix* rho, const qcad_protection* prot,
                         const qcad_channel* ch, qcad_eam_weighting weighting,
                         qcad_matrix** state, double* probability) {
  return guarded([&] {
    require(rho && prot && ch && state, "qcad_eam_qmr: null pointer");
    qcad::ProtocolOutcome o = qcad::eam_qmr_pipeline(
        rho->m, from_c(*prot), from_c(*ch), from_c(weighting));
    if (probability) *probability = o.probability;
    *state = wrap(std::move(o.state));
  });
}

qcad_status qcad_optimal_qmr_wm(double p, double q, double d1, double d2,
                                double* p_r, double* q_r) {
  return guarded([&] {
    require(p_r && q_r, "qcad_optimal_qmr_wm: null pointer");
    const auto rs = qcad::optimal_qmr_wm(p, q, d1, d2);
    *p_r = rs.p_r;
    *q_r = rs.q_r;
  });
}

qcad_status qcad_optimal_qmr_eam(double d1, double d2, double* p_r, double* q_r) {
  return guarded([&] {
    require(p_r && q_r, "qcad_optimal_qmr_eam: null pointer");
    const auto rs = qcad::optimal_qmr_eam(d1, d2);
    *p_r = rs.p_r;
    *q_r = rs.q_r;
  });
}

qcad_status qcad_config_parse(const char* json, const char* const* overrides,
                              size_t n_overrides, qcad_config** out) {
  return guarded([&] {
    require(json && out, "qcad_config_parse: null pointer");
    require(n_overrides == 0 || overrides, "qcad_config_parse: null overrides");
    std::vector<std::string> ov;
    for (size_t i = 0; i < n_overrides; ++i) {
      require(overrides[i] != nullptr, "qcad_config_parse: null override");
      ov.emplace_back(overrides[i]);
    }
    *out = new qcad_config{qcad::parse_config(json, ov)};
  });
}

void qcad_config_free(qcad_config* cfg) { delete cfg; }

const char* qcad_config_output(const qcad_config* cfg) {
  return cfg ? cfg->cfg.output.c_str() : nullptr;
}

qcad_status qcad_sweep_run(const qcad_config* cfg, qcad_records** out) {
  return guarded([&] {
    require(cfg && out, "qcad_sweep_run: null pointer");
    auto* r = new qcad_records{qcad::run_sweep(cfg->cfg), {}};
    r->states.resize(r->rows.size());
    *out = r;
  });
}

qcad_status qcad_evolve(const qcad_config* cfg, qcad_records** out) {
  return guarded([&] {
    require(cfg && out, "qcad_evolve: null pointer");
    auto r = std::make_unique<qcad_records>();
    for (auto& pr : qcad::evolve_first_point(cfg->cfg)) {
      r->rows.push_back(pr.record);
      r->states.push_back(std::move(pr.state));
    }
    *out = r.release();
  });
}

void qcad_records_free(qcad_records* r) { delete r; }

size_t qcad_records_size(const qcad_records* r) { return r ? r->rows.size() : 0; }

qcad_status qcad_records_get(const qcad_records* r, size_t index, qcad_record* out) {
  return guarded([&] {
    require(r && out, "qcad_records_get: null pointer");
    if (index >= r->rows.size())
      throw qcad::Error(qcad::ErrorCode::OutOfRange, "qcad_records_get: index");
    const qcad::SweepRecord& s = r->rows[index];
    out->state_class = s.state_class == qcad::StateClass::Class1 ? QCAD_CLASS1 : QCAD_CLASS2;
    out->d1 = s.d1;
    out->d2 = s.d2;
    out->mu = s.mu;
    out->p = s.p;
    out->q = s.q;
    out->p_r = s.p_r;
    out->q_r = s.q_r;
    out->scheme = to_c(s.scheme);
    out->has_values = s.negativity && s.probability ? 1 : 0;
    out->negativity = s.negativity.value_or(0.0);
    out->probability = s.probability.value_or(0.0);
  });
}

qcad_status qcad_records_state(const qcad_records* r, size_t index, qcad_matrix** out) {
  return guarded([&] {
    require(r && out, "qcad_records_state: null pointer");
    if (index >= r->rows.size())
      throw qcad::Error(qcad::ErrorCode::OutOfRange, "qcad_records_state: index");
    if (!r->states[index]) {
      throw qcad::Error(qcad::ErrorCode::InvalidArgument,
                        "qcad_records_state: no state stored for this record");
    }
    *out = wrap(*r->states[index]);
  });
}

qcad_status qcad_records_write_csv(const qcad_records* r, const char* path) {
  return guarded([&] {
    require(r && path, "qcad_records_write_csv: null pointer");
    qcad::emit_csv(path, r->rows);
  });
}

qcad_status qcad_records_write_outputs(const qcad_config* cfg, const qcad_records* r,
                                       const char* csv_path, size_t* n_files) {
  return guarded([&] {
    require(cfg && r, "qcad_records_write_outputs: null pointer");
    const std::string path = csv_path ? csv_path : cfg->cfg.output;
    const auto written = qcad::write_outputs(cfg->cfg, r->rows, path);
    if (n_files) *n_files = written.size();
  });
}

qcad_status qcad_verify(qcad_check_callback cb, void* user, size_t* n_failed) {
  return guarded([&] {
    size_t failed = 0;
    qcad::run_verification([&](const qcad::CheckResult& c) {
      if (!c.passed) ++failed;
      if (cb) cb(c.name.c_str(), c.passed ? 1 : 0, c.detail.c_str(), user);
    });
    if (n_failed) *n_failed = failed;
  });
}

}  // extern "C"
