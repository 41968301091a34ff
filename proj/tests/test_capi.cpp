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

// Exercises libqcad through its C interface only.

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "qcad/qcad.h"

namespace {

constexpr qcad_amplitudes kBalanced = {0.5773502691896258, 0.5773502691896258, 0.0,
                                       0.5773502691896258, 0.0};

struct Matrix {
  qcad_matrix* m = nullptr;
  ~Matrix() { qcad_matrix_free(m); }
};

struct Config {
  qcad_config* c = nullptr;
  ~Config() { qcad_config_free(c); }
};

struct Records {
  qcad_records* r = nullptr;
  ~Records() { qcad_records_free(r); }
};

double re_at(const qcad_matrix* m, size_t i, size_t j) {
  double re = 0, im = 0;
  REQUIRE(qcad_matrix_get(m, i, j, &re, &im) == QCAD_OK);
  return re;
}

}  // namespace

TEST_CASE("version and status strings") {
  CHECK(std::string(qcad_version()) == "1.0.0");
  CHECK(std::string(qcad_status_string(QCAD_OK)) == "ok");
  CHECK(std::string(qcad_status_string(QCAD_ERR_ZERO_PROBABILITY)).size() > 0);
  CHECK(qcad_status_string(static_cast<qcad_status>(99)) != nullptr);
}

TEST_CASE("matrix handles") {
  const double re[4] = {1, 2, 3, 4};
  const double im[4] = {0, -1, 1, 0};
  Matrix m;
  REQUIRE(qcad_matrix_create(2, re, im, &m.m) == QCAD_OK);
  CHECK(qcad_matrix_dim(m.m) == 2);
  double r = 0, i = 0;
  REQUIRE(qcad_matrix_get(m.m, 0, 1, &r, &i) == QCAD_OK);
  CHECK(r == 2);
  CHECK(i == -1);
  CHECK(qcad_matrix_get(m.m, 2, 0, &r, &i) == QCAD_ERR_OUT_OF_RANGE);
  CHECK(std::string(qcad_last_error()).size() > 0);

  Matrix real_only;
  REQUIRE(qcad_matrix_create(2, re, nullptr, &real_only.m) == QCAD_OK);
  REQUIRE(qcad_matrix_get(real_only.m, 1, 0, &r, &i) == QCAD_OK);
  CHECK(r == 3);
  CHECK(i == 0);

  qcad_matrix* none = nullptr;
  CHECK(qcad_matrix_create(2, nullptr, nullptr, &none) == QCAD_ERR_INVALID_ARGUMENT);
  CHECK(none == nullptr);
  CHECK(qcad_matrix_create(0, re, im, &none) == QCAD_ERR_INVALID_ARGUMENT);
  qcad_matrix_free(nullptr);
  CHECK(qcad_matrix_dim(nullptr) == 0);
}

TEST_CASE("state, channel and negativity") {
  Matrix rho;
  REQUIRE(qcad_make_state(QCAD_CLASS1, &kBalanced, &rho.m) == QCAD_OK);
  CHECK(qcad_matrix_dim(rho.m) == 9);
  CHECK(std::abs(re_at(rho.m, 0, 8) - 1.0 / 3.0) < 1e-15);
  double n = 0;
  REQUIRE(qcad_negativity(rho.m, &n) == QCAD_OK);
  CHECK(std::abs(n - 1.0) < 1e-12);

  // Fully correlated damping sends |11> and |22> to |00>.
  const qcad_channel full{1.0, 1.0, 1.0};
  Matrix out;
  REQUIRE(qcad_cad_apply(rho.m, &full, &out.m) == QCAD_OK);
  CHECK(std::abs(re_at(out.m, 0, 0) - 1.0) < 1e-15);
  REQUIRE(qcad_negativity(out.m, &n) == QCAD_OK);
  CHECK(n < 1e-12);
  // Class 2 keeps (|02> + |20>) / sqrt2 with weight 2/3: N = (sqrt5 - 1) / 6.
  Matrix rho2, out2;
  REQUIRE(qcad_make_state(QCAD_CLASS2, &kBalanced, &rho2.m) == QCAD_OK);
  REQUIRE(qcad_cad_apply(rho2.m, &full, &out2.m) == QCAD_OK);
  REQUIRE(qcad_negativity(out2.m, &n) == QCAD_OK);
  CHECK(std::abs(n - (std::sqrt(5.0) - 1.0) / 6.0) < 1e-9);

  const qcad_amplitudes bad = {1.0, 1.0, 0.0, 0.0, 0.0};
  qcad_matrix* none = nullptr;
  CHECK(qcad_make_state(QCAD_CLASS1, &bad, &none) == QCAD_ERR_NOT_NORMALIZED);
  CHECK(qcad_make_state(static_cast<qcad_state_class>(7), &kBalanced, &none) ==
        QCAD_ERR_INVALID_ARGUMENT);
  const qcad_channel out_of_range{1.5, 0.0, 0.0};
  CHECK(qcad_cad_apply(rho.m, &out_of_range, &none) == QCAD_ERR_OUT_OF_RANGE);
  CHECK(std::string(qcad_last_error()).find("d1") != std::string::npos);
  CHECK(qcad_negativity(nullptr, &n) == QCAD_ERR_INVALID_ARGUMENT);

  const double id[4] = {1, 0, 0, 1};
  Matrix small;
  REQUIRE(qcad_matrix_create(2, id, nullptr, &small.m) == QCAD_OK);
  CHECK(qcad_negativity(small.m, &n) == QCAD_ERR_DIMENSION_MISMATCH);
}

TEST_CASE("protection protocols") {
  Matrix rho;
  REQUIRE(qcad_make_state(QCAD_CLASS2, &kBalanced, &rho.m) == QCAD_OK);
  const qcad_channel ch{0.5, 0.5, 1.0};

  double pr = 0, qr = 0;
  REQUIRE(qcad_optimal_qmr_eam(0.5, 0.5, &pr, &qr) == QCAD_OK);
  const qcad_protection eam{0, 0, pr, qr};
  Matrix out;
  double prob = 0, n = 0;
  REQUIRE(qcad_eam_qmr(rho.m, &eam, &ch, QCAD_EAM_JOINT, &out.m, &prob) == QCAD_OK);
  REQUIRE(qcad_negativity(out.m, &n) == QCAD_OK);
  CHECK(std::abs(n - 1.0) < 1e-10);
  CHECK(prob > 0.0);

  REQUIRE(qcad_optimal_qmr_wm(0.9, 0.9, 0.5, 0.5, &pr, &qr) == QCAD_OK);
  CHECK(std::abs(pr - (1.0 - 0.1 * 0.5)) < 1e-15);
  const qcad_protection wm{0.9, 0.9, pr, qr};
  Matrix wout;
  REQUIRE(qcad_wm_qmr(rho.m, &wm, &ch, &wout.m, &prob) == QCAD_OK);
  CHECK(prob > 0.0);
  CHECK(prob <= 1.0);

  qcad_matrix* none = nullptr;
  const qcad_channel dead{1.0, 1.0, 0.5};
  const qcad_protection eam_dead{0, 0, 1.0, 1.0};
  CHECK(qcad_eam_qmr(rho.m, &eam_dead, &dead, QCAD_EAM_JOINT, &none, &prob) ==
        QCAD_ERR_ZERO_PROBABILITY);
  CHECK(none == nullptr);
  CHECK(qcad_eam_qmr(rho.m, &eam, &ch, static_cast<qcad_eam_weighting>(5), &none, &prob) ==
        QCAD_ERR_INVALID_ARGUMENT);
}

TEST_CASE("configuration errors map to statuses") {
  Config cfg;
  CHECK(qcad_config_parse("{", nullptr, 0, &cfg.c) == QCAD_ERR_PARSE);
  CHECK(qcad_config_parse(R"({"grid": {"mu": [1, 0, 3]}})", nullptr, 0, &cfg.c) ==
        QCAD_ERR_VALIDATION);
  CHECK(std::string(qcad_last_error()).find("grid.mu") != std::string::npos);
  CHECK(cfg.c == nullptr);
  CHECK(qcad_config_parse(nullptr, nullptr, 0, &cfg.c) == QCAD_ERR_INVALID_ARGUMENT);

  const char* ov[] = {"output=run.csv"};
  REQUIRE(qcad_config_parse("{}", ov, 1, &cfg.c) == QCAD_OK);
  CHECK(std::string(qcad_config_output(cfg.c)) == "run.csv");
}

TEST_CASE("sweeps through records handles") {
  Config cfg;
  const char* ov[] = {"scheme=compare", "d=[0,1,5]", "mu=0.6", "p=0.9",
                      "state_class=both"};
  REQUIRE(qcad_config_parse("{}", ov, 5, &cfg.c) == QCAD_OK);
  Records recs;
  REQUIRE(qcad_sweep_run(cfg.c, &recs.r) == QCAD_OK);
  REQUIRE(qcad_records_size(recs.r) == 2 * 5 * 2);
  qcad_record row{};
  REQUIRE(qcad_records_get(recs.r, 1, &row) == QCAD_OK);
  CHECK(row.state_class == QCAD_CLASS1);
  CHECK(row.scheme == QCAD_SCHEME_EAM);
  CHECK(row.has_values == 1);
  CHECK(std::abs(row.negativity - 1.0) < 1e-12);
  REQUIRE(qcad_records_get(recs.r, 19, &row) == QCAD_OK);
  CHECK(row.state_class == QCAD_CLASS2);
  CHECK(row.d1 == 1.0);
  CHECK(row.has_values == 0);
  CHECK(qcad_records_get(recs.r, 20, &row) == QCAD_ERR_OUT_OF_RANGE);

  qcad_matrix* none = nullptr;
  CHECK(qcad_records_state(recs.r, 0, &none) == QCAD_ERR_INVALID_ARGUMENT);

  const auto dir = std::filesystem::temp_directory_path() /
                   ("qcad_capi_" + std::to_string(std::random_device{}()));
  std::filesystem::create_directories(dir);
  const std::string csv = (dir / "out.csv").string();
  size_t n_files = 0;
  REQUIRE(qcad_records_write_outputs(cfg.c, recs.r, csv.c_str(), &n_files) == QCAD_OK);
  CHECK(n_files == 1);
  std::ifstream is(csv);
  std::string header;
  std::getline(is, header);
  CHECK(header == "state_class,d1,d2,mu,p,q,p_r,q_r,scheme,negativity,probability");
  CHECK(qcad_records_write_csv(recs.r, (dir / "no" / "x.csv").string().c_str()) ==
        QCAD_ERR_IO);
  std::filesystem::remove_all(dir);
}

TEST_CASE("evolve keeps the output states") {
  Config cfg;
  const char* ov[] = {"scheme=wm", "d=0.4", "mu=0.3", "p=0.5"};
  REQUIRE(qcad_config_parse("{}", ov, 4, &cfg.c) == QCAD_OK);
  Records recs;
  REQUIRE(qcad_evolve(cfg.c, &recs.r) == QCAD_OK);
  REQUIRE(qcad_records_size(recs.r) == 1);
  qcad_record row{};
  REQUIRE(qcad_records_get(recs.r, 0, &row) == QCAD_OK);
  Matrix state;
  REQUIRE(qcad_records_state(recs.r, 0, &state.m) == QCAD_OK);
  double n = 0;
  REQUIRE(qcad_negativity(state.m, &n) == QCAD_OK);
  CHECK(std::abs(n - row.negativity) < 1e-15);
  double trace = 0;
  for (size_t k = 0; k < 9; ++k) trace += re_at(state.m, k, k);
  CHECK(std::abs(trace - 1.0) < 1e-12);
}

TEST_CASE("self-check reports through the callback") {
  struct Tally {
    int seen = 0;
    int passed = 0;
  } tally;
  size_t failed = 99;
  REQUIRE(qcad_verify(
              [](const char* name, int ok, const char*, void* user) {
                auto* t = static_cast<Tally*>(user);
                CHECK(name != nullptr);
                ++t->seen;
                t->passed += ok ? 1 : 0;
              },
              &tally, &failed) == QCAD_OK);
  CHECK(tally.seen > 0);
  CHECK(failed == 0);
  CHECK(tally.passed == tally.seen);
}
