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

// qcad command-line front end.
//
//   qcad evolve|sweep|compare|verify [--config <path>] [--out <path>]
//        [--set key=value ...]
//
// Exit status: 0 success, 1 invalid configuration or usage, 2 runtime
// failure (I/O, or a sweep in which no grid point had nonzero probability).

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "qcad/qcad.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

struct ConfigFree {
  void operator()(qcad_config* c) const { qcad_config_free(c); }
};
struct RecordsFree {
  void operator()(qcad_records* r) const { qcad_records_free(r); }
};
struct MatrixFree {
  void operator()(qcad_matrix* m) const { qcad_matrix_free(m); }
};
using ConfigPtr = std::unique_ptr<qcad_config, ConfigFree>;
using RecordsPtr = std::unique_ptr<qcad_records, RecordsFree>;
using MatrixPtr = std::unique_ptr<qcad_matrix, MatrixFree>;

struct Options {
  std::string config;
  std::string out;
  std::vector<std::string> sets;
};

int exit_code_for(qcad_status s) {
  switch (s) {
    case QCAD_OK: return kExitOk;
    case QCAD_ERR_PARSE:
    case QCAD_ERR_VALIDATION:
    case QCAD_ERR_INVALID_ARGUMENT:
    case QCAD_ERR_OUT_OF_RANGE:
    case QCAD_ERR_NOT_NORMALIZED: return kExitValidation;
    default: return kExitRuntime;
  }
}

int report(qcad_status s) {
  std::cerr << "qcad: " << qcad_status_string(s) << ": " << qcad_last_error() << "\n";
  return exit_code_for(s);
}

// Reads the config file (or "{}" when none was given) and parses it with the
// --set overrides. Returns an exit code; 0 fills `out`.
int load_config(const Options& opt, const std::vector<std::string>& extra,
                ConfigPtr& out) {
  std::string text = "{}";
  if (!opt.config.empty()) {
    std::ifstream in(opt.config, std::ios::binary);
    if (!in) {
      std::cerr << "qcad: cannot read config file " << opt.config << "\n";
      return kExitRuntime;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  std::vector<const char*> ov;
  for (const std::string& s : opt.sets) ov.push_back(s.c_str());
  for (const std::string& s : extra) ov.push_back(s.c_str());
  qcad_config* cfg = nullptr;
  if (qcad_status s = qcad_config_parse(text.c_str(), ov.data(), ov.size(), &cfg))
    return report(s);
  out.reset(cfg);
  return kExitOk;
}

const char* scheme_name(qcad_scheme s) {
  switch (s) {
    case QCAD_SCHEME_WM: return "wm";
    case QCAD_SCHEME_EAM: return "eam";
    default: return "none";
  }
}

void print_matrix(const qcad_matrix* m) {
  const size_t n = qcad_matrix_dim(m);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      double re = 0.0, im = 0.0;
      qcad_matrix_get(m, i, j, &re, &im);
      if (re == 0.0) re = 0.0;
      if (im == 0.0) im = 0.0;
      std::printf("%s%+.6f%+.6fi", j ? "  " : "  ", re, im);
    }
    std::printf("\n");
  }
}

int cmd_evolve(const Options& opt) {
  ConfigPtr cfg;
  if (int rc = load_config(opt, {}, cfg)) return rc;
  qcad_records* raw = nullptr;
  if (qcad_status s = qcad_evolve(cfg.get(), &raw)) return report(s);
  RecordsPtr recs(raw);

  bool any_value = false;
  for (size_t i = 0; i < qcad_records_size(recs.get()); ++i) {
    qcad_record r{};
    qcad_records_get(recs.get(), i, &r);
    std::printf("class%d scheme=%s d1=%.12g d2=%.12g mu=%.12g p=%.12g q=%.12g "
                "p_r=%.12g q_r=%.12g\n",
                r.state_class == QCAD_CLASS1 ? 1 : 2, scheme_name(r.scheme), r.d1,
                r.d2, r.mu, r.p, r.q, r.p_r, r.q_r);
    if (!r.has_values) {
      std::printf("  zero success probability\n");
      continue;
    }
    any_value = true;
    qcad_matrix* m = nullptr;
    if (qcad_status s = qcad_records_state(recs.get(), i, &m)) return report(s);
    MatrixPtr state(m);
    print_matrix(state.get());
    std::printf("negativity %.12g\nprobability %.12g\n", r.negativity, r.probability);
  }
  if (!opt.out.empty()) {
    if (qcad_status s = qcad_records_write_csv(recs.get(), opt.out.c_str()))
      return report(s);
  }
  return any_value ? kExitOk : kExitRuntime;
}

int cmd_sweep(const Options& opt, const std::vector<std::string>& extra) {
  ConfigPtr cfg;
  if (int rc = load_config(opt, extra, cfg)) return rc;
  qcad_records* raw = nullptr;
  if (qcad_status s = qcad_sweep_run(cfg.get(), &raw)) return report(s);
  RecordsPtr recs(raw);

  const size_t n = qcad_records_size(recs.get());
  size_t valued = 0;
  for (size_t i = 0; i < n; ++i) {
    qcad_record r{};
    qcad_records_get(recs.get(), i, &r);
    valued += r.has_values ? 1 : 0;
  }
  const std::string path = opt.out.empty() ? qcad_config_output(cfg.get()) : opt.out;
  size_t files = 0;
  if (qcad_status s =
          qcad_records_write_outputs(cfg.get(), recs.get(), path.c_str(), &files))
    return report(s);
  std::cerr << "qcad: " << n << " rows (" << n - valued
            << " with zero probability), " << files << " file(s) written to "
            << path << "\n";
  if (n > 0 && valued == 0) {
    std::cerr << "qcad: every grid point had zero success probability\n";
    return kExitRuntime;
  }
  return kExitOk;
}

void print_check(const char* name, int passed, const char* detail, void*) {
  std::printf("%s  %s  %s\n", passed ? "PASS" : "FAIL", name, detail);
  std::fflush(stdout);
}

int cmd_verify() {
  size_t failed = 0;
  if (qcad_status s = qcad_verify(print_check, nullptr, &failed)) return report(s);
  std::printf("%zu check(s) failed\n", failed);
  return failed == 0 ? kExitOk : kExitRuntime;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-qutrit entanglement under correlated amplitude damping"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config, "JSON configuration file");
    sub->add_option("--out", opt.out, "Output path (overrides the config)");
    sub->add_option("--set", opt.sets, "Override a config field, key=value")
        ->take_all()
        ->allow_extra_args(false);
  };
  CLI::App* evolve = app.add_subcommand("evolve", "Evaluate the first grid point and print the state");
  CLI::App* sweep = app.add_subcommand("sweep", "Evaluate the full grid and write CSV/SVG");
  CLI::App* compare = app.add_subcommand("compare", "Sweep with paired wm and eam rows");
  CLI::App* verify = app.add_subcommand("verify", "Run the built-in invariant and oracle checks");
  for (CLI::App* sub : {evolve, sweep, compare, verify}) add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitValidation;
  }

  if (*evolve) return cmd_evolve(opt);
  if (*sweep) return cmd_sweep(opt, {});
  if (*compare) return cmd_sweep(opt, {"scheme=\"compare\""});
  return cmd_verify();
}
