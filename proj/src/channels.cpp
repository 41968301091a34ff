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

#include "qcad/channels.hpp"

#include <cmath>
#include <string>

#include "qcad/error.hpp"
#include "qcad/states.hpp"

namespace qcad {

namespace {

constexpr double kCompletenessTol = 1e-12;

void require_unit(double v, const char* name, const char* op) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw Error(ErrorCode::OutOfRange, std::string(op) + ": " + name + " = " +
                                           std::to_string(v) +
                                           " outside [0, 1]");
  }
}

ComplexMatrix sigma(std::size_t i, std::size_t j) {
  return ComplexMatrix::basis_op(kQutritDim, i, j);
}

}  // namespace

void ChannelParams::validate() const {
  require_unit(d1, "d1", "ChannelParams");
  require_unit(d2, "d2", "ChannelParams");
  require_unit(mu, "mu", "ChannelParams");
}

Damping damping_from_rates(const RateParams& r) {
  // -expm1(-x) keeps precision for small gamma*t; the t = inf limit gives 1.
  return {-std::expm1(-r.gamma1 * r.t), -std::expm1(-r.gamma2 * r.t)};
}

KrausSet::KrausSet(std::vector<ComplexMatrix> ops) : ops_(std::move(ops)) {
  if (ops_.empty()) {
    throw Error(ErrorCode::InvalidArgument, "KrausSet: no operators");
  }
  for (const auto& k : ops_) {
    if (k.dim() != ops_.front().dim()) {
      throw Error(ErrorCode::DimensionMismatch,
                  "KrausSet: operators of different dimension");
    }
  }
  if (completeness_defect() > kCompletenessTol) {
    throw Error(ErrorCode::InvalidArgument,
                "KrausSet: completeness defect " +
                    std::to_string(completeness_defect()));
  }
}

double KrausSet::completeness_defect() const {
  ComplexMatrix sum(dim());
  for (const auto& k : ops_) sum += dagger(k) * k;
  return max_abs_diff(sum, ComplexMatrix::identity(dim()));
}

ComplexMatrix KrausSet::apply(const ComplexMatrix& rho) const {
  if (rho.dim() != dim()) {
    throw Error(ErrorCode::DimensionMismatch,
                "KrausSet::apply: state dimension " + std::to_string(rho.dim()) +
                    " != " + std::to_string(dim()));
  }
  ComplexMatrix out(dim());
  for (const auto& k : ops_) out += sandwich(k, rho);
  return out;
}

KrausSet ad_kraus_single(double d1, double d2) {
  require_unit(d1, "d1", "ad_kraus_single");
  require_unit(d2, "d2", "ad_kraus_single");
  const double e0[] = {1.0, std::sqrt(1.0 - d1), std::sqrt(1.0 - d2)};
  ComplexMatrix e1(kQutritDim), e2(kQutritDim);
  e1(0, 1) = std::sqrt(d1);
  e2(0, 2) = std::sqrt(d2);
  return KrausSet({ComplexMatrix::diagonal(e0), e1, e2});
}

KrausSet ad_kraus_pair(double d1, double d2) {
  const KrausSet single = ad_kraus_single(d1, d2);
  std::vector<ComplexMatrix> ops;
  ops.reserve(single.size() * single.size());
  for (const auto& a : single.operators())
    for (const auto& b : single.operators()) ops.push_back(kron(a, b));
  return KrausSet(std::move(ops));
}

KrausSet fcad_kraus(double d1, double d2) {
  require_unit(d1, "d1", "fcad_kraus");
  require_unit(d2, "d2", "fcad_kraus");
  const std::size_t k00 = ket_index(0, 0), k11 = ket_index(1, 1),
                    k22 = ket_index(2, 2);
  ComplexMatrix a00 = ComplexMatrix::identity(kPairDim);
  a00(k11, k11) = std::sqrt(1.0 - d1);
  a00(k22, k22) = std::sqrt(1.0 - d2);
  ComplexMatrix a11(kPairDim), a22(kPairDim);
  a11(k00, k11) = std::sqrt(d1);
  a22(k00, k22) = std::sqrt(d2);
  return KrausSet({std::move(a00), std::move(a11), std::move(a22)});
}

CadChannel::CadChannel(const ChannelParams& params)
    : params_(params),
      uncorrelated_((params.validate(), ad_kraus_pair(params.d1, params.d2))),
      correlated_(fcad_kraus(params.d1, params.d2)) {}

ComplexMatrix CadChannel::apply(const ComplexMatrix& rho) const {
  ComplexMatrix out = uncorrelated_.apply(rho);
  out *= 1.0 - params_.mu;
  out += params_.mu * correlated_.apply(rho);
  return out;
}

ComplexMatrix cad_apply(const ComplexMatrix& rho, const ChannelParams& params) {
  return CadChannel(params).apply(rho);
}

void LindbladGenerator::add_jump(double rate, ComplexMatrix jump) {
  ComplexMatrix jd = dagger(jump);
  ComplexMatrix number = jd * jump;
  jumps_.push_back({rate, std::move(jump), std::move(jd), std::move(number)});
}

ComplexMatrix LindbladGenerator::operator()(const ComplexMatrix& rho) const {
  ComplexMatrix out(rho.dim());
  for (const auto& j : jumps_) {
    ComplexMatrix term = j.op * rho * j.op_dagger;
    ComplexMatrix anti = j.number * rho + rho * j.number;
    anti *= 0.5;
    term -= anti;
    term *= j.rate;
    out += term;
  }
  return out;
}

LindbladGenerator single_qutrit_generator(double gamma1, double gamma2) {
  LindbladGenerator g;
  g.add_jump(gamma1, sigma(0, 1));
  g.add_jump(gamma2, sigma(0, 2));
  return g;
}

LindbladGenerator fcad_generator(double gamma1, double gamma2) {
  LindbladGenerator g;
  g.add_jump(gamma1, kron(sigma(0, 1), sigma(0, 1)));
  g.add_jump(gamma2, kron(sigma(0, 2), sigma(0, 2)));
  return g;
}

ComplexMatrix lindblad_rhs_single(const ComplexMatrix& rho, double gamma1,
                                  double gamma2) {
  if (rho.dim() != kQutritDim) {
    throw Error(ErrorCode::DimensionMismatch,
                "lindblad_rhs_single: expected a 3x3 state");
  }
  return single_qutrit_generator(gamma1, gamma2)(rho);
}

ComplexMatrix lindblad_rhs_fcad(const ComplexMatrix& rho, double gamma1,
                                double gamma2) {
  if (rho.dim() != kPairDim) {
    throw Error(ErrorCode::DimensionMismatch,
                "lindblad_rhs_fcad: expected a 9x9 state");
  }
  return fcad_generator(gamma1, gamma2)(rho);
}

ComplexMatrix integrate_rk4(const Rhs& rhs, const ComplexMatrix& rho0,
                            double t_final, int steps) {
  if (steps < 1) {
    throw Error(ErrorCode::InvalidArgument, "integrate_rk4: steps must be >= 1");
  }
  const double h = t_final / steps;
  ComplexMatrix rho = rho0;
  for (int s = 0; s < steps; ++s) {
    const ComplexMatrix k1 = rhs(rho);
    const ComplexMatrix k2 = rhs(rho + (0.5 * h) * k1);
    const ComplexMatrix k3 = rhs(rho + (0.5 * h) * k2);
    const ComplexMatrix k4 = rhs(rho + h * k3);
    ComplexMatrix incr = k1 + 2.0 * k2;
    incr += 2.0 * k3;
    incr += k4;
    incr *= h / 6.0;
    rho = hermitize(rho + incr);
  }
  return rho;
}

}  // namespace qcad
