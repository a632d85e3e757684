/*
 * Copyright 2026 The lmwave Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "lmw/limit.h"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <string>

#include "lmw/errors.h"
#include "lmw/quadrature.h"
#include "lmw/spectra.h"

namespace lmw {
namespace {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// int_R |t|^a |1-t|^b dt split at 0, 1/2 and 1.
LimitValue two_point_integral(double a, double b, double rel_tol) {
  quad::ShellOptions opt;
  opt.rel_tol = rel_tol;
  const auto neg = quad::integrate_half_line(
      [=](double u) { return std::pow(u, a) * std::pow(1.0 + u, b); }, opt);
  const auto left = quad::integrate_endpoint(
      [=](double u) { return std::pow(u, a) * std::pow(1.0 - u, b); }, 0.5, opt);
  const auto right = quad::integrate_endpoint(
      [=](double v) { return std::pow(v, b) * std::pow(1.0 - v, a); }, 0.5, opt);
  const auto pos = quad::integrate_half_line(
      [=](double v) { return std::pow(v, b) * std::pow(1.0 + v, a); }, opt);
  if (!(neg.converged && left.converged && right.converged && pos.converged))
    throw NumericError("gamma_factor: singular integral did not converge");
  return {neg.value + left.value + right.value + pos.value,
          neg.error + left.error + right.error + pos.error};
}

void check_q(int q, double d) {
  const int qc = critical_order(d);
  if (q < 1) throw DomainError("chaos order q must be >= 1");
  if (q > qc)
    throw DomainError("q=" + std::to_string(q) + " violates q < 1/(1-2d) (critical order " +
                      std::to_string(qc) + " at d=" + std::to_string(d) + "); limit integrals diverge");
}

LimitValue cov_with_gamma(const LimitSpec& spec, const LimitValue& gam, int m, long k, int mp,
                          long kp, const LimitOptions& opt) {
  const double a = spec.gamma_bar(m), b = spec.gamma_bar(mp);
  const double delta = static_cast<double>(k) * a - static_cast<double>(kp) * b;
  const double p = spec.exponent();
  const LimitTransfer& h = *spec.hinf;
  const double al = h.alpha();
  if (!(2.0 * al > p + 1.0))
    throw NumericError("declared decay alpha=" + std::to_string(al) +
                       " too small for an integrable tail at exponent " + std::to_string(p));

  auto f = [&](double s) {
    const cplx ha = h(a * s);
    const cplx hb = (a == b) ? ha : h(b * s);
    return (std::polar(1.0, s * delta) * ha * std::conj(hb)).real() * std::pow(s, p);
  };
  quad::ShellOptions so;
  so.rel_tol = opt.rel_tol;
  so.tail_rel_tol = opt.tail_rel;
  so.pivot = 1.0 / std::max(a, b);
  so.max_panel_width = opt.panel_scale * std::numbers::pi /
                       (1.0 + std::abs(delta) + (a + b) * std::max(h.support(), 1.0));
  const double C = h.bound();
  const double e = 2.0 * al - p - 1.0;
  so.upper_tail_bound = [=](double S) { return C * C * std::pow(a * b, -al) * std::pow(S, -e) / e; };
  const auto r = quad::integrate_half_line(f, so);
  if (!r.converged)
    throw NumericError("limit covariance integral did not converge: hhat_inf is not in S_{q,d}^{(K)}");
  const double scale = factorial(spec.q) * std::sqrt(a * b) * 2.0;
  const double v = scale * gam.value * r.value;
  const double err = scale * (gam.value * r.error + gam.error * std::abs(r.value));
  return {v, err};
}

}  // namespace

void LimitSpec::validate() const {
  if (!hinf) throw PreconditionError("LimitSpec: missing limit transfer function");
  check_q(q, d);
  if (K < 0) throw DomainError("K must be >= 0");
  if (K > hinf->M())
    throw PreconditionError("K=" + std::to_string(K) + " exceeds M=" + std::to_string(hinf->M()) +
                            " (M >= K required)");
  if (!(memory_param(d, q) + K > 0.0))
    throw DomainError("d(q) + K must be positive for the limit scaling");
}

LimitValue gamma_factor(int q, double d, double rel_tol) {
  check_q(q, d);
  LimitValue out{1.0, 0.0};
  double rel_err = 0.0;
  for (int i = 2; i <= q; ++i) {
    const double a = q - i - 2.0 * d * (q - i + 1);
    const auto part = two_point_integral(a, -2.0 * d, rel_tol);
    out.value *= part.value;
    rel_err += part.error / std::abs(part.value);
  }
  out.error = rel_err * std::abs(out.value);
  return out;
}

Membership membership_S(const std::function<std::complex<double>(double)>& theta_hat, int q,
                        double d, int K) {
  const double p = q - 1.0 - 2.0 * d * q - 2.0 * K;
  quad::ShellOptions opt;
  opt.rel_tol = 1e-8;
  opt.max_shells = 200;
  opt.max_panel_width = 1.0;
  Membership out;
  out.finite = true;
  for (double sign : {1.0, -1.0}) {
    const auto r = quad::integrate_half_line(
        [&](double x) { return std::norm(theta_hat(sign * x)) * std::pow(x, p); }, opt);
    out.finite = out.finite && r.converged && std::isfinite(r.value);
    out.value += r.value;
    out.error += r.error;
  }
  return out;
}

LimitValue limit_cov(const LimitSpec& spec, int m, long k, int mp, long kp, const LimitOptions& opt) {
  spec.validate();
  const auto gam = gamma_factor(spec.q, spec.d);
  return cov_with_gamma(spec, gam, m, k, mp, kp, opt);
}

LimitCov limit_cov_block(const LimitSpec& spec, const std::vector<std::pair<int, long>>& index,
                         const LimitOptions& opt) {
  spec.validate();
  const auto gam = gamma_factor(spec.q, spec.d);
  LimitCov out;
  out.index = index;
  const std::size_t n = index.size();
  out.cov.assign(n * n, 0.0);
  out.err.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const auto v = cov_with_gamma(spec, gam, index[i].first, index[i].second, index[j].first,
                                    index[j].second, opt);
      out.cov[i * n + j] = out.cov[j * n + i] = v.value;
      out.err[i * n + j] = out.err[j * n + i] = v.error;
    }
  Eigen::MatrixXd A(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) A(i, j) = out.cov[i * n + j];
  out.trace = A.trace();
  if (n > 0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A, Eigen::EigenvaluesOnly);
    out.min_eigenvalue = es.eigenvalues().minCoeff();
  }
  return out;
}

void write_limit_cov_csv(std::ostream& os, const LimitCov& block) {
  os << std::setprecision(12) << "m,k,mp,kp,cov,err\n";
  const std::size_t n = block.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      os << block.index[i].first << ',' << block.index[i].second << ',' << block.index[j].first
         << ',' << block.index[j].second << ',' << block.at(i, j) << ',' << block.error_at(i, j)
         << '\n';
}

double ss_exponent(int q, double d, int K) { return K + q * d - 0.5 * q; }

std::pair<double, double> theorem_normalization(double c_q0, double fstar0, int q0) {
  if (c_q0 == 0.0) throw DomainError("theorem_normalization: c_q0 must be nonzero");
  const double base = c_q0 * std::pow(fstar0, 0.5 * q0);
  return {base, base / factorial(q0)};
}

}  // namespace lmw
