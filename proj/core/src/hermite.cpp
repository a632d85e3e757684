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

#include "lmw/hermite.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "json.hpp"
#include "lmw/errors.h"

namespace lmw {

double hermite_eval(int q, double x) {
  if (q < 0) throw DomainError("hermite_eval: q must be >= 0");
  if (q == 0) return 1.0;
  double prev = 1.0, cur = x;
  for (int k = 1; k < q; ++k) {
    const double next = x * cur - k * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

void hermite_all(double x, std::span<double> out) {
  if (out.empty()) return;
  out[0] = 1.0;
  if (out.size() > 1) out[1] = x;
  for (std::size_t k = 2; k < out.size(); ++k)
    out[k] = x * out[k - 1] - static_cast<double>(k - 1) * out[k - 2];
}

GaussHermiteRule gauss_hermite(int n) {
  if (n < 1) throw DomainError("gauss_hermite: need at least one node");
  // Initial roots from the Jacobi matrix of the physicists' weight
  // (Golub-Welsch), polished by Newton on the orthonormal recurrence, which
  // also yields the weights.
  const double pim4 = std::pow(std::numbers::pi, -0.25);
  std::vector<double> x(n), w(n);
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n), sub(std::max(n - 1, 0));
  for (int k = 1; k < n; ++k) sub(k - 1) = std::sqrt(0.5 * k);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = es.eigenvalues()(n - 1 - i);
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = pim4, p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / j) * p2 - std::sqrt(static_cast<double>(j - 1) / j) * p3;
      }
      pp = std::sqrt(2.0 * n) * p2;
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) <= 1e-15 * std::max(1.0, std::abs(z))) break;
    }
    x[i] = z;
    x[n - 1 - i] = -z;
    w[i] = w[n - 1 - i] = 2.0 / (pp * pp);
  }
  GaussHermiteRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double inv_sqrt_pi = 1.0 / std::sqrt(std::numbers::pi);
  for (int i = 0; i < n; ++i) {
    // Ascending order.
    rule.nodes[i] = std::sqrt(2.0) * x[n - 1 - i];
    rule.weights[i] = w[n - 1 - i] * inv_sqrt_pi;
  }
  return rule;
}

NonlinearFilter make_filter(std::string_view name) {
  if (name == "identity") return {"identity", [](double x) { return x; }};
  if (name == "square") return {"square", [](double x) { return x * x - 1.0; }};
  if (name == "cube") return {"cube", [](double x) { return x * x * x; }};
  if (name == "centered-exp") {
    const double shift = std::exp(0.5);
    return {"centered-exp", [shift](double x) { return std::exp(x) - shift; }};
  }
  if (name.starts_with("hermite:")) {
    const std::string digits(name.substr(8));
    std::size_t used = 0;
    int q = 0;
    try {
      q = std::stoi(digits, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != digits.size() || q < 1) throw std::invalid_argument("bad Hermite filter '" + std::string(name) + "'");
    return {std::string(name), [q](double x) { return hermite_eval(q, x); }};
  }
  throw std::invalid_argument("unknown nonlinear filter '" + std::string(name) + "'");
}

double HermiteExpansion::coeff(int q) const {
  if (q < 1 || q > order()) return 0.0;
  return coeffs[q - 1];
}

double HermiteExpansion::leading_weight() const {
  if (rank < 1) return 0.0;
  return coeff(rank) / std::tgamma(rank + 1.0);
}

std::string HermiteExpansion::to_json() const {
  nlohmann::json j;
  j["rank"] = rank;
  j["coeffs"] = coeffs;
  j["l2"] = l2;
  return j.dump();
}

HermiteExpansion HermiteExpansion::from_json(std::string_view text) {
  const auto j = nlohmann::json::parse(text);
  HermiteExpansion e;
  e.coeffs = j.at("coeffs").get<std::vector<double>>();
  e.rank = j.at("rank").get<int>();
  e.l2 = j.at("l2").get<double>();
  double fact = 1.0;
  for (int q = 1; q <= e.order(); ++q) fact *= q;
  if (!e.coeffs.empty()) e.tail_mass = e.coeffs.back() * e.coeffs.back() / fact;
  return e;
}

HermiteExpansion hermite_coeffs(const std::function<double(double)>& g, const HermiteOptions& opt) {
  if (opt.order < 1) throw DomainError("hermite_coeffs: truncation order must be >= 1");
  const auto rule = gauss_hermite(opt.nodes);
  std::vector<double> c(opt.order + 1, 0.0), h(opt.order + 1);
  double second = 0.0;
  // Accumulate against the orthonormal polynomials H_q / sqrt(q!) to keep
  // the summands small, then rescale.
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double x = rule.nodes[i];
    const double gx = g(x);
    h[0] = 1.0;
    if (opt.order >= 1) h[1] = x;
    for (int q = 2; q <= opt.order; ++q)
      h[q] = (x * h[q - 1] - std::sqrt(q - 1.0) * h[q - 2]) / std::sqrt(static_cast<double>(q));
    for (int q = 0; q <= opt.order; ++q) c[q] += rule.weights[i] * gx * h[q];
    second += rule.weights[i] * gx * gx;
  }
  {
    double sf = 1.0;
    for (int q = 1; q <= opt.order; ++q) {
      sf *= std::sqrt(static_cast<double>(q));
      c[q] *= sf;
    }
  }
  HermiteExpansion e;
  e.c0 = c[0];
  if (std::abs(c[0]) > opt.center_tol * std::max(std::sqrt(second), 1.0))
    throw DomainError("nonlinear filter is not centered: E G(X) = " + std::to_string(c[0]));
  e.coeffs.assign(c.begin() + 1, c.end());
  // Snapping compares c_q / sqrt(q!), the coordinates in the orthonormal basis.
  double cmax = 0.0, sf = 1.0;
  for (int q = 1; q <= opt.order; ++q) {
    sf *= std::sqrt(static_cast<double>(q));
    cmax = std::max(cmax, std::abs(e.coeffs[q - 1]) / sf);
  }
  double fact = 1.0;
  sf = 1.0;
  for (int q = 1; q <= opt.order; ++q) {
    fact *= q;
    sf *= std::sqrt(static_cast<double>(q));
    double& v = e.coeffs[q - 1];
    if (std::abs(v) / sf < opt.rank_tol * cmax) v = 0.0;
    if (e.rank == 0 && v != 0.0) e.rank = q;
    e.l2 += v * v / fact;
    if (q == opt.order) e.tail_mass = v * v / fact;
  }
  if (e.rank == 0) throw DomainError("nonlinear filter has no non-zero Hermite coefficient up to the truncation order");
  return e;
}

std::vector<double> subordinate(const NonlinearFilter& g, std::span<const double> x) {
  std::vector<double> out(x.size());
  std::transform(x.begin(), x.end(), out.begin(), g.fn);
  return out;
}

std::vector<double> subordinate(const HermiteExpansion& e, std::span<const double> x) {
  std::vector<double> weight(e.order() + 1, 0.0), h(e.order() + 1);
  double fact = 1.0;
  for (int q = 1; q <= e.order(); ++q) {
    fact *= q;
    weight[q] = e.coeffs[q - 1] / fact;
  }
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    hermite_all(x[i], h);
    double s = 0.0;
    for (int q = e.rank; q <= e.order(); ++q) s += weight[q] * h[q];
    out[i] = s;
  }
  return out;
}

}  // namespace lmw
