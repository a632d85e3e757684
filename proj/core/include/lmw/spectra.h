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

#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace lmw {

/// Spectral density f(l) = |1 - e^{-il}|^{-2d} f*(l) of a unit-variance
/// long-memory Gaussian sequence.
///
/// The short-memory part f* is held as an evaluator plus an immutable cache
/// of its values on the uniform grid l_i = -pi + 2 pi i / N. Copies share the
/// cache.
class MemoryModel {
 public:
  using Density = std::function<double(double)>;
  static constexpr std::size_t kDefaultGrid = std::size_t{1} << 16;

  /// FARIMA(0,d,0): f* constant, fixed by r(0) = 1 through the closed form
  /// r(0) = 2 pi c Gamma(1-2d) / Gamma(1-d)^2.
  static MemoryModel farima(double d, std::size_t grid = kDefaultGrid);

  /// ARFIMA(1,d,0): f* proportional to |1 - phi e^{-il}|^{-2}, normalized by quadrature.
  static MemoryModel arfima1(double d, double phi, std::size_t grid = kDefaultGrid);

  /// General model. When `normalize` is set, f* is rescaled so that the
  /// density integrates to one over (-pi, pi].
  MemoryModel(double d, Density fstar, std::string name, bool normalize = true,
              std::size_t grid = kDefaultGrid);

  double d() const { return d_; }
  double fstar(double lambda) const;
  double fstar_at_zero() const { return fstar0_; }
  const std::string& name() const { return name_; }
  bool is_farima() const { return farima_; }

  /// int_{-pi}^{pi} f, by singular quadrature. Equals 1 for a normalized model.
  double density_integral() const { return integral_; }
  bool normalized(double tol = 1e-6) const;

  std::size_t grid_size() const { return grid_->size(); }
  /// Cached f* on the uniform grid.
  std::span<const double> fstar_grid() const { return *grid_; }

 private:
  MemoryModel() = default;
  void finish(std::size_t grid, bool normalize);

  double d_ = 0.0;
  Density fstar_;
  double scale_ = 1.0;
  double fstar0_ = 0.0;
  double integral_ = 0.0;
  bool farima_ = false;
  std::string name_;
  std::shared_ptr<const std::vector<double>> grid_;
};

/// Samples of a 2 pi-periodic function at l_i = -pi + 2 pi i / n.
struct PeriodicGrid {
  std::vector<double> values;
  /// Known |l|^{-beta} behaviour at 0, if any.
  std::optional<double> singular_exponent;

  std::size_t size() const { return values.size(); }
  double step() const;
  double lambda(std::size_t i) const;
  /// Index of the grid point l = 0.
  std::size_t zero_index() const { return values.size() / 2; }
  /// Linear interpolation at l in (-pi, pi].
  double at(double lambda) const;

  /// CSV with header `lambda,value`.
  void write_csv(std::ostream& os) const;
};

/// f(l). Throws DomainError at the pole l = 0.
double eval_f(const MemoryModel& model, double lambda);

struct Autocovariance {
  std::vector<double> values;  // r(0..n_max)
  bool normalized = true;      // false when |r(0) - 1| exceeds 1e-6
};

/// r(n) = int e^{inl} f(l) dl for n = 0..n_max.
///
/// The pole is subtracted as c|l|^{-2d} (c = f*(0)) and integrated in closed
/// form; the bounded remainder is integrated by the trapezoidal rule on a
/// grid fine enough to resolve e^{inl}, evaluated for all lags with one DCT.
Autocovariance autocovariance(const MemoryModel& model, std::size_t n_max);

/// Closed-form normalized FARIMA(0,d,0) autocovariance:
/// rho(n) = rho(n-1) (n-1+d)/(n-d), rho(0) = 1.
std::vector<double> farima_autocovariance(double d, std::size_t n_max);

/// (g1 * g2)(l) = int g1(u) g2(l - u) du, trapezoidal on the common grid.
PeriodicGrid periodic_convolve(const PeriodicGrid& g1, const PeriodicGrid& g2);

/// The density itself on an n-point grid; the l = 0 cell holds the cell
/// average of the local power law.
PeriodicGrid density_grid(const MemoryModel& model, std::size_t n = MemoryModel::kDefaultGrid);

/// f^{(*q)}, the q-fold self-convolution of f (without the q! factor).
/// Values within 3 grid steps of 0 are replaced by the power law fitted on
/// steps 4..16.
PeriodicGrid self_convolve(const MemoryModel& model, int q,
                           std::size_t n = MemoryModel::kDefaultGrid);

/// q_c = max{q : q < 1/(1-2d)}.
int critical_order(double d);

/// d(q) = q d + (1 - q)/2.
double memory_param(double d, int q);

}  // namespace lmw
