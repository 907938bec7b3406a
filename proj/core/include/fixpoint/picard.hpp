// Copyright 2026 The Fixpoint Authors
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

#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "fixpoint/matrix.hpp"

namespace fixpoint {

using MapFn = std::function<Vector(std::span<const double>)>;
using MetricFn =
    std::function<double(std::span<const double>, std::span<const double>)>;

// ||x - y||_1, the default metric on R^dim.
double l1_distance(std::span<const double> x, std::span<const double> y);

// Coordinatewise quasi-order on R^dim: coordinate i compares with <= when
// directions[i] == +1 and with >= when directions[i] == -1.
class Order {
 public:
  Order() = default;
  explicit Order(std::vector<int> directions);
  static Order coordinatewise(std::size_t dim);

  std::size_t dim() const noexcept { return directions_.size(); }
  const std::vector<int>& directions() const noexcept { return directions_; }

  bool leq(std::span<const double> x, std::span<const double> y) const;
  // leq() with a per-coordinate allowance of `rel` * max(|x_i|, |y_i|).
  bool leq_within(std::span<const double> x, std::span<const double> y,
                  double rel) const;
  bool comparable(std::span<const double> x, std::span<const double> y) const {
    return leq(x, y) || leq(y, x);
  }

 private:
  std::vector<int> directions_;
};

// Ordered fixed-point problem: a map T on R^dim, a start with x0 <= T x0, an
// asserted contraction factor on comparable pairs and a metric.
//
// Completeness of the metric along ascending sequences and closedness of the
// order are user obligations; they hold for R^dim with coordinatewise orders.
class OrderedProblem {
 public:
  // Throws NotAscendingStart when start is not below T(start),
  // InvalidArgument for alpha outside (0,1) or a metric that fails the
  // symmetry / zero-diagonal spot check.
  OrderedProblem(Order order, MapFn map, Vector start, double alpha,
                 MetricFn metric = l1_distance);

  std::size_t dim() const noexcept { return start_.size(); }
  const Order& order() const noexcept { return order_; }
  const MapFn& map() const noexcept { return map_; }
  const Vector& start() const noexcept { return start_; }
  double alpha() const noexcept { return alpha_; }
  const MetricFn& metric() const noexcept { return metric_; }

 private:
  Order order_;
  MapFn map_;
  Vector start_;
  double alpha_;
  MetricFn metric_;
};

struct PicardOptions {
  // Escalate a non-ascending step from a recorded warning to OrderViolated.
  bool require_ascending = false;
};

struct PicardRun {
  std::vector<Vector> iterates;      // x_0 .. x_N
  std::vector<double> residuals;     // d(x_n, x_{n+1}), n < N
  std::vector<double> a_priori;      // alpha^n / (1 - alpha) d(x_0, x_1)
  std::vector<double> a_posteriori;  // alpha / (1 - alpha) d(x_{n-1}, x_n); n = 0 uses a_priori
  std::vector<std::size_t> order_warnings;  // n where x_n <= x_{n+1} failed
  double alpha = 0.0;
  bool converged = false;
  Vector fixed_point;
  double fixed_point_residual = 0.0;  // d(x_N, T x_N)
  std::size_t steps = 0;              // map evaluations used
};

struct ResidualBounds {
  double a_priori = 0.0;
  double a_posteriori_factor = 0.0;
};

// Banach estimates: a_priori = alpha^n d01 / (1 - alpha), factor alpha / (1 - alpha).
ResidualBounds residual_bounds(double alpha, double d01, std::size_t n);

// Iterates until the a-posteriori bound is <= tol. The a-posteriori test runs
// before the iteration cap. Throws ContractionViolated (index = offending
// step), MaxIterExceeded, OrderViolated (only with require_ascending).
PicardRun picard_iterate(const OrderedProblem& problem, double tol,
                         std::size_t max_iter, const PicardOptions& opts = {});

bool check_ascending(const PicardRun& run, const Order& order);

// Connected components of the comparability graph on `points`, as sorted
// index lists ordered by their smallest member.
std::vector<std::vector<std::size_t>> comparability_components(
    std::span<const Vector> points, const Order& order);

struct StatePair {
  Vector x;
  Vector y;
};

// max over pairs of d(Tx, Ty) / d(x, y): a lower bound on any valid alpha.
double sample_contractivity(const MapFn& map, const Order& order,
                            std::span<const StatePair> pairs,
                            const MetricFn& metric = l1_distance);

}  // namespace fixpoint
