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

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "fixpoint/matrix.hpp"
#include "fixpoint/perov.hpp"
#include "fixpoint/picard.hpp"

namespace fixpoint {

// F : X^k -> X on X = R^m, receiving its k arguments as separate spans.
using MixedMap = std::function<Vector(std::span<const Vector>)>;
using TripledMap = std::function<Vector(std::span<const double>, std::span<const double>,
                                        std::span<const double>)>;
using CoupledMap = std::function<Vector(std::span<const double>, std::span<const double>)>;

// Rows (a1, a2, a3), (a2, a1 + a3, 0), (a3, a2, a1). Throws InvalidArgument
// (NonpositiveAlpha) unless every entry is > 0.
NonnegativeMatrix tripled_matrix(const std::array<double, 3>& alphas);
// Both rows (alpha/2, alpha/2). Throws InvalidArgument (AlphaOutOfRange)
// unless 0 < alpha < 1.
NonnegativeMatrix coupled_matrix(double alpha);

// Tripled (k = 3) or coupled (k = 2) fixed-point problem for a mixed monotone
// F. Slot i of the associated map evaluates F at the argument permutation
// slots()[i]; factor i of X^k carries direction directions()[i].
class TripledProblem {
 public:
  // Checks a1 + a2 + a3 < 1, each > 0, and
  // a_1 <= F(a_1,a_2,a_3), a_2 >= F(a_2,a_1,a_2), a_3 <= F(a_3,a_2,a_1).
  static TripledProblem tripled(TripledMap f, std::array<double, 3> alphas,
                                std::array<Vector, 3> start,
                                bool monotone_declared = true);
  // F : X^2 -> X with slots (x, y) and (y, x), directions (+1, -1), and
  // contraction matrix coupled_matrix(alpha).
  static TripledProblem coupled(CoupledMap f, double alpha, std::array<Vector, 2> start,
                                bool monotone_declared = true);

  std::size_t arity() const noexcept { return slots_.size(); }
  std::size_t base_dim() const noexcept { return base_dim_; }
  const std::vector<std::vector<std::size_t>>& slots() const noexcept { return slots_; }
  const std::vector<int>& directions() const noexcept { return directions_; }
  const MixedMap& f() const noexcept { return f_; }
  const std::vector<double>& alphas() const noexcept { return alphas_; }
  double alpha_sum() const noexcept { return alpha_sum_; }
  const NonnegativeMatrix& contraction_matrix() const noexcept { return matrix_; }
  const Vector& start() const noexcept { return start_; }
  bool monotone_declared() const noexcept { return monotone_declared_; }

  ProductSpace space() const;
  // The associated selfmap on X^k, flattened.
  MapFn associated_map() const;

 private:
  TripledProblem(MixedMap f, std::vector<std::vector<std::size_t>> slots,
                 std::vector<int> directions, std::vector<double> alphas,
                 NonnegativeMatrix matrix, std::vector<Vector> start,
                 bool monotone_declared);

  MixedMap f_;
  std::vector<std::vector<std::size_t>> slots_;
  std::vector<int> directions_;
  std::vector<double> alphas_;
  double alpha_sum_ = 0.0;
  NonnegativeMatrix matrix_;
  std::size_t base_dim_ = 0;
  Vector start_;
  bool monotone_declared_ = true;
};

// T x = (F(x1,x2,x3), F(x2,x1,x2), F(x3,x2,x1)) on flattened X^3 = R^{3m}.
MapFn tripled_associated_map(TripledMap f, std::size_t base_dim);

// x <= y iff x1 <= y1, x2 >= y2, x3 <= y3 (coordinatewise within each slot).
bool tripled_order(std::span<const double> x, std::span<const double> y);

// max over slots of ||x_i - y_i||_1; `slots` equal parts of the flat vectors.
double max_metric(std::span<const double> x, std::span<const double> y,
                  std::size_t slots = 3);

enum class Route { kVector, kMaxMetric, kBoth };

std::string_view route_name(Route r);
std::optional<Route> parse_route(std::string_view name);

struct TripledSolveOptions {
  Route route = Route::kVector;
  PicardOptions picard;
  // Pairs sampled to test the declared mixed monotonicity; 0 disables.
  std::size_t monotone_samples = 64;
  std::uint64_t seed = 0;
};

struct TripledSolution {
  Route route = Route::kVector;
  PicardRun run;  // primary route's run
  std::optional<PerovRun> perov;  // vector route details
  std::optional<PicardRun> cross_check;  // max-metric run when route = kBoth
  // Slot fixed point (b_1, ..., b_k).
  std::vector<Vector> fixed_point;
  // ||b_i - F(permuted b)||_1 per slot.
  std::vector<double> slot_residuals;
  // Max-norm distance between the two routes' fixed points (kBoth only).
  std::optional<double> route_distance;
  std::size_t monotone_violations = 0;
};

// kVector: Perov solve with the contraction matrix; kMaxMetric: Picard in the
// max metric with alpha = sum of alphas; kBoth: vector route plus cross-check,
// RouteDisagreement when the fixed points differ by more than 20 * tol.
TripledSolution solve_tripled(const TripledProblem& p, double tol, std::size_t max_iter,
                              const TripledSolveOptions& opts = {});

// Random comparable pairs x <= y in the problem's product order; counts the
// pairs where T x <= T y fails.
std::size_t sample_mixed_monotone(const TripledProblem& p, std::size_t samples,
                                  std::uint64_t seed);

}  // namespace fixpoint
