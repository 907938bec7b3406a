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

#include "fixpoint/picard.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "fixpoint/error.hpp"

namespace fixpoint {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kContractionSlack = 1e-9;

void require_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "InvalidAlpha: alpha must lie in (0,1)");
  }
}

// Size of metric noise caused by last-bit rounding of `x`.
double rounding_floor(const MetricFn& metric, std::span<const double> x) {
  Vector bumped(x.begin(), x.end());
  for (double& v : bumped) v += 16.0 * kEps * std::abs(v);
  return metric(x, bumped);
}

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  std::size_t find(std::size_t i) {
    while (parent_[i] != i) {
      parent_[i] = parent_[parent_[i]];
      i = parent_[i];
    }
    return i;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

double l1_distance(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "points have different dimension");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += std::abs(x[i] - y[i]);
  return s;
}

Order::Order(std::vector<int> directions) : directions_(std::move(directions)) {
  for (int d : directions_) {
    if (d != 1 && d != -1) {
      throw Error(ErrorCode::kInvalidArgument, "order directions must be +1 or -1");
    }
  }
}

Order Order::coordinatewise(std::size_t dim) {
  return Order(std::vector<int>(dim, 1));
}

bool Order::leq(std::span<const double> x, std::span<const double> y) const {
  return leq_within(x, y, 0.0);
}

bool Order::leq_within(std::span<const double> x, std::span<const double> y,
                       double rel) const {
  if (x.size() != dim() || y.size() != dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "order of dimension " + std::to_string(dim()) +
                    " applied to points of dimension " + std::to_string(x.size()));
  }
  for (std::size_t i = 0; i < dim(); ++i) {
    const double slack = rel * std::max(std::abs(x[i]), std::abs(y[i]));
    const double gap = directions_[i] > 0 ? y[i] - x[i] : x[i] - y[i];
    if (gap < -slack) return false;
  }
  return true;
}

OrderedProblem::OrderedProblem(Order order, MapFn map, Vector start,
                               double alpha, MetricFn metric)
    : order_(std::move(order)),
      map_(std::move(map)),
      start_(std::move(start)),
      alpha_(alpha),
      metric_(std::move(metric)) {
  require_alpha(alpha_);
  if (order_.dim() != start_.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "order dimension does not match start point");
  }
  const Vector t0 = map_(start_);
  if (t0.size() != start_.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "map changes the state dimension");
  }
  if (!order_.leq(start_, t0)) {
    throw Error(ErrorCode::kNotAscendingStart, "start point is not below its image");
  }
  const double dxy = metric_(start_, t0);
  const double dyx = metric_(t0, start_);
  if (metric_(start_, start_) != 0.0 || metric_(t0, t0) != 0.0 ||
      std::abs(dxy - dyx) > 1e-12 * std::max(1.0, std::abs(dxy)) || dxy < 0.0) {
    throw Error(ErrorCode::kInvalidArgument,
                "metric is not symmetric or not zero on the diagonal");
  }
}

ResidualBounds residual_bounds(double alpha, double d01, std::size_t n) {
  require_alpha(alpha);
  if (!(d01 >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "d01 must be >= 0");
  }
  ResidualBounds b;
  b.a_posteriori_factor = alpha / (1.0 - alpha);
  b.a_priori = std::pow(alpha, static_cast<double>(n)) * d01 / (1.0 - alpha);
  return b;
}

PicardRun picard_iterate(const OrderedProblem& problem, double tol,
                         std::size_t max_iter, const PicardOptions& opts) {
  if (!(tol > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "InvalidTolerance: tol must be > 0");
  }
  if (max_iter == 0) {
    throw Error(ErrorCode::kInvalidArgument, "max_iter must be >= 1");
  }
  const double alpha = problem.alpha();
  const MetricFn& metric = problem.metric();
  const double factor = alpha / (1.0 - alpha);

  PicardRun run;
  run.alpha = alpha;
  run.iterates.push_back(problem.start());
  Vector next = problem.map()(problem.start());
  run.steps = 1;
  const double d01 = metric(problem.start(), next);
  run.residuals.push_back(d01);
  run.a_priori.push_back(d01 / (1.0 - alpha));
  run.a_posteriori.push_back(d01 / (1.0 - alpha));

  auto finish = [&](Vector image) {
    run.converged = true;
    run.fixed_point = run.iterates.back();
    run.fixed_point_residual = metric(run.fixed_point, image);
    return run;
  };

  if (d01 == 0.0) {
    run.residuals.clear();
    return finish(std::move(next));
  }

  for (std::size_t n = 1;; ++n) {
    const Vector& prev = run.iterates.back();
    if (!problem.order().leq_within(prev, next, 8.0 * kEps)) {
      if (opts.require_ascending) {
        throw Error(ErrorCode::kOrderViolated,
                    "iterate " + std::to_string(n) + " is not above its predecessor",
                    n - 1);
      }
      run.order_warnings.push_back(n - 1);
    }
    run.iterates.push_back(std::move(next));
    run.a_priori.push_back(std::pow(alpha, static_cast<double>(n)) * d01 /
                           (1.0 - alpha));
    run.a_posteriori.push_back(factor * run.residuals.back());

    next = problem.map()(run.iterates.back());
    ++run.steps;
    const double r = metric(run.iterates.back(), next);
    const double r_prev = run.residuals.back();
    const double floor = rounding_floor(metric, next);
    if (r > alpha * r_prev * (1.0 + kContractionSlack) + floor) {
      throw Error(ErrorCode::kContractionViolated,
                  "d(x_" + std::to_string(n) + ", x_" + std::to_string(n + 1) +
                      ") exceeds alpha * d(x_" + std::to_string(n - 1) + ", x_" +
                      std::to_string(n) + ")",
                  n - 1);
    }

    if (run.a_posteriori.back() <= tol) {
      return finish(std::move(next));
    }
    run.residuals.push_back(r);
    if (n >= max_iter) {
      throw Error(ErrorCode::kMaxIterExceeded,
                  "no convergence after " + std::to_string(max_iter) + " steps", n);
    }
  }
}

bool check_ascending(const PicardRun& run, const Order& order) {
  for (std::size_t n = 0; n + 1 < run.iterates.size(); ++n) {
    if (!order.leq(run.iterates[n], run.iterates[n + 1])) return false;
  }
  return true;
}

std::vector<std::vector<std::size_t>> comparability_components(
    std::span<const Vector> points, const Order& order) {
  DisjointSets sets(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      if (order.comparable(points[i], points[j])) sets.unite(i, j);
    }
  }
  std::vector<std::vector<std::size_t>> groups(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) groups[sets.find(i)].push_back(i);
  std::vector<std::vector<std::size_t>> out;
  for (auto& g : groups)
    if (!g.empty()) out.push_back(std::move(g));
  return out;
}

double sample_contractivity(const MapFn& map, const Order& order,
                            std::span<const StatePair> pairs,
                            const MetricFn& metric) {
  double best = 0.0;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto& [x, y] = pairs[k];
    if (!order.comparable(x, y)) {
      throw Error(ErrorCode::kIncomparablePair, "pair is not comparable", k);
    }
    const double dxy = metric(x, y);
    if (dxy == 0.0) {
      throw Error(ErrorCode::kCoincidentPair, "pair has zero distance", k);
    }
    best = std::max(best, metric(map(x), map(y)) / dxy);
  }
  return best;
}

}  // namespace fixpoint
