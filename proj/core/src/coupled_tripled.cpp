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

#include "fixpoint/coupled_tripled.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "fixpoint/error.hpp"

namespace fixpoint {

namespace {

const std::vector<std::vector<std::size_t>> kTripledSlots = {{0, 1, 2}, {1, 0, 1}, {2, 1, 0}};
const std::vector<std::vector<std::size_t>> kCoupledSlots = {{0, 1}, {1, 0}};

Vector evaluate_slot(const MixedMap& f, std::span<const double> flat, std::size_t m,
                     const std::vector<std::size_t>& perm) {
  std::vector<Vector> args;
  args.reserve(perm.size());
  for (std::size_t s : perm) {
    auto part = flat.subspan(s * m, m);
    args.emplace_back(part.begin(), part.end());
  }
  Vector out = f(args);
  if (out.size() != m) {
    throw Error(ErrorCode::kDimensionMismatch,
                "F returned " + std::to_string(out.size()) + " coordinates, expected " +
                    std::to_string(m));
  }
  return out;
}

MapFn make_associated_map(MixedMap f, std::vector<std::vector<std::size_t>> slots,
                          std::size_t m) {
  return [f = std::move(f), slots = std::move(slots), m](std::span<const double> x) {
    if (x.size() != slots.size() * m) {
      throw Error(ErrorCode::kDimensionMismatch, "state has wrong dimension");
    }
    Vector out;
    out.reserve(x.size());
    for (const auto& perm : slots) {
      const Vector part = evaluate_slot(f, x, m, perm);
      out.insert(out.end(), part.begin(), part.end());
    }
    return out;
  };
}

std::vector<int> flat_directions(const std::vector<int>& slot_dirs, std::size_t m) {
  std::vector<int> flat;
  for (int d : slot_dirs) flat.insert(flat.end(), m, d);
  return flat;
}

std::vector<Vector> split(const Vector& flat, std::size_t k) {
  const std::size_t m = flat.size() / k;
  std::vector<Vector> out;
  for (std::size_t i = 0; i < k; ++i)
    out.emplace_back(flat.begin() + static_cast<std::ptrdiff_t>(i * m),
                     flat.begin() + static_cast<std::ptrdiff_t>((i + 1) * m));
  return out;
}

}  // namespace

NonnegativeMatrix tripled_matrix(const std::array<double, 3>& alphas) {
  for (std::size_t i = 0; i < 3; ++i) {
    if (!(alphas[i] > 0.0) || !std::isfinite(alphas[i])) {
      throw Error(ErrorCode::kInvalidArgument,
                  "NonpositiveAlpha: alpha_" + std::to_string(i + 1) + " must be > 0", i);
    }
  }
  const auto [a1, a2, a3] = alphas;
  return NonnegativeMatrix({{a1, a2, a3}, {a2, a1 + a3, 0.0}, {a3, a2, a1}});
}

NonnegativeMatrix coupled_matrix(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "AlphaOutOfRange: alpha must lie in (0,1)");
  }
  const double h = alpha / 2.0;
  return NonnegativeMatrix({{h, h}, {h, h}});
}

TripledProblem::TripledProblem(MixedMap f, std::vector<std::vector<std::size_t>> slots,
                               std::vector<int> directions, std::vector<double> alphas,
                               NonnegativeMatrix matrix, std::vector<Vector> start,
                               bool monotone_declared)
    : f_(std::move(f)),
      slots_(std::move(slots)),
      directions_(std::move(directions)),
      alphas_(std::move(alphas)),
      matrix_(std::move(matrix)),
      monotone_declared_(monotone_declared) {
  for (double a : alphas_) alpha_sum_ += a;
  if (!(alpha_sum_ < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "alphas must sum to less than 1");
  }
  base_dim_ = start.front().size();
  if (base_dim_ == 0) {
    throw Error(ErrorCode::kInvalidArgument, "base dimension must be >= 1");
  }
  for (const auto& s : start) {
    if (s.size() != base_dim_) {
      throw Error(ErrorCode::kDimensionMismatch, "start slots differ in dimension");
    }
    start_.insert(start_.end(), s.begin(), s.end());
  }
  const Vector image = associated_map()(start_);
  if (!Order(flat_directions(directions_, base_dim_)).leq(start_, image)) {
    throw Error(ErrorCode::kBadStart, "start point violates the mixed start conditions");
  }
}

TripledProblem TripledProblem::tripled(TripledMap f, std::array<double, 3> alphas,
                                       std::array<Vector, 3> start,
                                       bool monotone_declared) {
  NonnegativeMatrix a = tripled_matrix(alphas);
  MixedMap g = [f = std::move(f)](std::span<const Vector> args) {
    return f(args[0], args[1], args[2]);
  };
  return TripledProblem(std::move(g), kTripledSlots, {1, -1, 1},
                        {alphas.begin(), alphas.end()}, std::move(a),
                        {start.begin(), start.end()}, monotone_declared);
}

TripledProblem TripledProblem::coupled(CoupledMap f, double alpha,
                                       std::array<Vector, 2> start,
                                       bool monotone_declared) {
  NonnegativeMatrix a = coupled_matrix(alpha);
  MixedMap g = [f = std::move(f)](std::span<const Vector> args) {
    return f(args[0], args[1]);
  };
  return TripledProblem(std::move(g), kCoupledSlots, {1, -1}, {alpha / 2.0, alpha / 2.0},
                        std::move(a), {start.begin(), start.end()}, monotone_declared);
}

ProductSpace TripledProblem::space() const {
  return ProductSpace::uniform(arity(), base_dim_, directions_);
}

MapFn TripledProblem::associated_map() const {
  return make_associated_map(f_, slots_, base_dim_);
}

MapFn tripled_associated_map(TripledMap f, std::size_t base_dim) {
  MixedMap g = [f = std::move(f)](std::span<const Vector> args) {
    return f(args[0], args[1], args[2]);
  };
  return make_associated_map(std::move(g), kTripledSlots, base_dim);
}

bool tripled_order(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() % 3 != 0) {
    throw Error(ErrorCode::kDimensionMismatch, "tripled states must have length 3m");
  }
  return Order(flat_directions({1, -1, 1}, x.size() / 3)).leq(x, y);
}

double max_metric(std::span<const double> x, std::span<const double> y,
                  std::size_t slots) {
  if (slots == 0 || x.size() != y.size() || x.size() % slots != 0) {
    throw Error(ErrorCode::kDimensionMismatch, "states must split into equal slots");
  }
  const std::size_t m = x.size() / slots;
  double best = 0.0;
  for (std::size_t i = 0; i < slots; ++i)
    best = std::max(best, l1_distance(x.subspan(i * m, m), y.subspan(i * m, m)));
  return best;
}

std::string_view route_name(Route r) {
  switch (r) {
    case Route::kVector: return "vector";
    case Route::kMaxMetric: return "max_metric";
    case Route::kBoth: return "both";
  }
  return "unknown";
}

std::optional<Route> parse_route(std::string_view name) {
  if (name == "vector") return Route::kVector;
  if (name == "max_metric") return Route::kMaxMetric;
  if (name == "both") return Route::kBoth;
  return std::nullopt;
}

std::size_t sample_mixed_monotone(const TripledProblem& p, std::size_t samples,
                                  std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const Vector& a = p.start();
  const double scale = 1.0 + 2.0 * max_abs(a);
  std::uniform_real_distribution<double> coord(-scale, scale);
  std::uniform_real_distribution<double> step(0.0, scale);
  const Order order(flat_directions(p.directions(), p.base_dim()));
  const MapFn t = p.associated_map();
  std::size_t violations = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    Vector x(a.size());
    Vector y(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      x[i] = coord(rng);
      y[i] = x[i] + order.directions()[i] * step(rng);
    }
    if (!order.leq_within(t(x), t(y), 1e-12)) ++violations;
  }
  return violations;
}

TripledSolution solve_tripled(const TripledProblem& p, double tol, std::size_t max_iter,
                              const TripledSolveOptions& opts) {
  TripledSolution sol;
  sol.route = opts.route;
  const std::size_t k = p.arity();

  auto max_metric_run = [&]() {
    MetricFn d = [k](std::span<const double> x, std::span<const double> y) {
      return max_metric(x, y, k);
    };
    OrderedProblem problem(Order(flat_directions(p.directions(), p.base_dim())),
                           p.associated_map(), p.start(), p.alpha_sum(), std::move(d));
    return picard_iterate(problem, tol, max_iter, opts.picard);
  };

  if (opts.route == Route::kMaxMetric) {
    sol.run = max_metric_run();
  } else {
    std::vector<FactorMap> components;
    for (std::size_t i = 0; i < k; ++i) {
      components.push_back([f = p.f(), perm = p.slots()[i],
                            m = p.base_dim()](std::span<const double> x) {
        return evaluate_slot(f, x, m, perm);
      });
    }
    SystemOfMaps system(p.space(), std::move(components), p.start());
    sol.perov = perov_solve(system, p.contraction_matrix(), tol, max_iter, opts.picard);
    sol.run = sol.perov->run;
  }

  if (opts.route == Route::kBoth) {
    sol.cross_check = max_metric_run();
    const double dist =
        max_abs(subtract(sol.run.fixed_point, sol.cross_check->fixed_point));
    sol.route_distance = dist;
    if (dist > 20.0 * tol) {
      throw Error(ErrorCode::kRouteDisagreement,
                  "vector and max-metric routes differ by " + std::to_string(dist));
    }
  }

  sol.fixed_point = split(sol.run.fixed_point, k);
  const MapFn t = p.associated_map();
  const std::vector<Vector> image = split(t(sol.run.fixed_point), k);
  for (std::size_t i = 0; i < k; ++i)
    sol.slot_residuals.push_back(l1_distance(sol.fixed_point[i], image[i]));

  if (p.monotone_declared() && opts.monotone_samples > 0) {
    sol.monotone_violations = sample_mixed_monotone(p, opts.monotone_samples, opts.seed);
  }
  return sol;
}

}  // namespace fixpoint
