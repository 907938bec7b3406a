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

#include "fixpoint/perov.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "fixpoint/error.hpp"

namespace fixpoint {

namespace {

constexpr double kVectorContractionSlack = 1e-9;

}  // namespace

ProductSpace::ProductSpace(std::vector<Factor> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "product space needs q >= 1 factors");
  }
  std::vector<int> flat;
  for (auto& f : factors_) {
    if (f.dim == 0) {
      throw Error(ErrorCode::kInvalidArgument, "factor dimension must be >= 1");
    }
    if (f.directions.empty()) f.directions.assign(f.dim, 1);
    if (f.directions.size() != f.dim) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "factor directions do not match factor dimension");
    }
    if (!f.metric) f.metric = l1_distance;
    offsets_.push_back(total_dim_);
    total_dim_ += f.dim;
    flat.insert(flat.end(), f.directions.begin(), f.directions.end());
  }
  order_ = Order(std::move(flat));
}

ProductSpace ProductSpace::uniform(std::size_t q, std::size_t dim,
                                   std::vector<int> factor_directions) {
  if (factor_directions.empty()) factor_directions.assign(q, 1);
  if (factor_directions.size() != q) {
    throw Error(ErrorCode::kDimensionMismatch, "one direction per factor expected");
  }
  std::vector<Factor> factors;
  for (std::size_t i = 0; i < q; ++i) {
    factors.push_back({dim, std::vector<int>(dim, factor_directions[i]), nullptr});
  }
  return ProductSpace(std::move(factors));
}

std::span<const double> ProductSpace::slice(std::span<const double> x,
                                            std::size_t i) const {
  return x.subspan(offsets_[i], factors_[i].dim);
}

Vector ProductSpace::product_metric(std::span<const double> x,
                                    std::span<const double> y) const {
  if (x.size() != total_dim_ || y.size() != total_dim_) {
    throw Error(ErrorCode::kDimensionMismatch,
                "point dimension does not match product space (" +
                    std::to_string(total_dim_) + ")");
  }
  Vector delta(q());
  for (std::size_t i = 0; i < q(); ++i)
    delta[i] = factors_[i].metric(slice(x, i), slice(y, i));
  return delta;
}

Vector product_metric(const ProductSpace& space, std::span<const double> x,
                      std::span<const double> y) {
  return space.product_metric(x, y);
}

double scalarize(std::span<const double> delta, const Renorming& r) {
  return weighted_max_norm(delta, r);
}

SystemOfMaps::SystemOfMaps(ProductSpace space, std::vector<FactorMap> components,
                           Vector start)
    : space_(std::move(space)),
      components_(std::move(components)),
      start_(std::move(start)) {
  if (components_.size() != space_.q()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "system has " + std::to_string(components_.size()) +
                    " components for " + std::to_string(space_.q()) + " factors");
  }
  if (start_.size() != space_.total_dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "start point has wrong dimension");
  }
  const Vector image = associate_selfmap(*this)(start_);
  if (!space_.order().leq(start_, image)) {
    throw Error(ErrorCode::kBadStart,
                "start violates a_i <=_i T_i(a) for some component");
  }
}

MapFn associate_selfmap(const SystemOfMaps& system) {
  return [components = system.components(),
          space = system.space()](std::span<const double> x) {
    Vector out;
    out.reserve(space.total_dim());
    for (std::size_t i = 0; i < components.size(); ++i) {
      const Vector part = components[i](x);
      if (part.size() != space.factor_dim(i)) {
        throw Error(ErrorCode::kDimensionMismatch,
                    "component " + std::to_string(i) + " returned wrong dimension", i);
      }
      out.insert(out.end(), part.begin(), part.end());
    }
    return out;
  };
}

VectorContractionReport verify_vector_contraction(const MapFn& map,
                                                  const ProductSpace& space,
                                                  const NonnegativeMatrix& a,
                                                  std::span<const StatePair> pairs) {
  if (a.size() != space.q()) {
    throw Error(ErrorCode::kDimensionMismatch, "matrix size must equal q");
  }
  VectorContractionReport report;
  report.worst_slack = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto& [x, y] = pairs[k];
    if (!space.order().comparable(x, y)) {
      throw Error(ErrorCode::kIncomparablePair, "pair is not comparable", k);
    }
    const Vector lhs = space.product_metric(map(x), map(y));
    const Vector rhs = a.apply(space.product_metric(x, y));
    for (std::size_t i = 0; i < lhs.size(); ++i) {
      const double slack = lhs[i] - rhs[i];
      report.worst_slack = std::max(report.worst_slack, slack);
      if (slack > kVectorContractionSlack) report.violations.emplace_back(k, i);
    }
  }
  if (pairs.empty()) report.worst_slack = 0.0;
  return report;
}

PerovRun perov_solve(const SystemOfMaps& system, const NonnegativeMatrix& a,
                     double tol, std::size_t max_iter, const PicardOptions& opts) {
  const ProductSpace& space = system.space();
  if (a.size() != space.q()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "contraction matrix is " + std::to_string(a.size()) +
                    "x" + std::to_string(a.size()) + " but q = " +
                    std::to_string(space.q()));
  }
  PerovRun out;
  out.certificate = *normality_certificate(a).certificate;
  out.renorming = build_renorming(a);

  MetricFn e = [space, r = out.renorming](std::span<const double> x,
                                          std::span<const double> y) {
    return scalarize(space.product_metric(x, y), r);
  };
  OrderedProblem problem(space.order(), associate_selfmap(system), system.start(),
                         positive_alpha(out.renorming), std::move(e));
  out.run = picard_iterate(problem, tol, max_iter, opts);

  const auto& it = out.run.iterates;
  for (std::size_t n = 0; n + 1 < it.size(); ++n)
    out.vector_residuals.push_back(space.product_metric(it[n], it[n + 1]));
  return out;
}

}  // namespace fixpoint
