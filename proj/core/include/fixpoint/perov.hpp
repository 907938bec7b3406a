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
#include "fixpoint/nonneg_matrix.hpp"
#include "fixpoint/norms.hpp"
#include "fixpoint/picard.hpp"

namespace fixpoint {

// Finite product X_1 x ... x X_q of coordinate spaces. States are stored
// flattened; factor i occupies `factor_dims[i]` consecutive coordinates.
class ProductSpace {
 public:
  struct Factor {
    std::size_t dim = 1;
    std::vector<int> directions;  // empty: all +1
    MetricFn metric;              // null: l1_distance
  };

  explicit ProductSpace(std::vector<Factor> factors);
  // q copies of R^dim with direction flags per factor and the 1-norm metric.
  static ProductSpace uniform(std::size_t q, std::size_t dim,
                              std::vector<int> factor_directions = {});

  std::size_t q() const noexcept { return factors_.size(); }
  std::size_t total_dim() const noexcept { return total_dim_; }
  std::size_t factor_dim(std::size_t i) const { return factors_[i].dim; }
  std::span<const double> slice(std::span<const double> x, std::size_t i) const;

  // Vector distance (d_1(x_1, y_1), ..., d_q(x_q, y_q)).
  Vector product_metric(std::span<const double> x, std::span<const double> y) const;
  // Product order as a flat coordinatewise order.
  const Order& order() const noexcept { return order_; }

 private:
  std::vector<Factor> factors_;
  std::vector<std::size_t> offsets_;
  std::size_t total_dim_ = 0;
  Order order_;
};

Vector product_metric(const ProductSpace& space, std::span<const double> x,
                      std::span<const double> y);

// e = ||delta||_A for the renormed metric.
double scalarize(std::span<const double> delta, const Renorming& r);

using FactorMap = std::function<Vector(std::span<const double>)>;

// Components T_i : X -> X_i with a start a satisfying a_i <=_i T_i(a).
class SystemOfMaps {
 public:
  // Throws BadStart when the start is not admissible.
  SystemOfMaps(ProductSpace space, std::vector<FactorMap> components, Vector start);

  const ProductSpace& space() const noexcept { return space_; }
  const std::vector<FactorMap>& components() const noexcept { return components_; }
  const Vector& start() const noexcept { return start_; }

 private:
  ProductSpace space_;
  std::vector<FactorMap> components_;
  Vector start_;
};

// T x = (T_1 x, ..., T_q x), flattened.
MapFn associate_selfmap(const SystemOfMaps& system);

struct VectorContractionReport {
  // max over pairs and components of Delta(Tx,Ty)_i - (A Delta(x,y))_i.
  double worst_slack = 0.0;
  // (pair index, component) with slack above 1e-9.
  std::vector<std::pair<std::size_t, std::size_t>> violations;
};

// Sampling check of Delta(Tx, Ty) <= A Delta(x, y) on comparable pairs.
VectorContractionReport verify_vector_contraction(const MapFn& map,
                                                  const ProductSpace& space,
                                                  const NonnegativeMatrix& a,
                                                  std::span<const StatePair> pairs);

struct PerovRun {
  PicardRun run;
  Vector certificate;
  Renorming renorming;
  // Delta(x_n, x_{n+1}) for every recorded residual.
  std::vector<Vector> vector_residuals;
};

// Certificate of A -> renorming -> Picard iteration in the renormed metric
// e(x, y) = ||Delta(x, y)||_A with factor alpha from the renorming.
PerovRun perov_solve(const SystemOfMaps& system, const NonnegativeMatrix& a,
                     double tol, std::size_t max_iter,
                     const PicardOptions& opts = {});

}  // namespace fixpoint
