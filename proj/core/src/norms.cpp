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

#include "fixpoint/norms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fixpoint/error.hpp"
#include "fixpoint/nonneg_matrix.hpp"

namespace fixpoint {

double p_norm(std::span<const double> x, double p) {
  if (!(p >= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "InvalidP: p must be >= 1");
  }
  if (std::isinf(p)) return max_abs(x);
  if (p == 1.0) {
    double s = 0.0;
    for (double v : x) s += std::abs(v);
    return s;
  }
  // Scale by the largest entry so |x_i|^p neither overflows nor underflows.
  const double scale = max_abs(x);
  if (scale == 0.0) return 0.0;
  double s = 0.0;
  for (double v : x) s += std::pow(std::abs(v) / scale, p);
  return scale * std::pow(s, 1.0 / p);
}

double induced_norm_1(const Matrix& a) {
  double best = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a(i, j));
    best = std::max(best, s);
  }
  return best;
}

double induced_norm_inf(const Matrix& a) {
  double best = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double s = 0.0;
    for (double v : a.row(i)) s += std::abs(v);
    best = std::max(best, s);
  }
  return best;
}

Renorming Renorming::unit(std::size_t n) {
  Renorming r;
  r.weights.assign(n, 1.0);
  r.alpha = 0.0;
  r.beta = 1.0;
  r.gamma = static_cast<double>(n);
  r.generator = Matrix(n);
  return r;
}

double weighted_max_norm(std::span<const double> x, const Renorming& r) {
  if (x.size() != r.weights.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "vector length does not match renorming weights");
  }
  double best = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    best = std::max(best, std::abs(x[i]) / r.weights[i]);
  return best;
}

Renorming build_renorming(const NonnegativeMatrix& a) {
  const NormalityVerdict v = normality_certificate(a);
  Renorming r;
  r.weights = *v.certificate;
  const Vector az = a.apply(r.weights);
  for (std::size_t i = 0; i < az.size(); ++i)
    r.alpha = std::max(r.alpha, az[i] / r.weights[i]);
  r.beta = *std::min_element(r.weights.begin(), r.weights.end());
  r.gamma = std::accumulate(r.weights.begin(), r.weights.end(), 0.0);
  r.generator = a.matrix();
  return r;
}

double positive_alpha(const Renorming& r) {
  return std::max(r.alpha, kMinPositiveAlpha);
}

}  // namespace fixpoint
