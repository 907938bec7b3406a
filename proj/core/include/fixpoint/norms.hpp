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

#include <limits>
#include <span>

#include "fixpoint/matrix.hpp"

namespace fixpoint {

inline constexpr double kInfNorm = std::numeric_limits<double>::infinity();

// ||x||_p for 1 <= p <= infinity. Throws InvalidArgument (InvalidP) for p < 1.
double p_norm(std::span<const double> x, double p);

// Maximum column sum, the operator norm compatible with ||.||_1.
double induced_norm_1(const Matrix& a);
// Maximum row sum, the operator norm compatible with ||.||_inf.
double induced_norm_inf(const Matrix& a);

// Weighted max-norm ||x||_A = max_i |x_i| / weights_i built from a normality
// certificate, with contraction factor alpha on the positive cone and the
// equivalence constants beta ||x||_A <= ||x||_1 <= gamma ||x||_A.
struct Renorming {
  Vector weights;
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  // The matrix the renorming was derived from.
  Matrix generator;

  // Unit weights: ||.||_A collapses to ||.||_inf.
  static Renorming unit(std::size_t n);
};

double weighted_max_norm(std::span<const double> x, const Renorming& r);

// alpha is max_i (A z)_i / z_i for the certificate z of (I - A) z = 1. It is 0
// when A z = 0; callers needing a strictly positive factor clamp it with
// positive_alpha().
Renorming build_renorming(const NonnegativeMatrix& a);

inline constexpr double kMinPositiveAlpha = 1e-6;
double positive_alpha(const Renorming& r);

}  // namespace fixpoint
