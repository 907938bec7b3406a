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

#include "fixpoint/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fixpoint/error.hpp"

namespace fixpoint {

namespace {

void require_same_size(const Matrix& a, const Matrix& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "matrix sizes " + std::to_string(a.size()) + " and " +
                    std::to_string(b.size()));
  }
}

}  // namespace

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows)
    : n_(rows.size()), data_() {
  data_.reserve(n_ * n_);
  for (const auto& r : rows) {
    if (r.size() != n_) {
      throw Error(ErrorCode::kDimensionMismatch, "matrix rows must be square");
    }
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows) {
  Matrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "row " + std::to_string(i) + " has " +
                      std::to_string(rows[i].size()) + " entries, expected " +
                      std::to_string(rows.size()));
    }
    std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
  }
  return m;
}

std::vector<Vector> Matrix::rows() const {
  std::vector<Vector> out;
  out.reserve(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    auto r = row(i);
    out.emplace_back(r.begin(), r.end());
  }
  return out;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  require_same_size(a, b);
  const std::size_t n = a.size();
  Matrix c(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  require_same_size(a, b);
  Matrix c = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) c(i, j) += b(i, j);
  return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  require_same_size(a, b);
  Matrix c = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) c(i, j) -= b(i, j);
  return c;
}

Matrix operator*(double s, const Matrix& a) {
  Matrix c = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) c(i, j) *= s;
  return c;
}

Vector operator*(const Matrix& a, std::span<const double> x) {
  if (x.size() != a.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "matrix of size " + std::to_string(a.size()) +
                    " applied to vector of length " + std::to_string(x.size()));
  }
  Vector y(a.size(), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

Matrix leading_block(const Matrix& a, std::size_t k) {
  Matrix b(k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) b(i, j) = a(i, j);
  return b;
}

NonnegativeMatrix::NonnegativeMatrix(Matrix m) : m_(std::move(m)) {
  if (m_.size() == 0) {
    throw Error(ErrorCode::kInvalidArgument, "matrix dimension must be >= 1");
  }
  for (std::size_t i = 0; i < m_.size(); ++i) {
    for (std::size_t j = 0; j < m_.size(); ++j) {
      const double v = m_(i, j);
      if (!std::isfinite(v) || v < 0.0) {
        throw Error(ErrorCode::kInvalidArgument,
                    "entry (" + std::to_string(i) + "," + std::to_string(j) +
                        ") is negative or not finite");
      }
    }
  }
}

NonnegativeMatrix NonnegativeMatrix::zero(std::size_t n) {
  return NonnegativeMatrix(Matrix(n));
}

NonnegativeMatrix NonnegativeMatrix::identity(std::size_t n) {
  return NonnegativeMatrix(Matrix::identity(n));
}

NonnegativeMatrix NonnegativeMatrix::perturb(double eps) const {
  Matrix p = m_;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < p.size(); ++j) p(i, j) += eps;
  return NonnegativeMatrix(std::move(p));
}

NonnegativeMatrix NonnegativeMatrix::scaled(double s) const {
  return NonnegativeMatrix(s * m_);
}

Vector subtract(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "vector lengths differ");
  }
  Vector d(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) d[i] = x[i] - y[i];
  return d;
}

Vector abs_diff(std::span<const double> x, std::span<const double> y) {
  Vector d = subtract(x, y);
  for (double& v : d) v = std::abs(v);
  return d;
}

double max_abs(std::span<const double> x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace fixpoint
