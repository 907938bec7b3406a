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
#include <initializer_list>
#include <span>
#include <vector>

namespace fixpoint {

using Vector = std::vector<double>;

// Dense square matrix, row-major. Entries may have any sign; nonnegativity
// is enforced by NonnegativeMatrix.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<Vector>& rows);

  std::size_t size() const noexcept { return n_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * n_, n_};
  }
  std::span<double> row(std::size_t i) { return {data_.data() + i * n_, n_}; }

  std::vector<Vector> rows() const;

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(double s, const Matrix& a);
Vector operator*(const Matrix& a, std::span<const double> x);

// Leading k x k block.
Matrix leading_block(const Matrix& a, std::size_t k);

// Element of the positive cone of L(R^n): n >= 1, every entry finite and >= 0.
class NonnegativeMatrix {
 public:
  // Throws Error(kInvalidArgument) when the invariants fail.
  explicit NonnegativeMatrix(Matrix m);
  NonnegativeMatrix(std::initializer_list<std::initializer_list<double>> rows)
      : NonnegativeMatrix(Matrix(rows)) {}

  static NonnegativeMatrix zero(std::size_t n);
  static NonnegativeMatrix identity(std::size_t n);

  std::size_t size() const noexcept { return m_.size(); }
  double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  const Matrix& matrix() const noexcept { return m_; }

  // A^(eps): every entry shifted by eps > 0.
  NonnegativeMatrix perturb(double eps) const;
  NonnegativeMatrix scaled(double s) const;

  Vector apply(std::span<const double> x) const { return m_ * x; }

  bool operator==(const NonnegativeMatrix&) const = default;

 private:
  Matrix m_;
};

// Componentwise helpers used across modules.
Vector subtract(std::span<const double> x, std::span<const double> y);
Vector abs_diff(std::span<const double> x, std::span<const double> y);
double max_abs(std::span<const double> x);

}  // namespace fixpoint
