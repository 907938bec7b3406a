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
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "fixpoint/matrix.hpp"

namespace fixpoint {

struct NormalityOptions {
  // Strict "> 0" tests are evaluated as "> positivity_tol".
  double positivity_tol = 1e-12;
  // Rescale each remaining row by its largest absolute entry after every
  // elimination stage. Positive factors keep every sign, so the pivot test
  // is unaffected, but the fraction-free entries stay O(1).
  bool rescale = true;
};

// Division-free elimination of I - A.
//
// Stage k (0-based) stores the trailing block a_ij^(k+1) for k <= i,j < n as
// an (n-k) x (n-k) matrix. Off-diagonal entries carry the negated entries of
// the transformed system, so they stay >= 0 for every A >= 0. Elimination
// stops at the first pivot <= positivity_tol; the later stages are absent.
struct EliminationTable {
  std::size_t n = 0;
  std::vector<Matrix> stages;
  std::vector<double> pivots;
  // sigma[k] holds sigma_i^(k+1) for k <= i < n.
  std::vector<Vector> sigma;
  bool scaled = false;
  // Set when some pivot failed the positivity test.
  bool stopped = false;

  // Every pivot exists and passed the positivity test.
  bool complete() const noexcept { return pivots.size() == n && !stopped; }
  // Entry a_ij^(k+1) addressed with global indices i, j >= k.
  double entry(std::size_t k, std::size_t i, std::size_t j) const {
    return stages[k](i - k, j - k);
  }
};

enum class NormalityMethod {
  kMatkowski,     // pivots of the division-free elimination
  kAdmissible,    // leading principal minors of I - A
  kSpectral,      // Collatz-Wielandt bracket of the spectral radius
  kAsymptotic,    // decay of the powers A^p
};

std::string_view method_name(NormalityMethod m);

// Evidence that A is not normal: a nonnegative vector v != 0 with
// A v ~ lambda v and lambda >= 1.
struct Refutation {
  double lambda = 0.0;
  Vector vector;
  double residual = 0.0;  // ||A v - lambda v||_inf with ||v||_inf = 1
};

struct NormalityVerdict {
  bool normal = false;
  std::optional<Vector> certificate;  // z > 0 with A z < z
  std::optional<Refutation> refutation;
  NormalityMethod method = NormalityMethod::kMatkowski;
};

struct SpectralEstimate {
  double rho = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double epsilon_used = 0.0;
  bool converged = false;
  // Positive approximate Perron vector of A^(epsilon_used), max entry 1.
  Vector perron_vector;
};

EliminationTable matkowski_eliminate(const NonnegativeMatrix& a,
                                     const NormalityOptions& opts = {});
// Same elimination with an arbitrary right-hand side carried along as sigma^(1).
EliminationTable matkowski_eliminate(const NonnegativeMatrix& a,
                                     std::span<const double> rhs,
                                     const NormalityOptions& opts);

bool is_normal_matkowski(const NonnegativeMatrix& a,
                         const NormalityOptions& opts = {});

// Determinants of the leading i x i blocks of I - A, computed without the
// elimination above: cofactor expansion for n <= 4, partial pivoting beyond.
std::vector<double> leading_minors(const NonnegativeMatrix& a);

bool is_admissible(const NonnegativeMatrix& a, const NormalityOptions& opts = {});

// Solves (I - A) z = y through the elimination and back substitution, then
// verifies z > 0 and A z < z. Throws NotNormal / InvalidArgument.
NormalityVerdict normality_certificate(const NonnegativeMatrix& a,
                                       std::span<const double> y,
                                       const NormalityOptions& opts = {});
NormalityVerdict normality_certificate(const NonnegativeMatrix& a,
                                       const NormalityOptions& opts = {});

// Full decision: certificate when normal, Perron-type refutation otherwise.
// Throws Undecided when a pivot lands in (-tol, tol].
NormalityVerdict classify_normality(const NonnegativeMatrix& a,
                                    const NormalityOptions& opts = {});

// Bisection for inf{lambda >= 0 : A z <= lambda z for some z > 0}.
double nu_estimate(const NonnegativeMatrix& a, double tol,
                   const NormalityOptions& opts = {});

// Power iteration on A + eps * ones for eps_k = 1e-2 * 4^-k, k = 0..20.
// lower/upper are Collatz-Wielandt bounds for A itself.
SpectralEstimate spectral_radius(const NonnegativeMatrix& a, double tol);

// True once some ||A^p||_1 < 1 (p <= max_p); false when ||A^p||_1 >= 1 and
// the spectral bracket certifies rho >= 1 - positivity_tol. Throws Undecided
// otherwise.
bool is_asymptotic(const NonnegativeMatrix& a, double tol, std::size_t max_p,
                   const NormalityOptions& opts = {});

// Truncated sum of A^p, p >= 0. Throws NotNormal.
NonnegativeMatrix neumann_inverse(const NonnegativeMatrix& a, double tol,
                                  const NormalityOptions& opts = {});

}  // namespace fixpoint
