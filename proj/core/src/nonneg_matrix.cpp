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

#include "fixpoint/nonneg_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "fixpoint/error.hpp"
#include "fixpoint/norms.hpp"

namespace fixpoint {

namespace {

void require_tolerance(double tol) {
  if (!(tol > 0.0) || !std::isfinite(tol)) {
    throw Error(ErrorCode::kInvalidArgument,
                "InvalidTolerance: tolerance must be positive and finite");
  }
}

// Stage-1 grid of the b01 transform: 1 - a_ii on the diagonal, a_ij off it.
Matrix first_stage(const NonnegativeMatrix& a) {
  Matrix s = a.matrix();
  for (std::size_t i = 0; i < s.size(); ++i) s(i, i) = 1.0 - s(i, i);
  return s;
}

// Determinant by cofactor expansion along the first row.
double cofactor_det(const Matrix& m) {
  const std::size_t n = m.size();
  if (n == 1) return m(0, 0);
  if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  double det = 0.0;
  for (std::size_t c = 0; c < n; ++c) {
    Matrix minor(n - 1);
    for (std::size_t i = 1; i < n; ++i) {
      std::size_t cc = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == c) continue;
        minor(i - 1, cc++) = m(i, j);
      }
    }
    const double sign = (c % 2 == 0) ? 1.0 : -1.0;
    det += sign * m(0, c) * cofactor_det(minor);
  }
  return det;
}

// Determinant by Gaussian elimination with partial pivoting.
double pivoted_det(Matrix m) {
  const std::size_t n = m.size();
  double det = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(m(i, k)) > std::abs(m(p, k))) p = i;
    if (m(p, k) == 0.0) return 0.0;
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
      det = -det;
    }
    det *= m(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = m(i, k) / m(k, k);
      for (std::size_t j = k; j < n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return det;
}

// Back substitution on the triangular system left by the elimination.
Vector back_substitute(const EliminationTable& t) {
  const std::size_t n = t.n;
  Vector z(n, 0.0);
  for (std::size_t kk = n; kk-- > 0;) {
    double s = t.sigma[kk][0];
    for (std::size_t j = kk + 1; j < n; ++j) s += t.entry(kk, kk, j) * z[j];
    z[kk] = s / t.pivots[kk];
  }
  return z;
}

// max_i (M v)_i / v_i over v > 0, and the supported lower bound.
struct CwBounds {
  double lower = 0.0;
  double upper = std::numeric_limits<double>::infinity();
};

// Rigorous Collatz-Wielandt bounds for rho(A) from a positive vector v:
//   rho(A) <= (max_i (A^p v)_i / v_i)^(1/p)
//   rho(A) >= (min_{i in S} (A^p v_S)_i / v_i)^(1/p)
// where v_S keeps only the largest entries of v (still >= 0, nonzero).
CwBounds collatz_wielandt(const Matrix& a, const Vector& v) {
  const std::size_t n = a.size();
  CwBounds b;
  Vector w = v;
  for (std::size_t p = 1; p <= n; ++p) {
    w = a * w;
    double mx = 0.0;
    for (std::size_t i = 0; i < n; ++i) mx = std::max(mx, w[i] / v[i]);
    b.upper = std::min(b.upper, std::pow(mx, 1.0 / static_cast<double>(p)));
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return v[x] > v[y]; });
  std::vector<bool> in_support(n, false);
  for (std::size_t m = 0; m < n; ++m) {
    in_support[order[m]] = true;
    Vector vs(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      if (in_support[i]) vs[i] = v[i];
    Vector ws = vs;
    for (std::size_t p = 1; p <= n; ++p) {
      ws = a * ws;
      double mn = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < n; ++i)
        if (in_support[i]) mn = std::min(mn, ws[i] / vs[i]);
      b.lower = std::max(b.lower, std::pow(mn, 1.0 / static_cast<double>(p)));
    }
  }
  return b;
}

// Shifted power iteration on B + I for a strictly positive B; v is updated in
// place and kept normalized to max entry 1.
void power_iterate(const Matrix& b, Vector& v, double width_tol,
                   std::size_t max_iter) {
  const std::size_t n = b.size();
  for (std::size_t it = 0; it < max_iter; ++it) {
    Vector bv = b * v;
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = bv[i] / v[i];
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    if (hi - lo <= width_tol) return;
    double mx = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      v[i] += bv[i];
      mx = std::max(mx, v[i]);
    }
    for (double& x : v) x /= mx;
  }
}

double weighted_induced_norm(const Matrix& m, const Vector& z) {
  double best = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < m.size(); ++j) s += std::abs(m(i, j)) * z[j];
    best = std::max(best, s / z[i]);
  }
  return best;
}

}  // namespace

std::string_view method_name(NormalityMethod m) {
  switch (m) {
    case NormalityMethod::kMatkowski: return "matkowski";
    case NormalityMethod::kAdmissible: return "admissible";
    case NormalityMethod::kSpectral: return "spectral";
    case NormalityMethod::kAsymptotic: return "asymptotic";
  }
  return "unknown";
}

EliminationTable matkowski_eliminate(const NonnegativeMatrix& a,
                                     const NormalityOptions& opts) {
  const Vector ones(a.size(), 1.0);
  return matkowski_eliminate(a, ones, opts);
}

EliminationTable matkowski_eliminate(const NonnegativeMatrix& a,
                                     std::span<const double> rhs,
                                     const NormalityOptions& opts) {
  const std::size_t n = a.size();
  if (rhs.size() != n) {
    throw Error(ErrorCode::kDimensionMismatch,
                "right-hand side has length " + std::to_string(rhs.size()) +
                    ", expected " + std::to_string(n));
  }
  EliminationTable t;
  t.n = n;
  t.scaled = opts.rescale;
  t.stages.push_back(first_stage(a));
  t.sigma.emplace_back(rhs.begin(), rhs.end());

  for (std::size_t k = 0; k < n; ++k) {
    const Matrix& cur = t.stages.back();
    const Vector& sig = t.sigma.back();
    const double pivot = cur(0, 0);
    t.pivots.push_back(pivot);
    if (!(pivot > opts.positivity_tol)) {
      t.stopped = true;
      break;
    }
    if (k + 1 == n) break;
    // Local indices: row/col 0 of `cur` is the global index k.
    const std::size_t m = cur.size() - 1;
    Matrix next(m);
    Vector next_sig(m);
    for (std::size_t i = 1; i <= m; ++i) {
      for (std::size_t j = 1; j <= m; ++j) {
        const double prod = cur(i, 0) * cur(0, j);
        next(i - 1, j - 1) =
            (i == j) ? pivot * cur(i, j) - prod : pivot * cur(i, j) + prod;
      }
      next_sig[i - 1] = pivot * sig[i] + cur(i, 0) * sig[0];
    }
    if (opts.rescale) {
      for (std::size_t i = 0; i < m; ++i) {
        const double s = max_abs(next.row(i));
        if (s > 0.0 && std::isfinite(s)) {
          for (double& x : next.row(i)) x /= s;
          next_sig[i] /= s;
        }
      }
    }
    t.stages.push_back(std::move(next));
    t.sigma.push_back(std::move(next_sig));
  }
  return t;
}

bool is_normal_matkowski(const NonnegativeMatrix& a,
                         const NormalityOptions& opts) {
  return matkowski_eliminate(a, opts).complete();
}

std::vector<double> leading_minors(const NonnegativeMatrix& a) {
  const Matrix ia = Matrix::identity(a.size()) - a.matrix();
  std::vector<double> minors;
  minors.reserve(a.size());
  for (std::size_t k = 1; k <= a.size(); ++k) {
    Matrix block = leading_block(ia, k);
    minors.push_back(a.size() <= 4 ? cofactor_det(block)
                                   : pivoted_det(std::move(block)));
  }
  return minors;
}

bool is_admissible(const NonnegativeMatrix& a, const NormalityOptions& opts) {
  const auto minors = leading_minors(a);
  return std::all_of(minors.begin(), minors.end(),
                     [&](double d) { return d > opts.positivity_tol; });
}

NormalityVerdict normality_certificate(const NonnegativeMatrix& a,
                                       const NormalityOptions& opts) {
  const Vector ones(a.size(), 1.0);
  return normality_certificate(a, ones, opts);
}

NormalityVerdict normality_certificate(const NonnegativeMatrix& a,
                                       std::span<const double> y,
                                       const NormalityOptions& opts) {
  if (y.size() != a.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "right-hand side length does not match matrix dimension");
  }
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (!(y[i] > 0.0) || !std::isfinite(y[i])) {
      throw Error(ErrorCode::kInvalidArgument,
                  "BadRightHandSide: y must be strictly positive", i);
    }
  }
  const EliminationTable t = matkowski_eliminate(a, y, opts);
  if (!t.complete()) {
    throw Error(ErrorCode::kNotNormal,
                "pivot " + std::to_string(t.pivots.size()) + " is " +
                    std::to_string(t.pivots.back()),
                t.pivots.size() - 1);
  }
  Vector z = back_substitute(t);

  // One step of iterative refinement against (I - A) z = y.
  const Matrix ia = Matrix::identity(a.size()) - a.matrix();
  const Vector r = subtract(y, ia * z);
  const Vector dz = back_substitute(matkowski_eliminate(a, r, opts));
  Vector refined = z;
  for (std::size_t i = 0; i < z.size(); ++i) refined[i] += dz[i];
  if (max_abs(subtract(y, ia * refined)) <= max_abs(r)) z = std::move(refined);

  const Vector az = a.apply(z);
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (!(z[i] > opts.positivity_tol) || !(az[i] < z[i])) {
      throw Error(ErrorCode::kNumericalFailure,
                  "certificate failed verification at component " +
                      std::to_string(i),
                  i);
    }
  }
  NormalityVerdict v;
  v.normal = true;
  v.certificate = std::move(z);
  v.method = NormalityMethod::kMatkowski;
  return v;
}

NormalityVerdict classify_normality(const NonnegativeMatrix& a,
                                    const NormalityOptions& opts) {
  const EliminationTable t = matkowski_eliminate(a, opts);
  if (t.complete()) return normality_certificate(a, opts);

  const SpectralEstimate sp = spectral_radius(a, 1e-10);
  // A pivot near zero leaves the sign test inconclusive. It is settled only
  // when the Collatz-Wielandt lower bound already reaches 1 (the identity,
  // say); anything closer to the boundary is reported rather than guessed.
  const std::size_t k = t.pivots.size() - 1;
  if (t.pivots[k] > -opts.positivity_tol && sp.lower < 1.0) {
    throw Error(ErrorCode::kUndecided,
                "pivot " + std::to_string(k) + " is within tolerance of 0", k);
  }
  Refutation ref;
  ref.lambda = sp.rho;
  ref.vector = sp.perron_vector;
  const Vector av = a.apply(ref.vector);
  for (std::size_t i = 0; i < av.size(); ++i)
    ref.residual = std::max(ref.residual, std::abs(av[i] - ref.lambda * ref.vector[i]));
  NormalityVerdict v;
  v.normal = false;
  v.refutation = std::move(ref);
  v.method = NormalityMethod::kMatkowski;
  return v;
}

double nu_estimate(const NonnegativeMatrix& a, double tol,
                   const NormalityOptions& opts) {
  require_tolerance(tol);
  double lo = 0.0;
  double hi = induced_norm_inf(a.matrix());
  if (hi == 0.0) return 0.0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (is_normal_matkowski(a.scaled(1.0 / mid), opts)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

SpectralEstimate spectral_radius(const NonnegativeMatrix& a, double tol) {
  require_tolerance(tol);
  const std::size_t n = a.size();
  SpectralEstimate est;
  est.lower = 0.0;
  est.upper = std::numeric_limits<double>::infinity();
  Vector v(n, 1.0);
  for (int k = 0; k <= 20; ++k) {
    const double eps = 1e-2 * std::pow(4.0, -k);
    const Matrix b = a.perturb(eps).matrix();
    power_iterate(b, v, 0.1 * tol, 20000);
    const CwBounds cw = collatz_wielandt(a.matrix(), v);
    est.lower = std::max(est.lower, cw.lower);
    est.upper = std::min(est.upper, cw.upper);
    est.epsilon_used = eps;
    if (est.upper - est.lower <= tol) {
      est.converged = true;
      break;
    }
  }
  // Rounding can push the two bounds past each other on exact spectra.
  if (est.lower > est.upper) std::swap(est.lower, est.upper);
  est.rho = 0.5 * (est.lower + est.upper);
  est.perron_vector = std::move(v);
  return est;
}

bool is_asymptotic(const NonnegativeMatrix& a, double tol, std::size_t max_p,
                   const NormalityOptions& opts) {
  require_tolerance(tol);
  if (max_p == 0) {
    throw Error(ErrorCode::kInvalidArgument, "max_p must be >= 1");
  }
  std::optional<SpectralEstimate> sp;
  Matrix power = a.matrix();
  for (std::size_t p = 1; p <= max_p; ++p) {
    const double norm = induced_norm_1(power);
    if (norm < 1.0) return true;
    if (!sp) {
      sp = spectral_radius(a, tol);
      if (sp->lower >= 1.0 - opts.positivity_tol) return false;
    }
    if (!std::isfinite(norm)) break;
    power = power * a.matrix();
  }
  throw Error(ErrorCode::kUndecided,
              "no power up to " + std::to_string(max_p) +
                  " has norm < 1 and rho >= 1 is not certified");
}

NonnegativeMatrix neumann_inverse(const NonnegativeMatrix& a, double tol,
                                  const NormalityOptions& opts) {
  require_tolerance(tol);
  const NormalityVerdict verdict = normality_certificate(a, opts);
  const Vector& z = *verdict.certificate;
  const Vector az = a.apply(z);
  double alpha = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) alpha = std::max(alpha, az[i] / z[i]);
  const auto [zmin, zmax] = std::minmax_element(z.begin(), z.end());
  const double spread = *zmax / *zmin;

  const std::size_t n = a.size();
  Matrix sum = Matrix::identity(n);
  Matrix term = Matrix::identity(n);
  constexpr std::size_t kMaxTerms = 1'000'000;
  for (std::size_t p = 1; p <= kMaxTerms; ++p) {
    term = term * a.matrix();
    // `term` is A^p; truncating here leaves (I - A) S - I = -A^p and a tail
    // of A^p (I - A)^{-1}, bounded through the certificate's weighted norm.
    const bool residual_ok = induced_norm_1(term) <= tol * (1.0 - alpha);
    const bool tail_ok = weighted_induced_norm(term, z) * spread <= tol * (1.0 - alpha);
    if (residual_ok && tail_ok) return NonnegativeMatrix(std::move(sum));
    sum = sum + term;
  }
  throw Error(ErrorCode::kNumericalFailure,
              "Neumann series did not reach tolerance");
}

}  // namespace fixpoint
