// Copyright 2026 The fbmsup Authors.
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

#include <functional>

namespace fbmsup::numerics {

inline constexpr double kDefaultTolerance = 1e-12;

// Number of equispaced cells scanned by minimize_1d before local refinement.
// The objectives minimized here can have two local minima, so a single
// Brent run started from the full bracket is not enough.
inline constexpr int kCoarseProbes = 64;

// Maximum recursion depth of the adaptive Simpson rule.
inline constexpr int kMaxSimpsonDepth = 50;

using ScalarFunction = std::function<double(double)>;

// Closed search interval with lo < hi, both finite.
class Bracket {
 public:
  Bracket(double lo, double hi);

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double width() const { return hi_ - lo_; }

 private:
  double lo_;
  double hi_;
};

struct MinimizeResult {
  double argmin = 0.0;
  double value = 0.0;
  int iterations = 0;
};

/// log Gamma(x) for x > 0 via a Lanczos approximation (g = 7, 9 terms).
/// Throws DomainError for x <= 0 or non-finite x.
double ln_gamma(double x);

/// E|N|^p for a standard normal N, i.e. 2^{p/2} Gamma((p+1)/2) / sqrt(pi).
double abs_normal_moment(double p);

double std_normal_cdf(double x);

/// Bracketing root finder (TOMS 748, a Brent-class method with guaranteed
/// convergence). Returns a point whose final bracket is no wider than tol.
///
/// Throws BracketError if f(lo) and f(hi) have the same strict sign, and
/// EvaluationError if f returns a non-finite value.
double find_root(const ScalarFunction& f, Bracket bracket,
                 double tol = kDefaultTolerance);

/// Global-ish 1-D minimizer: evaluates f on kCoarseProbes + 1 equispaced
/// points, then refines every discrete local minimum of the scan with Brent's
/// method on its two neighbouring cells and returns the best point found.
/// Deterministic for a given bracket.
MinimizeResult minimize_1d(const ScalarFunction& f, Bracket bracket,
                           double tol = kDefaultTolerance);

/// Adaptive Simpson quadrature on a finite interval with absolute error
/// target tol. Throws AccuracyError when kMaxSimpsonDepth is exhausted.
double integrate(const ScalarFunction& f, Bracket bracket, double tol);

/// Integral of f over (0, inf) using t = x / (1 - x) and adaptive Simpson on
/// (0, 1). The integrand must decay at infinity; the mapped integrand is
/// taken to be zero at x = 1.
double integrate_semiinfinite(const ScalarFunction& f, double tol);

}  // namespace fbmsup::numerics
