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

#include "fbmsup/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include "fbmsup/error.hpp"

namespace fbmsup::numerics {
namespace {

// Godfrey's coefficients for g = 7, n = 9.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoeffs = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

// Recursion depth below which the Simpson error estimate is not trusted.
constexpr int kMinSimpsonDepth = 4;

double checked(const ScalarFunction& f, double x) {
  const double y = f(x);
  if (!std::isfinite(y)) {
    throw EvaluationError("non-finite function value at x = " +
                          std::to_string(x));
  }
  return y;
}

struct SimpsonPanel {
  double a, b;
  double fa, fm, fb;
  double whole;
};

double simpson_recurse(const ScalarFunction& f, const SimpsonPanel& p,
                       double tol, int depth) {
  const double m = 0.5 * (p.a + p.b);
  const double lm = 0.5 * (p.a + m);
  const double rm = 0.5 * (m + p.b);
  if (!(p.a < lm && lm < m && m < rm && rm < p.b)) {
    // Interval exhausted at double resolution.
    return p.whole;
  }
  const double flm = checked(f, lm);
  const double frm = checked(f, rm);
  const double left = (m - p.a) / 6.0 * (p.fa + 4.0 * flm + p.fm);
  const double right = (p.b - m) / 6.0 * (p.fm + 4.0 * frm + p.fb);
  const double delta = left + right - p.whole;
  const int used = kMaxSimpsonDepth - depth;

  if (used >= kMinSimpsonDepth && std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  if (depth <= 0) {
    throw AccuracyError("adaptive Simpson exceeded maximum depth");
  }
  return simpson_recurse(f, {p.a, m, p.fa, flm, p.fm, left}, 0.5 * tol,
                         depth - 1) +
         simpson_recurse(f, {m, p.b, p.fm, frm, p.fb, right}, 0.5 * tol,
                         depth - 1);
}

}  // namespace

Bracket::Bracket(double lo, double hi) : lo_(lo), hi_(hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw DomainError("bracket requires finite lo < hi");
  }
}

double ln_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("ln_gamma requires x > 0");
  }
  if (x < 0.5) {
    // Gamma(x) = Gamma(x + 1) / x keeps the series in its accurate range.
    return ln_gamma(x + 1.0) - std::log(x);
  }
  const double z = x - 1.0;
  double series = kLanczosCoeffs[0];
  for (std::size_t i = 1; i < kLanczosCoeffs.size(); ++i) {
    series += kLanczosCoeffs[i] / (z + static_cast<double>(i));
  }
  const double t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t +
         std::log(series);
}

double abs_normal_moment(double p) {
  if (!(p >= 0.0) || !std::isfinite(p)) {
    throw DomainError("abs_normal_moment requires p >= 0");
  }
  if (p == 0.0) return 1.0;
  return std::exp(0.5 * p * std::numbers::ln2 + ln_gamma(0.5 * (p + 1.0)) -
                  0.5 * std::log(std::numbers::pi));
}

double std_normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double find_root(const ScalarFunction& f, Bracket bracket, double tol) {
  const double lo = bracket.lo();
  const double hi = bracket.hi();
  const double flo = checked(f, lo);
  const double fhi = checked(f, hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) {
    throw BracketError("find_root: no sign change on [" + std::to_string(lo) +
                       ", " + std::to_string(hi) + "]");
  }

  const auto width_ok = [tol](double a, double b) {
    const double floor =
        4.0 * std::numeric_limits<double>::epsilon() *
        std::max(std::abs(a), std::abs(b));
    return std::abs(b - a) <= std::max(tol, floor);
  };
  std::uintmax_t max_iter = 500;
  const auto [a, b] = boost::math::tools::toms748_solve(
      [&f](double x) { return checked(f, x); }, lo, hi, flo, fhi, width_ok,
      max_iter);
  return 0.5 * (a + b);
}

MinimizeResult minimize_1d(const ScalarFunction& f, Bracket bracket,
                           double tol) {
  const double lo = bracket.lo();
  const double step = bracket.width() / kCoarseProbes;
  std::vector<double> xs(kCoarseProbes + 1);
  std::vector<double> ys(kCoarseProbes + 1);
  for (int i = 0; i <= kCoarseProbes; ++i) {
    xs[i] = i == kCoarseProbes ? bracket.hi() : lo + step * i;
    ys[i] = checked(f, xs[i]);
  }

  // Brent cannot resolve the argument below ~sqrt(eps) relative.
  const int max_bits = std::numeric_limits<double>::digits / 2;
  const int bits = std::clamp(
      static_cast<int>(std::ceil(-std::log2(std::max(tol, 1e-300)))) + 1, 8,
      max_bits);

  const auto best_probe = std::min_element(ys.begin(), ys.end()) - ys.begin();
  MinimizeResult best{xs[best_probe], ys[best_probe], 1};
  int iterations = 1;

  for (int i = 0; i <= kCoarseProbes; ++i) {
    // Strict on the left so a plateau is refined once.
    const bool left_ok = i == 0 || ys[i] < ys[i - 1];
    const bool right_ok = i == kCoarseProbes || ys[i] <= ys[i + 1];
    if (!left_ok || !right_ok) continue;
    const double a = xs[std::max(i - 1, 0)];
    const double b = xs[std::min(i + 1, kCoarseProbes)];
    std::uintmax_t max_iter = 200;
    const auto [x, y] = boost::math::tools::brent_find_minima(
        [&f](double t) { return checked(f, t); }, a, b, bits, max_iter);
    iterations += static_cast<int>(max_iter);
    if (y < best.value) {
      best.argmin = x;
      best.value = y;
    }
  }
  best.iterations = iterations;
  return best;
}

double integrate(const ScalarFunction& f, Bracket bracket, double tol) {
  if (!(tol > 0.0)) throw DomainError("integrate requires tol > 0");
  const double a = bracket.lo();
  const double b = bracket.hi();
  const double fa = checked(f, a);
  const double fb = checked(f, b);
  const double fm = checked(f, 0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_recurse(f, {a, b, fa, fm, fb, whole}, tol, kMaxSimpsonDepth);
}

double integrate_semiinfinite(const ScalarFunction& f, double tol) {
  const ScalarFunction mapped = [&f](double x) {
    if (x >= 1.0) return 0.0;
    const double one_minus = 1.0 - x;
    return f(x / one_minus) / (one_minus * one_minus);
  };
  return integrate(mapped, Bracket(0.0, 1.0), tol);
}

}  // namespace fbmsup::numerics
