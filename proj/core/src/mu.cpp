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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>

#include "fbmsup/bounds.hpp"
#include "fbmsup/error.hpp"
#include "fbmsup/numerics.hpp"

namespace fbmsup {
namespace {

// Largest 2/H for which ceil(2^{2/H}) is computed exactly in 64 bits.
constexpr double kExactCeilingExponent = 52.0;

// log2 ceil(2^x).
double log2_ceil_pow2(double x) {
  if (x > kExactCeilingExponent) {
    return x + std::log1p(std::exp2(-x)) / std::numbers::ln2;
  }
  const double whole = std::floor(x);
  const double frac = x - whole;
  const int k = static_cast<int>(whole);
  std::uint64_t n = std::uint64_t{1} << k;
  if (frac > 0.0) {
    n = static_cast<std::uint64_t>(std::ceil(std::ldexp(std::exp2(frac), k)));
  }
  return std::log2(static_cast<double>(n));
}

void require_subdiffusive(Hurst h, const char* what) {
  if (!h.subdiffusive()) {
    throw DomainError(std::string(what) + " requires H <= 1/2");
  }
}

}  // namespace

double mu_one_upper_borovkov(Hurst h) {
  require_subdiffusive(h, "Borovkov bound on mu(H, 1)");
  const double levels = log2_ceil_pow2(2.0 / h.value());
  return kCPlus * std::sqrt(0.5 * levels);
}

double sudakov_mixing_weight(Hurst h, double h_ref) {
  const double H = h.value();
  if (!(h_ref > 0.0 && h_ref <= H && H <= 0.5 && h_ref < 0.5)) {
    throw DomainError("A(H | H_ref) requires 0 < H_ref <= H <= 1/2");
  }
  return 2.0 * (H - h_ref) / (1.0 - 2.0 * h_ref);
}

double mu_one_upper_sudakov(Hurst h, const BoundsConfig& config) {
  require_subdiffusive(h, "Sudakov bound on mu(H, 1)");
  const double H = h.value();
  const double lo = config.inner_margin;
  const double hi = H - config.inner_margin;
  if (!(lo < hi)) return std::numeric_limits<double>::infinity();

  const double own_borovkov = mu_one_upper_borovkov(h);
  const auto objective = [&](double h_ref) {
    // 1 - A written directly so that it is exactly 0 at H = 1/2.
    const double rest = std::max(0.0, (1.0 - 2.0 * H) / (1.0 - 2.0 * h_ref));
    const double weight = std::max(0.0, 1.0 - rest);
    const double reference = config.sudakov_form == SudakovForm::kReferenceBorovkov
                                 ? mu_one_upper_borovkov(Hurst(h_ref))
                                 : own_borovkov;
    return std::sqrt(weight) * config.brownian_sup_mean +
           std::sqrt(rest) * reference;
  };
  return numerics::minimize_1d(objective, numerics::Bracket(lo, hi),
                               config.tolerance)
      .value;
}

double moment_upper_from_mean(double mean_upper, double alpha) {
  if (!(alpha >= 1.0)) throw DomainError("moment order must be >= 1");
  if (!(mean_upper > 0.0)) throw DomainError("mean bound must be positive");
  if (alpha == 1.0) return mean_upper;
  const double spread = std::max(1.0, std::exp2(alpha - 2.0)) * alpha *
                        kSqrtHalfPi *
                        (std::pow(mean_upper, alpha - 1.0) +
                         numerics::abs_normal_moment(alpha - 1.0));
  return std::pow(mean_upper, alpha) + spread;
}

MuBounds mu_bounds(Hurst h, double alpha, const BoundsConfig& config) {
  require_subdiffusive(h, "mu(H, alpha) bounds");
  if (!(alpha >= 1.0) || !std::isfinite(alpha)) {
    throw DomainError("moment order alpha must be >= 1");
  }
  MuBounds out{h, alpha};
  out.lower =
      std::exp(alpha * (std::log(kCMinus) - 0.5 * std::log(h.value())));
  out.upper_borovkov = moment_upper_from_mean(mu_one_upper_borovkov(h), alpha);
  out.upper_combined = out.upper_borovkov;

  const double sudakov = mu_one_upper_sudakov(h, config);
  if (std::isfinite(sudakov)) {
    out.upper_sudakov = moment_upper_from_mean(sudakov, alpha);
    out.upper_combined = std::min(out.upper_combined, *out.upper_sudakov);
  }
  return out;
}

}  // namespace fbmsup
