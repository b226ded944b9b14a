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
#include <limits>
#include <numbers>

#include "fbmsup/bounds.hpp"
#include "fbmsup/error.hpp"
#include "fbmsup/numerics.hpp"

namespace fbmsup {
namespace {

constexpr double kKappaMaxHurst = 1.0 - 1e-6;
constexpr double kLambdaTolerance = 1e-10;
// Below this H the lambda integrand is non-smooth at t = 0 and the
// quadrature runs in s with t = s^{1/(1-H)}.
constexpr double kLambdaSubstitutionHurst = 0.25;

double log_kappa(Hurst h) {
  const double H = h.value();
  if (H > kKappaMaxHurst) {
    throw RangeError("kappa overflows for H > 1 - 1e-6");
  }
  return -0.5 * std::log(std::numbers::pi) +
         std::numbers::ln2 / (2.0 * (1.0 - H)) +
         numerics::ln_gamma((2.0 - H) / (2.0 - 2.0 * H));
}

double log_nu(Hurst h) {
  const double H = h.value();
  return H * std::log(H) + (1.0 - H) * std::log1p(-H);
}

double finite_exp(double log_value, const char* what) {
  const double v = std::exp(log_value);
  if (!std::isfinite(v) || v == 0.0) {
    throw RangeError(std::string(what) + " is not representable");
  }
  return v;
}

}  // namespace

const double kCMinus =
    1.0 / (2.0 * std::sqrt(std::numbers::pi * std::numbers::e *
                           std::numbers::ln2));

double kappa(Hurst h) { return finite_exp(log_kappa(h), "kappa(H)"); }

double nu(Hurst h) { return std::exp(log_nu(h)); }

double lower_l1(Hurst h) {
  const double H = h.value();
  return finite_exp(-std::numbers::ln2 + log_nu(h) / (1.0 - H) + log_kappa(h),
                    "L1(H)");
}

double upper_u1(Hurst h) {
  if (!h.superdiffusive()) {
    throw DomainError("U1 is an upper bound only for H >= 1/2");
  }
  return 0.5 * kappa(h);
}

double lower_l2(Hurst h) {
  if (!h.subdiffusive()) {
    throw DomainError("L2 is a lower bound only for H <= 1/2");
  }
  return (1.0 - h.value()) * kappa(h);
}

double lower_l3(Hurst h) {
  const double H = h.value();
  const double log_mu_lower = std::log(kCMinus) - 0.5 * std::log(H);
  return finite_exp((log_nu(h) + log_mu_lower) / (1.0 - H), "L3(H)");
}

double upper_u2(Hurst h, const BoundsConfig& config) {
  const double alpha = 1.0 / (1.0 - h.value());
  return omega(h).omega * mu_bounds(h, alpha, config).upper_combined;
}

double sudakov_drift_weight(Hurst h, double h_ref) {
  const double H = h.value();
  if (!(h_ref > 0.0 && h_ref <= H && H <= 0.5)) {
    throw DomainError("gamma(H | H_ref) requires 0 < H_ref <= H <= 1/2");
  }
  if (h_ref == 0.5) return 1.0;
  const double base = (1.0 - 2.0 * H) / (1.0 - 2.0 * h_ref);
  const double exponent = (1.0 - 2.0 * h_ref) / (2.0 * (1.0 - h_ref));
  return std::pow(base, exponent);
}

double upper_u2_sudakov(Hurst h, const BoundsConfig& config) {
  if (!h.subdiffusive()) {
    throw DomainError("U2' is defined only for H <= 1/2");
  }
  const double lo = config.inner_margin;
  const double hi = h.value() - config.inner_margin;
  if (!(lo < hi)) return std::numeric_limits<double>::infinity();

  const auto objective = [&](double h_ref) {
    return sudakov_drift_weight(h, h_ref) * upper_u2(Hurst(h_ref), config);
  };
  const auto best =
      numerics::minimize_1d(objective, numerics::Bracket(lo, hi),
                            config.tolerance);
  return 0.5 + best.value;
}

BoundsReport combined_bounds(Hurst h, const BoundsConfig& config) {
  BoundsReport report{h};
  double lower = 0.0;
  double upper = std::numeric_limits<double>::infinity();

  if (h.subdiffusive()) {
    report.l2 = lower_l2(h);
    report.l3 = lower_l3(h);
    report.u2 = upper_u2(h, config);
    report.u2_sudakov = upper_u2_sudakov(h, config);
    report.u2_circ = std::min(*report.u2, *report.u2_sudakov);
    lower = std::max(lower, std::max(*report.l2, *report.l3));
    upper = std::min(upper, *report.u2_circ);
  }
  if (h.superdiffusive()) {
    report.l1 = lower_l1(h);
    report.u1 = upper_u1(h);
    lower = std::max(lower, *report.l1);
    upper = std::min(upper, *report.u1);
  }
  // At H = 1/2 the two sides coincide and may cross by a rounding error.
  if (lower > upper && lower - upper <= 1e-12 * upper) lower = upper;
  report.lower_combined = lower;
  report.upper_combined = upper;
  report.ratio = upper / lower;
  return report;
}

double drift_rescale(Hurst h, double c, double value_unit_drift) {
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw DomainError("drift must be positive");
  }
  const double H = h.value();
  return std::exp(H / (H - 1.0) * std::log(c)) * value_unit_drift;
}

double lambda_u(double u, Hurst h) {
  if (!(u > 0.0) || !std::isfinite(u)) {
    throw DomainError("lambda(u, H) requires u > 0");
  }
  const double H = h.value();
  const double log_norm = -0.5 * std::log(2.0 * std::numbers::pi);
  const auto density = [=](double t) {
    if (t <= 0.0) return 0.0;
    const double log_var = 2.0 * H * std::log(t);
    const double z = t + u;
    return std::exp(log_norm - 0.5 * log_var - 0.5 * z * z * std::exp(-log_var));
  };

  double integral = 0.0;
  if (H < kLambdaSubstitutionHurst) {
    const double q = 1.0 / (1.0 - H);
    integral = numerics::integrate_semiinfinite(
        [&](double s) {
          if (s <= 0.0) return 0.0;
          const double t = std::pow(s, q);
          return density(t) * q * t / s;
        },
        kLambdaTolerance);
  } else {
    integral = numerics::integrate_semiinfinite(density, kLambdaTolerance);
  }
  if (!(integral > 0.0)) {
    throw RangeError("lambda(u, H) integral underflows");
  }
  return 1.0 / integral;
}

}  // namespace fbmsup
