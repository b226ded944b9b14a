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
#include <string>

#include "fbmsup/bounds.hpp"
#include "fbmsup/error.hpp"
#include "fbmsup/numerics.hpp"

namespace fbmsup {
namespace {

constexpr int kMaxBracketDoublings = 200;
// Search range of the direct minimization, in log T.
constexpr double kLogTMin = -30.0;
constexpr double kLogTMax = 30.0;

// x^y with 0^0 = 1.
double pow0(double x, double y) { return y == 0.0 ? 1.0 : std::pow(x, y); }

// f(T) = a + (a - T)(1 + T)^{-(a + 2)}; F'(T) = T^{a-1} f(T).
double stationarity(double T, double a) {
  return a + (a - T) * std::pow(1.0 + T, -(a + 2.0));
}

// F(T) = T^a (1 + (1 + T)^{-(a + 1)}): the objective for T beyond 2H/(1-2H).
double tail_objective(double T, double a) {
  return std::pow(T, a) * (1.0 + std::pow(1.0 + T, -(a + 1.0)));
}

double h0_equation(double H) {
  const double a = H / (1.0 - H);
  return stationarity(1.0 + a, a);
}

void require_subdiffusive(Hurst h) {
  if (!h.subdiffusive()) throw DomainError("omega(H) requires H <= 1/2");
}

}  // namespace

double psi(double T, Hurst h) {
  if (!(T > 0.0)) throw DomainError("psi requires T > 0");
  require_subdiffusive(h);
  const double H = h.value();
  return std::min(T * (1.0 - 2.0 * H) / (2.0 * H), 1.0);
}

double omega_objective(double T, Hurst h) {
  const double H = h.value();
  const double p = psi(T, h);
  const double a = H / (1.0 - H);
  const double q = 1.0 / (1.0 - H);
  const double log_inner =
      (H < 0.5 ? (1.0 - 2.0 * H) * std::log(p) : 0.0) + H * std::log(T) -
      std::log(p + T);
  return std::exp(a * std::log(T)) + std::exp(q * log_inner);
}

double hurst_h0() {
  static const double h0 =
      numerics::find_root(h0_equation, numerics::Bracket(0.05, 0.4));
  return h0;
}

double omega1(Hurst h) {
  require_subdiffusive(h);
  const double H = h.value();
  const double a = H / (1.0 - H);
  return 2.0 * std::pow(2.0 * H, a) *
         pow0(1.0 - 2.0 * H, (1.0 - 2.0 * H) / (2.0 - 2.0 * H));
}

double omega2(Hurst h) {
  require_subdiffusive(h);
  return 1.0 / nu(h);
}

double tau_circ(Hurst h) {
  require_subdiffusive(h);
  const double H = h.value();
  const double a = H / (1.0 - H);
  const double lo = 1.0 + a;
  const auto f = [a](double T) { return stationarity(T, a); };
  if (f(lo) >= 0.0) {
    // Double root exactly at H0; no root above it.
    if (H <= hurst_h0()) return lo;
    throw DomainError("tau_circ(H) exists only for H <= H0");
  }
  double hi = 2.0 * lo;
  int doublings = 0;
  while (f(hi) <= 0.0) {
    if (++doublings > kMaxBracketDoublings) {
      throw BracketError("tau_circ: no sign change after " +
                         std::to_string(kMaxBracketDoublings) + " doublings");
    }
    hi *= 2.0;
  }
  return numerics::find_root(f, numerics::Bracket(lo, hi));
}

OmegaBreakdown omega(Hurst h) {
  require_subdiffusive(h);
  const double H = h.value();
  OmegaBreakdown out{h};
  out.omega1 = omega1(h);
  out.omega2 = omega2(h);
  out.omega = out.omega1;
  out.branch = OmegaBranch::kOmega1;

  if (H <= hurst_h0()) {
    const double a = H / (1.0 - H);
    const double tc = tau_circ(h);
    out.tau_circ = tc;
    out.omega0 = tail_objective(tc, a);
    if (*out.omega0 < out.omega1) {
      out.omega = *out.omega0;
      out.branch = OmegaBranch::kOmega0;
    }
  }
  return out;
}

numerics::MinimizeResult omega_direct(Hurst h) {
  require_subdiffusive(h);
  auto result = numerics::minimize_1d(
      [h](double log_t) { return omega_objective(std::exp(log_t), h); },
      numerics::Bracket(kLogTMin, kLogTMax));
  result.argmin = std::exp(result.argmin);
  return result;
}

}  // namespace fbmsup
