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

#include <optional>

#include "fbmsup/hurst.hpp"
#include "fbmsup/numerics.hpp"

// Bounds on M(H) = E sup_{t >= 0} (B_H(t) - t), the expected all-time
// supremum of unit-drift fractional Brownian motion, and on the moments
// mu(H, alpha) = E (sup_{[0,1]} B_H)^alpha that enter them.
//
// All functions are pure. Powers are evaluated in log space.
namespace fbmsup {

// Lower constant of E sup_{[0,1]} B_H ~ C^- / sqrt(H): 1 / (2 sqrt(pi e ln 2)).
extern const double kCMinus;
// Upper constant of the Borovkov-type bound on E sup_{[0,1]} B_H.
inline constexpr double kCPlus = 1.695;
// sqrt(pi / 2) = int_0^inf exp(-y^2 / 2) dy.
inline constexpr double kSqrtHalfPi = 1.2533141373155002512;
// E sup_{[0,1]} B for standard Brownian motion: E|N| = sqrt(2 / pi).
inline constexpr double kBrownianSupMean = 0.79788456080286535588;

// Which reference bound enters the Sudakov interpolation for mu(H, 1).
enum class SudakovForm {
  // sqrt(A) mu(1/2,1) + sqrt(1-A) * borovkov(H_ref); a valid upper bound.
  kReferenceBorovkov,
  // sqrt(A) mu(1/2,1) + sqrt(1-A) * borovkov(H).
  kOwnBorovkov,
};

struct BoundsConfig {
  // Value used for mu(1/2, 1) = E sup_{[0,1]} B in the Sudakov refinement.
  double brownian_sup_mean = kBrownianSupMean;
  SudakovForm sudakov_form = SudakovForm::kReferenceBorovkov;
  // Exclusion margin at both ends of inner infima over a reference H.
  double inner_margin = 1e-6;
  double tolerance = numerics::kDefaultTolerance;
};

struct MuBounds {
  Hurst h;
  double alpha = 1.0;
  double lower = 0.0;
  double upper_borovkov = 0.0;
  // Absent when the Sudakov search interval is empty (H too small).
  std::optional<double> upper_sudakov{};
  double upper_combined = 0.0;
};

enum class OmegaBranch { kOmega0, kOmega1 };

struct OmegaBreakdown {
  Hurst h;
  double omega = 0.0;
  OmegaBranch branch = OmegaBranch::kOmega1;
  std::optional<double> omega0{};
  double omega1 = 0.0;
  double omega2 = 0.0;
  std::optional<double> tau_circ{};
  std::optional<double> argmin_T_direct{};
};

// Out-of-regime bounds are left empty. At H = 1/2 every field is set.
struct BoundsReport {
  Hurst h;
  std::optional<double> l1{}, l2{}, l3{};
  double lower_combined = 0.0;
  std::optional<double> u1{}, u2{}, u2_sudakov{}, u2_circ{};
  double upper_combined = 0.0;
  double ratio = 0.0;
};

// ---------------------------------------------------------------------------
// Closed-form ingredients

/// kappa(H) = E|N|^{1/(1-H)} = pi^{-1/2} 2^{1/(2(1-H))} Gamma((2-H)/(2-2H)).
/// Throws RangeError for H > 1 - 1e-6 or when the value overflows.
double kappa(Hurst h);

/// nu(H) = H^H (1-H)^{1-H}, the maximum of T -> T^H / (1 + T).
double nu(Hurst h);

// ---------------------------------------------------------------------------
// Superdiffusive bounds (L1 holds on the whole domain)

double lower_l1(Hurst h);

/// U1(H) = kappa(H) / 2. DomainError for H < 1/2.
double upper_u1(Hurst h);

// ---------------------------------------------------------------------------
// Subdiffusive bounds

/// L2(H) = (1 - H) kappa(H). DomainError for H > 1/2.
double lower_l2(Hurst h);

/// L3(H) = nu(H)^{1/(1-H)} (C^- / sqrt(H))^{1/(1-H)}. Valid for all H.
double lower_l3(Hurst h);

/// C^+ sqrt(log2 ceil(2^{2/H}) / 2). The ceiling is exact for 2/H <= 52;
/// above that 2/H + log2(1 + 2^{-2/H}) is used, which is never smaller.
double mu_one_upper_borovkov(Hurst h);

/// A(H | H_ref) = 2 (H - H_ref) / (1 - 2 H_ref).
double sudakov_mixing_weight(Hurst h, double h_ref);

/// inf over H_ref of sqrt(A) mu(1/2,1) + sqrt(1 - A) mu_ref, with mu_ref
/// chosen by config.sudakov_form. Returns +inf when the H_ref interval
/// (margin, H - margin) is empty.
double mu_one_upper_sudakov(Hurst h, const BoundsConfig& config = {});

/// Upper bound on mu(H, alpha) given an upper bound on mu(H, 1), from the
/// Borell-TIS tail: m^a + max(1, 2^{a-2}) a sqrt(pi/2) (m^{a-1} + E|N|^{a-1}).
/// For alpha = 1 this returns mean_upper itself.
double moment_upper_from_mean(double mean_upper, double alpha);

/// Lower and upper bounds on mu(H, alpha), 0 < H <= 1/2, alpha >= 1.
MuBounds mu_bounds(Hurst h, double alpha, const BoundsConfig& config = {});

// ---------------------------------------------------------------------------
// Split-point constant omega(H)

/// min(T (1 - 2H) / (2H), 1); zero at H = 1/2.
double psi(double T, Hurst h);

/// T^{H/(1-H)} + (psi^{1-2H} T^H / (psi + T))^{1/(1-H)} with 0^0 = 1.
double omega_objective(double T, Hurst h);

/// Unique root in [0.05, 0.4] of H/(1-H) = ((2-H)/(1-H))^{-(2-H)/(1-H)}
/// (about 0.1541). Computed once per process.
double hurst_h0();

double omega1(Hurst h);
double omega2(Hurst h);

/// Larger root of a + (a - T)(1 + T)^{-(a+2)}, a = H/(1-H); only exists for
/// H <= H0.
double tau_circ(Hurst h);

/// omega(H) via the branch analysis of the objective; 0 < H <= 1/2.
OmegaBreakdown omega(Hurst h);

/// omega(H) by direct numerical minimization of omega_objective over log T.
numerics::MinimizeResult omega_direct(Hurst h);

// ---------------------------------------------------------------------------
// Upper bounds on M(H), H <= 1/2

/// U2(H) = omega(H) * mu_bar(H), mu_bar the alpha = 1/(1-H) moment bound.
double upper_u2(Hurst h, const BoundsConfig& config = {});

/// gamma(H | H_ref) = ((1-2H)/(1-2H_ref))^{(1-2H_ref)/(2(1-H_ref))}.
double sudakov_drift_weight(Hurst h, double h_ref);

/// U2'(H) = 1/2 + inf_{H_ref < H} gamma(H | H_ref) U2(H_ref). Exactly 1/2 at
/// H = 1/2; +inf when the H_ref interval is empty.
double upper_u2_sudakov(Hurst h, const BoundsConfig& config = {});

// ---------------------------------------------------------------------------
// Combined

/// Best lower and upper bound at H with their ratio. At H = 1/2 both regimes
/// apply; the lower bound is the max and the upper bound the min over both.
BoundsReport combined_bounds(Hurst h, const BoundsConfig& config = {});

/// M(H, c) from M(H, 1) by self-similarity: c^{H/(H-1)} * value_unit_drift.
double drift_rescale(Hurst h, double c, double value_unit_drift);

/// lambda(u, H) = (int_0^inf (2 pi t^{2H})^{-1/2}
///                  exp(-(t + u)^2 / (2 t^{2H})) dt)^{-1}.
double lambda_u(double u, Hurst h);

}  // namespace fbmsup
