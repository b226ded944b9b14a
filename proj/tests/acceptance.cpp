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


// Acceptance checks 1-11. Prints one PASS/FAIL line per criterion; the exit
// status is nonzero if any selected criterion fails.
//
// Usage: fbmsup_acceptance [criterion numbers...]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "fbmsup/bounds.hpp"
#include "fbmsup/mc.hpp"
#include "fbmsup/numerics.hpp"
#include "oracles.hpp"

using namespace fbmsup;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[failed: " << what << "] ";
    }
  }
};

struct Criterion {
  int id;
  double budget_seconds;  // 0: no runtime limit
  std::function<void(Outcome&)> run;
};

constexpr std::uint64_t kSeed = 42;

void kappa_identities(Outcome& o) {
  const double k5 = kappa(Hurst(0.5));
  const double k75 = kappa(Hurst(0.75));
  o.require(std::abs(k5 - 1.0) <= 1e-12, "kappa(1/2) = 1");
  o.require(std::abs(k75 - 3.0) <= 1e-12, "kappa(3/4) = 3");
  double worst = 0.0;
  for (int i = 1; i <= 19; ++i) {
    const double H = 0.05 * i;
    const double q = oracle::kappa(H);
    worst = std::max(worst, std::abs(kappa(Hurst(H)) / q - 1.0));
  }
  o.require(worst <= 1e-8, "kappa vs quadrature");
  o.detail << "kappa(1/2)-1=" << k5 - 1.0 << " kappa(3/4)-3=" << k75 - 3.0
           << " max rel err vs quadrature=" << worst;
}

void omega_oracle(Outcome& o) {
  double worst_oracle = 0.0;
  double worst_direct = 0.0;
  double worst_dominance = -INFINITY;
  for (int i = 1; i <= 50; ++i) {
    const double H = i / 100.0;
    const OmegaBreakdown b = omega(Hurst(H));
    worst_oracle = std::max(worst_oracle, std::abs(b.omega - oracle::omega(H)));
    worst_direct =
        std::max(worst_direct, std::abs(b.omega - omega_direct(Hurst(H)).value));
    worst_dominance =
        std::max(worst_dominance, b.omega - std::min(b.omega1, b.omega2));
  }
  const double h0 = hurst_h0();
  o.require(worst_oracle <= 1e-6, "omega vs direct minimization");
  o.require(worst_direct <= 1e-6, "omega vs library direct minimization");
  o.require(worst_dominance <= 1e-12, "omega <= min(omega1, omega2)");
  o.require(std::abs(h0 - 0.1541) <= 5e-4, "H0");
  o.detail << "max |omega - oracle|=" << worst_oracle
           << " max |omega - direct|=" << worst_direct
           << " max(omega - min(w1,w2))=" << worst_dominance << " H0=" << h0;
}

void brownian_tightness(Outcome& o) {
  const BoundsReport r = combined_bounds(Hurst(0.5));
  o.require(std::abs(r.lower_combined - 0.5) <= 1e-9, "L(1/2) = 0.5");
  o.require(std::abs(r.upper_combined - 0.5) <= 1e-9, "U(1/2) = 0.5");
  o.detail.precision(17);
  o.detail << "L(1/2)=" << r.lower_combined << " U(1/2)=" << r.upper_combined;
}

void ratio_bounds(Outcome& o) {
  double worst = 0.0;
  double at = 0.0;
  for (int i = 1; i <= 100; ++i) {
    const double H = 0.005 * i;
    const double r = combined_bounds(Hurst(H)).ratio;
    if (r > worst) {
      worst = r;
      at = H;
    }
  }
  o.require(worst <= 18.063 + 1e-6, "max ratio on (0, 1/2]");
  double worst_closed = 0.0;
  bool bracketed = true;
  for (int i = 50; i <= 99; ++i) {
    const double H = i / 100.0;
    const BoundsReport r = combined_bounds(Hurst(H));
    const double ratio = *r.u1 / *r.l1;
    const double closed = std::pow(H, H / (H - 1.0)) / (1.0 - H);
    worst_closed = std::max(worst_closed, std::abs(ratio / closed - 1.0));
    bracketed &= ratio >= 2.0 / (1.0 - H) * (1.0 - 1e-12) &&
                 ratio <= std::numbers::e / (1.0 - H);
    if (H > 0.5) bracketed &= r.ratio == ratio;
  }
  o.require(worst_closed <= 1e-10, "superdiffusive closed form");
  o.require(bracketed, "ratio in [2/(1-H), e/(1-H)]");
  o.detail << "max ratio on (0,1/2]=" << worst << " at H=" << at
           << " max rel err of U1/L1 vs closed form=" << worst_closed;
}

void small_h_constants(Outcome& o) {
  const double H = 1e-3;
  const BoundsReport r = combined_bounds(Hurst(H));
  const double lo = r.lower_combined * std::sqrt(H);
  const double up = r.upper_combined * std::sqrt(H);
  const Hurst h99(0.99);
  const double l1_ratio = lower_l1(h99) / ((1.0 - 0.99) * kappa(h99));
  const double target = 1.0 / (2.0 * std::numbers::e);
  o.require(lo >= 0.19 && lo <= 0.21, "L(1e-3) sqrt(H)");
  o.require(up >= 1.6 && up <= 1.9, "U(1e-3) sqrt(H)");
  o.require(std::abs(l1_ratio / target - 1.0) <= 0.01, "L1/((1-H)kappa)");
  o.detail << "L*sqrt(H)=" << lo << " U*sqrt(H)=" << up
           << " L1/((1-H)kappa) at 0.99=" << l1_ratio << " (1/(2e)=" << target
           << ")";
}

void sudakov_region(Outcome& o) {
  double worst_gap = -INFINITY;
  for (int i = 42; i <= 50; ++i) {
    const Hurst h(i / 100.0);
    worst_gap = std::max(worst_gap,
                         mu_one_upper_sudakov(h) - mu_one_upper_borovkov(h));
  }
  const double u = upper_u2_sudakov(Hurst(0.5));
  o.require(worst_gap < 0.0, "Sudakov below Borovkov on {0.42..0.50}");
  o.require(u == 0.5, "U2'(1/2) = 0.5");
  o.detail << "max(sudakov - borovkov)=" << worst_gap << " U2'(1/2)=" << u;
}

void mc_exact_value(Outcome& o) {
  const mc::McResult r =
      mc::adaptive_horizon(Hurst(0.5), 1.0, 4.0, 4096, 10000, kSeed);
  const double z = (r.estimate - 0.5) / r.std_error;
  o.require(std::abs(r.estimate - 0.5) <= 3.0 * r.std_error, "|est - 0.5| <= 3se");
  o.require(r.std_error <= 0.01, "se <= 0.01");
  o.detail << "estimate=" << r.estimate << " se=" << r.std_error
           << " z=" << z << " horizon=" << r.horizon << " steps=" << r.steps
           << " converged=" << r.converged;
}

void mc_sandwich(Outcome& o) {
  for (double H : {0.3, 0.4, 0.6, 0.7}) {
    const mc::McResult r =
        mc::adaptive_horizon(Hurst(H), 1.0, 4.0, 8192, 2000, kSeed);
    const BoundsReport b = combined_bounds(Hurst(H));
    const double s = 3.0 * r.std_error;
    o.require(b.lower_combined - s <= r.estimate &&
                  r.estimate <= b.upper_combined + s,
              "sandwich at H=" + std::to_string(H));
    o.detail << "H=" << H << ": " << b.lower_combined << " <= " << r.estimate
             << " (se " << r.std_error << ", horizon " << r.horizon
             << ") <= " << b.upper_combined << "; ";
  }
}

void tail_sandwich(Outcome& o) {
  for (double H : {0.3, 0.7}) {
    const double lambda = lambda_u(1.0, Hurst(H));
    const mc::McResult p = mc::estimate_timechanged_tail(
        Hurst(H), 1.0, 64.0, 1 << 16, 10000, kSeed);
    const double v = lambda * p.estimate;
    const double s = 3.0 * lambda * p.std_error;
    o.require(v >= 2.0 - 2.0 * H - s, "lambda*P >= 2-2H at H=" + std::to_string(H));
    o.require(v <= 2.0 + s, "lambda*P <= 2 at H=" + std::to_string(H));
    if (H >= 0.5) o.require(v <= 1.0 + s, "lambda*P <= 1 at H=" + std::to_string(H));
    o.detail << "H=" << H << ": lambda=" << lambda << " P=" << p.estimate
             << " lambda*P=" << v << " (3se " << s << "); ";
  }
}

void sampler_law(Outcome& o) {
  for (double H : {0.3, 0.7}) {
    const mc::FgnSampler var_sampler({Hurst(H), 256, 1.0 / 256});
    const mc::FgnSampler unit_sampler({Hurst(H), 1024, 1.0});
    mc::RunningStats var;
    mc::RunningStats lag1;
    std::vector<double> a(256), b(256), c(1024), d(1024);
    for (std::uint64_t pair = 0; pair < 5000; ++pair) {
      var_sampler.sample_pair(pair, kSeed, a, b);
      for (const auto* x : {&a, &b}) {
        double sum = 0.0;
        for (double v : *x) sum += v;
        var.add(sum * sum);
      }
    }
    for (std::uint64_t pair = 0; pair < 1000; ++pair) {
      unit_sampler.sample_pair(pair, kSeed, c, d);
      for (const auto* x : {&c, &d}) {
        double s = 0.0;
        for (std::size_t k = 0; k + 1 < x->size(); ++k) s += (*x)[k] * (*x)[k + 1];
        lag1.add(s / static_cast<double>(x->size() - 1));
      }
    }
    const double rho = std::pow(2.0, 2.0 * H - 1.0) - 1.0;
    o.require(std::abs(var.mean() - 1.0) <= 5.0 * var.std_error(),
              "Var B_H(1) at H=" + std::to_string(H));
    o.require(std::abs(lag1.mean() - rho) <= 5.0 * lag1.std_error(),
              "lag-1 correlation at H=" + std::to_string(H));
    o.detail << "H=" << H << ": Var=" << var.mean() << " (se "
             << var.std_error() << ") rho1=" << lag1.mean() << " vs " << rho
             << " (se " << lag1.std_error() << "); ";
  }
  const mc::McResult m = mc::estimate_mu_moment(Hurst(0.5), 1.0, 1 << 16, 4000, kSeed);
  const double exact = std::sqrt(2.0 / std::numbers::pi);
  o.require(std::abs(m.estimate - exact) <= 3.0 * m.std_error + 0.02,
            "mu(1/2,1) vs sqrt(2/pi)");
  o.detail << "mu(1/2,1)=" << m.estimate << " vs sqrt(2/pi)=" << exact
           << " (se " << m.std_error << "; the sqrt(pi/2) constant would be "
           << kSqrtHalfPi << ")";
}

void self_similarity(Outcome& o) {
  const double H = 0.7;
  const double c = 2.0;
  const Hurst h(H);
  // The drift-c run uses the horizon scaled by c^{1/(H-1)} and the same step
  // count, so both grids have the same law up to the scale factor.
  const double horizon = 64.0;
  const double scaled = horizon * std::pow(c, 1.0 / (H - 1.0));
  const mc::McResult unit =
      mc::estimate_sup_drift(h, 1.0, horizon, 1 << 15, 4000, kSeed);
  const mc::McResult drifted =
      mc::estimate_sup_drift(h, c, scaled, 1 << 15, 4000, kSeed + 1);
  const double predicted = drift_rescale(h, c, unit.estimate);
  const double se = std::hypot(drifted.std_error, drift_rescale(h, c, unit.std_error));
  o.require(std::abs(drifted.estimate - predicted) <= 3.0 * se,
            "drift-2 estimate vs rescaled unit-drift estimate");
  o.detail << "c=2 estimate=" << drifted.estimate
           << " rescaled c=1 estimate=" << predicted << " combined se=" << se;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {1, 1.0, kappa_identities},  {2, 5.0, omega_oracle},
      {3, 0.0, brownian_tightness}, {4, 10.0, ratio_bounds},
      {5, 1.0, small_h_constants}, {6, 5.0, sudakov_region},
      {7, 60.0, mc_exact_value},   {8, 300.0, mc_sandwich},
      {9, 120.0, tail_sandwich},   {10, 120.0, sampler_law},
      {11, 120.0, self_similarity},
  };
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));

  int failures = 0;
  for (const auto& c : all) {
    if (!selected.empty() &&
        std::find(selected.begin(), selected.end(), c.id) == selected.end()) {
      continue;
    }
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "[exception: " << e.what() << "]";
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (c.budget_seconds > 0.0 && seconds >= c.budget_seconds) {
      o.pass = false;
      o.detail << " [failed: runtime budget]";
    }
    std::printf("criterion %2d: %s | %.2f s", c.id, o.pass ? "PASS" : "FAIL",
                seconds);
    if (c.budget_seconds > 0.0) std::printf(" (budget %.0f s)", c.budget_seconds);
    std::printf(" | %s\n", o.detail.str().c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
