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

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "fbmsup/hurst.hpp"

// Monte-Carlo estimation of suprema of fractional Brownian motion.
//
// Paths are generated in pairs from one circulant-embedding FFT (real and
// imaginary parts are independent draws). The random stream of pair k is a
// pure function of (seed, k), and per-path results are merged in a fixed
// block order, so estimates are bit-identical for any number of workers.
namespace fbmsup::mc {

enum class SamplerMethod { kCirculant, kCholesky };

// Exact Cholesky sampling is O(n^2) per path and O(n^2) memory.
inline constexpr std::size_t kMaxCholeskySteps = 1024;

// Relative tolerance below which negative embedding eigenvalues are treated
// as rounding noise and clipped to zero.
inline constexpr double kEigenvalueTolerance = 1e-10;

struct SamplerSpec {
  Hurst h;
  std::size_t steps = 0;  // power of two, >= 2
  double dt = 1.0;        // grid spacing
  SamplerMethod method = SamplerMethod::kCirculant;
};

// Throws DomainError if the spec violates its invariants.
void validate(const SamplerSpec& spec);

/// Autocovariance of fractional Gaussian noise with spacing dt:
/// (|k+1|^{2H} + |k-1|^{2H} - 2|k|^{2H}) dt^{2H} / 2.
double fgn_autocovariance(Hurst h, std::size_t lag, double dt);

/// SplitMix64-style mix of (seed, index) into an independent stream seed.
std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t index);

// Stationary Gaussian increment generator for one SamplerSpec. Construction
// does the O(n log n) (circulant) or O(n^3) (Cholesky) setup; sampling is
// const and safe to call concurrently.
class FgnSampler {
 public:
  explicit FgnSampler(const SamplerSpec& spec);
  ~FgnSampler();
  FgnSampler(FgnSampler&&) noexcept;
  FgnSampler& operator=(FgnSampler&&) noexcept;
  FgnSampler(const FgnSampler&) = delete;
  FgnSampler& operator=(const FgnSampler&) = delete;

  const SamplerSpec& spec() const;

  // Smallest embedding eigenvalue divided by the largest, before clipping.
  // Zero for the Cholesky method.
  double min_eigenvalue_ratio() const;

  // Paths 2k and 2k+1. Both spans must have spec().steps elements.
  void sample_pair(std::uint64_t pair_index, std::uint64_t seed,
                   std::span<double> first, std::span<double> second) const;

  std::vector<double> sample(std::uint64_t path_index,
                             std::uint64_t seed) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// `steps` fGn increments for path `path_index`; identical to element
/// path_index % 2 of sample_pair(path_index / 2, seed, ...).
std::vector<double> sample_fgn(const SamplerSpec& spec,
                               std::uint64_t path_index, std::uint64_t seed);

// Welford mean/variance accumulator with a deterministic pairwise merge.
class RunningStats {
 public:
  void add(double x);
  void merge(const RunningStats& other);

  std::uint64_t count() const { return count_; }
  double mean() const { return mean_; }
  // Unbiased sample variance; zero for fewer than two samples.
  double variance() const;
  double std_error() const;

 private:
  std::uint64_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

struct McOptions {
  // Worker threads; 0 means std::thread::hardware_concurrency().
  unsigned workers = 0;
  SamplerMethod method = SamplerMethod::kCirculant;
};

struct McResult {
  double estimate = 0.0;
  double std_error = 0.0;
  std::uint64_t paths = 0;
  std::size_t steps = 0;
  double horizon = 0.0;
  std::uint64_t seed = 0;
  // Horizon search bookkeeping (adaptive_horizon only).
  bool converged = true;
  int doublings = 0;
  std::string note;
};

/// Mean of max(0, max_k B_H(t_k) - c t_k) on t_k = k * horizon / steps.
/// Biased low against the continuous-time supremum over [0, inf).
McResult estimate_sup_drift(Hurst h, double c, double horizon,
                            std::size_t steps, std::uint64_t paths,
                            std::uint64_t seed, const McOptions& options = {});

/// Mean of (max(0, max_k B_H(k / steps)))^alpha over [0, 1].
McResult estimate_mu_moment(Hurst h, double alpha, std::size_t steps,
                            std::uint64_t paths, std::uint64_t seed,
                            const McOptions& options = {});

/// P(max_k B(t_k^{2H}) - t_k > u) for standard Brownian motion B, simulated
/// from independent increments N(0, t_k^{2H} - t_{k-1}^{2H}).
McResult estimate_timechanged_tail(Hurst h, double u, double horizon,
                                   std::size_t steps, std::uint64_t paths,
                                   std::uint64_t seed,
                                   const McOptions& options = {});

inline constexpr int kMaxHorizonDoublings = 8;

/// estimate_sup_drift with the horizon doubled (grid density fixed) until
/// the mean gain of the supremum over [0, T] against [0, T/2], measured on
/// the same paths, is below 0.1 standard errors. Non-convergence after
/// kMaxHorizonDoublings doublings is reported in the result, not thrown.
McResult adaptive_horizon(Hurst h, double c, double base_horizon,
                          std::size_t steps_per_unit, std::uint64_t paths,
                          std::uint64_t seed, const McOptions& options = {});

}  // namespace fbmsup::mc
