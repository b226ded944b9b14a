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

#include <fftw3.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <mutex>
#include <string>

#include <boost/random/mersenne_twister.hpp>
#include <boost/random/normal_distribution.hpp>

#include "fbmsup/error.hpp"
#include "fbmsup/mc.hpp"

namespace fbmsup::mc {
namespace {

// The FFTW planner is not thread-safe; execution of an existing plan on
// fresh arrays is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwDeleter {
  void operator()(fftw_complex* p) const { fftw_free(p); }
};
using FftwBuffer = std::unique_ptr<fftw_complex[], FftwDeleter>;

FftwBuffer make_buffer(std::size_t n) {
  auto* p = fftw_alloc_complex(n);
  if (p == nullptr) throw SamplerError("FFTW allocation failed");
  return FftwBuffer(p);
}

}  // namespace

void validate(const SamplerSpec& spec) {
  if (spec.steps < 2 || !std::has_single_bit(spec.steps)) {
    throw DomainError("sampler steps must be a power of two >= 2");
  }
  if (!(spec.dt > 0.0) || !std::isfinite(spec.dt)) {
    throw DomainError("sampler dt must be positive");
  }
  if (spec.method == SamplerMethod::kCholesky &&
      spec.steps > kMaxCholeskySteps) {
    throw DomainError("Cholesky sampling is limited to 1024 steps");
  }
}

double fgn_autocovariance(Hurst h, std::size_t lag, double dt) {
  const double two_h = 2.0 * h.value();
  const double k = static_cast<double>(lag);
  const double r = 0.5 * (std::pow(k + 1.0, two_h) +
                          std::pow(std::abs(k - 1.0), two_h) -
                          2.0 * std::pow(k, two_h));
  return r * std::pow(dt, two_h);
}

std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t index) {
  const auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(mix(seed) ^ mix(index + 0x632be59bd9b4e019ULL));
}

struct FgnSampler::Impl {
  SamplerSpec spec;
  double min_ratio = 0.0;

  // Circulant: sqrt(lambda_k / M) for the 2n-point embedding.
  std::vector<double> scale;
  fftw_plan plan = nullptr;

  // Cholesky: row-major lower factor.
  std::vector<double> factor;

  explicit Impl(const SamplerSpec& s) : spec(s) {
    validate(spec);
    if (spec.method == SamplerMethod::kCirculant) {
      init_circulant();
    } else {
      init_cholesky();
    }
  }

  ~Impl() {
    if (plan != nullptr) {
      std::lock_guard lock(planner_mutex());
      fftw_destroy_plan(plan);
    }
  }

  std::size_t embedding_size() const { return 2 * spec.steps; }

  void init_circulant() {
    const std::size_t n = spec.steps;
    const std::size_t m = embedding_size();
    auto buf = make_buffer(m);
    for (std::size_t k = 0; k <= n; ++k) {
      buf[k][0] = fgn_autocovariance(spec.h, k, spec.dt);
      buf[k][1] = 0.0;
    }
    for (std::size_t k = 1; k < n; ++k) {
      buf[m - k][0] = buf[k][0];
      buf[m - k][1] = 0.0;
    }
    {
      std::lock_guard lock(planner_mutex());
      plan = fftw_plan_dft_1d(static_cast<int>(m), buf.get(), buf.get(),
                              FFTW_FORWARD, FFTW_ESTIMATE);
    }
    if (plan == nullptr) throw SamplerError("FFTW plan creation failed");
    fftw_execute(plan);

    double max_eig = 0.0;
    double min_eig = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      max_eig = std::max(max_eig, buf[k][0]);
      min_eig = std::min(min_eig, buf[k][0]);
    }
    if (!(max_eig > 0.0)) throw SamplerError("degenerate fGn covariance");
    min_ratio = min_eig / max_eig;
    if (min_ratio < -kEigenvalueTolerance) {
      throw SamplerError("circulant embedding has a negative eigenvalue (" +
                         std::to_string(min_ratio) + " of the largest)");
    }
    scale.resize(m);
    const double inv_m = 1.0 / static_cast<double>(m);
    for (std::size_t k = 0; k < m; ++k) {
      scale[k] = std::sqrt(std::max(buf[k][0], 0.0) * inv_m);
    }
  }

  void init_cholesky() {
    const std::size_t n = spec.steps;
    std::vector<double> r(n);
    for (std::size_t k = 0; k < n; ++k) {
      r[k] = fgn_autocovariance(spec.h, k, spec.dt);
    }
    factor.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j <= i; ++j) {
        double sum = r[i - j];
        for (std::size_t k = 0; k < j; ++k) {
          sum -= factor[i * n + k] * factor[j * n + k];
        }
        if (i == j) {
          if (!(sum > 0.0)) {
            throw SamplerError("fGn covariance is not positive definite");
          }
          factor[i * n + i] = std::sqrt(sum);
        } else {
          factor[i * n + j] = sum / factor[j * n + j];
        }
      }
    }
  }

  void sample_pair(std::uint64_t pair_index, std::uint64_t seed,
                   std::span<double> first, std::span<double> second) const {
    const std::size_t n = spec.steps;
    if (first.size() != n || second.size() != n) {
      throw DomainError("sample_pair output spans must have `steps` elements");
    }
    boost::random::mt19937_64 rng(derive_stream_seed(seed, pair_index));
    boost::random::normal_distribution<double> normal;

    if (spec.method == SamplerMethod::kCholesky) {
      std::vector<double> z(2 * n);
      for (auto& v : z) v = normal(rng);
      for (std::size_t i = 0; i < n; ++i) {
        double a = 0.0;
        double b = 0.0;
        for (std::size_t k = 0; k <= i; ++k) {
          a += factor[i * n + k] * z[k];
          b += factor[i * n + k] * z[n + k];
        }
        first[i] = a;
        second[i] = b;
      }
      return;
    }

    const std::size_t m = embedding_size();
    thread_local std::size_t cached_size = 0;
    thread_local FftwBuffer buf;
    if (cached_size != m) {
      buf = make_buffer(m);
      cached_size = m;
    }
    for (std::size_t k = 0; k < m; ++k) {
      buf[k][0] = scale[k] * normal(rng);
      buf[k][1] = scale[k] * normal(rng);
    }
    fftw_execute_dft(plan, buf.get(), buf.get());
    for (std::size_t k = 0; k < n; ++k) {
      first[k] = buf[k][0];
      second[k] = buf[k][1];
    }
  }
};

FgnSampler::FgnSampler(const SamplerSpec& spec)
    : impl_(std::make_unique<Impl>(spec)) {}
FgnSampler::~FgnSampler() = default;
FgnSampler::FgnSampler(FgnSampler&&) noexcept = default;
FgnSampler& FgnSampler::operator=(FgnSampler&&) noexcept = default;

const SamplerSpec& FgnSampler::spec() const { return impl_->spec; }

double FgnSampler::min_eigenvalue_ratio() const { return impl_->min_ratio; }

void FgnSampler::sample_pair(std::uint64_t pair_index, std::uint64_t seed,
                             std::span<double> first,
                             std::span<double> second) const {
  impl_->sample_pair(pair_index, seed, first, second);
}

std::vector<double> FgnSampler::sample(std::uint64_t path_index,
                                       std::uint64_t seed) const {
  const std::size_t n = impl_->spec.steps;
  std::vector<double> a(n);
  std::vector<double> b(n);
  impl_->sample_pair(path_index / 2, seed, a, b);
  return path_index % 2 == 0 ? a : b;
}

std::vector<double> sample_fgn(const SamplerSpec& spec,
                               std::uint64_t path_index, std::uint64_t seed) {
  return FgnSampler(spec).sample(path_index, seed);
}

void RunningStats::add(double x) {
  ++count_;
  const double delta = x - mean_;
  mean_ += delta / static_cast<double>(count_);
  m2_ += delta * (x - mean_);
}

void RunningStats::merge(const RunningStats& other) {
  if (other.count_ == 0) return;
  if (count_ == 0) {
    *this = other;
    return;
  }
  const double n_a = static_cast<double>(count_);
  const double n_b = static_cast<double>(other.count_);
  const double n = n_a + n_b;
  const double delta = other.mean_ - mean_;
  mean_ += delta * n_b / n;
  m2_ += other.m2_ + delta * delta * n_a * n_b / n;
  count_ += other.count_;
}

double RunningStats::variance() const {
  return count_ < 2 ? 0.0 : m2_ / static_cast<double>(count_ - 1);
}

double RunningStats::std_error() const {
  return count_ == 0 ? 0.0
                     : std::sqrt(variance() / static_cast<double>(count_));
}

}  // namespace fbmsup::mc
