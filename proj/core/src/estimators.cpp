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
#include <atomic>
#include <bit>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

#include <boost/random/mersenne_twister.hpp>
#include <boost/random/normal_distribution.hpp>

#include "fbmsup/error.hpp"
#include "fbmsup/mc.hpp"

namespace fbmsup::mc {
namespace {

// Pairs of paths per merge block. Fixed so that the merge tree does not
// depend on the worker count.
constexpr std::uint64_t kPairsPerBlock = 16;

constexpr char kGridNote[] =
    "grid maximum: biased low against the continuous-time supremum "
    "(discretization and horizon truncation)";

// Per-path summary: one value per checkpoint, e.g. the running supremum at
// several prefix lengths of the same path.
using PathSummary = std::vector<double>;

struct BlockStats {
  std::vector<RunningStats> values;
  // gains[j] accumulates values[j] - values[j - 1]; gains[0] is unused.
  std::vector<RunningStats> gains;
};

unsigned resolve_workers(const McOptions& options, std::uint64_t blocks) {
  unsigned w = options.workers;
  if (w == 0) w = std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(
      std::min<std::uint64_t>(w, std::max<std::uint64_t>(blocks, 1)));
}

void record(BlockStats& stats, const PathSummary& v) {
  if (stats.values.empty()) {
    stats.values.resize(v.size());
    stats.gains.resize(v.size());
  }
  for (std::size_t j = 0; j < v.size(); ++j) {
    stats.values[j].add(v[j]);
    if (j > 0) stats.gains[j].add(v[j] - v[j - 1]);
  }
}

void merge(BlockStats& total, const BlockStats& block) {
  if (total.values.empty()) {
    total = block;
    return;
  }
  for (std::size_t j = 0; j < block.values.size(); ++j) {
    total.values[j].merge(block.values[j]);
    total.gains[j].merge(block.gains[j]);
  }
}

// Runs `block_fn(block)` for every block on a pool of workers, then merges
// the block results in index order.
BlockStats run_blocks(std::uint64_t blocks, const McOptions& options,
                      const std::function<BlockStats(std::uint64_t)>& block_fn) {
  std::vector<BlockStats> results(blocks);
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  const auto worker = [&] {
    for (;;) {
      const std::uint64_t b = next.fetch_add(1);
      if (b >= blocks) return;
      try {
        results[b] = block_fn(b);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(blocks);
        return;
      }
    }
  };

  const unsigned workers = resolve_workers(options, blocks);
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned i = 0; i < workers; ++i) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  BlockStats total;
  for (const auto& r : results) merge(total, r);
  return total;
}

// Applies `summarize` to the increments of every path of an fGn sampler.
BlockStats simulate_fgn(
    const SamplerSpec& spec, std::uint64_t paths, std::uint64_t seed,
    const McOptions& options,
    const std::function<PathSummary(std::span<const double>)>& summarize) {
  if (paths == 0) throw DomainError("path count must be positive");
  const FgnSampler sampler(spec);
  const std::uint64_t pairs = (paths + 1) / 2;
  const std::uint64_t blocks = (pairs + kPairsPerBlock - 1) / kPairsPerBlock;

  return run_blocks(blocks, options, [&](std::uint64_t block) {
    BlockStats stats;
    std::vector<double> first(spec.steps);
    std::vector<double> second(spec.steps);
    const std::uint64_t begin = block * kPairsPerBlock;
    const std::uint64_t end = std::min(pairs, begin + kPairsPerBlock);
    for (std::uint64_t pair = begin; pair < end; ++pair) {
      sampler.sample_pair(pair, seed, first, second);
      record(stats, summarize(first));
      if (2 * pair + 1 < paths) record(stats, summarize(second));
    }
    return stats;
  });
}

// Grid supremum of B_H(t_k) - c t_k, including t_0 = 0, over the prefixes
// [0, t_m] for every m in `marks` (ascending step counts).
PathSummary drifted_supremum(std::span<const double> increments, double c,
                             double dt, std::span<const std::size_t> marks) {
  PathSummary out;
  out.reserve(marks.size());
  double level = 0.0;
  double best = 0.0;
  std::size_t next_mark = 0;
  for (std::size_t k = 0; k < increments.size() && next_mark < marks.size();
       ++k) {
    level += increments[k];
    best = std::max(best, level - c * dt * static_cast<double>(k + 1));
    while (next_mark < marks.size() && marks[next_mark] == k + 1) {
      out.push_back(best);
      ++next_mark;
    }
  }
  return out;
}

McResult to_result(const RunningStats& stats, std::size_t steps,
                   double horizon, std::uint64_t seed) {
  McResult out;
  out.estimate = stats.mean();
  out.std_error = stats.std_error();
  out.paths = stats.count();
  out.steps = steps;
  out.horizon = horizon;
  out.seed = seed;
  out.note = kGridNote;
  return out;
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw DomainError(std::string(what) + " must be positive");
  }
}

// Simulates on [0, horizon] and summarizes the drifted supremum at the
// given prefix step counts.
BlockStats sup_drift_stats(Hurst h, double c, double horizon,
                           std::size_t steps,
                           const std::vector<std::size_t>& marks,
                           std::uint64_t paths, std::uint64_t seed,
                           const McOptions& options) {
  require_positive(c, "drift");
  require_positive(horizon, "horizon");
  const double dt = horizon / static_cast<double>(steps);
  const SamplerSpec spec{h, steps, dt, options.method};
  return simulate_fgn(spec, paths, seed, options,
                      [&](std::span<const double> inc) {
                        return drifted_supremum(inc, c, dt, marks);
                      });
}

}  // namespace

McResult estimate_sup_drift(Hurst h, double c, double horizon,
                            std::size_t steps, std::uint64_t paths,
                            std::uint64_t seed, const McOptions& options) {
  const auto stats =
      sup_drift_stats(h, c, horizon, steps, {steps}, paths, seed, options);
  return to_result(stats.values.at(0), steps, horizon, seed);
}

McResult estimate_mu_moment(Hurst h, double alpha, std::size_t steps,
                            std::uint64_t paths, std::uint64_t seed,
                            const McOptions& options) {
  if (!(alpha >= 1.0) || !std::isfinite(alpha)) {
    throw DomainError("moment order alpha must be >= 1");
  }
  const double dt = 1.0 / static_cast<double>(steps);
  const SamplerSpec spec{h, steps, dt, options.method};
  const std::size_t marks[] = {steps};
  const auto stats = simulate_fgn(
      spec, paths, seed, options, [&](std::span<const double> inc) {
        const double sup = drifted_supremum(inc, 0.0, dt, marks).at(0);
        return PathSummary{std::pow(sup, alpha)};
      });
  return to_result(stats.values.at(0), steps, 1.0, seed);
}

McResult estimate_timechanged_tail(Hurst h, double u, double horizon,
                                   std::size_t steps, std::uint64_t paths,
                                   std::uint64_t seed,
                                   const McOptions& options) {
  require_positive(u, "level u");
  require_positive(horizon, "horizon");
  if (steps < 1) throw DomainError("steps must be positive");
  if (paths == 0) throw DomainError("path count must be positive");

  const double two_h = 2.0 * h.value();
  const double dt = horizon / static_cast<double>(steps);
  std::vector<double> sd(steps);
  double previous = 0.0;
  for (std::size_t k = 0; k < steps; ++k) {
    const double clock = std::pow(dt * static_cast<double>(k + 1), two_h);
    const double var = clock - previous;
    if (!(var > 0.0)) {
      throw Error("time change t^{2H} is not increasing on the grid");
    }
    sd[k] = std::sqrt(var);
    previous = clock;
  }

  const std::uint64_t blocks =
      (paths + 2 * kPairsPerBlock - 1) / (2 * kPairsPerBlock);
  const auto stats = run_blocks(blocks, options, [&](std::uint64_t block) {
    BlockStats out;
    const std::uint64_t begin = block * 2 * kPairsPerBlock;
    const std::uint64_t end = std::min(paths, begin + 2 * kPairsPerBlock);
    for (std::uint64_t path = begin; path < end; ++path) {
      boost::random::mt19937_64 rng(derive_stream_seed(seed, path));
      boost::random::normal_distribution<double> normal;
      double level = 0.0;
      double hit = 0.0;
      for (std::size_t k = 0; k < steps; ++k) {
        level += sd[k] * normal(rng);
        if (level - dt * static_cast<double>(k + 1) > u) {
          hit = 1.0;
          break;
        }
      }
      record(out, {hit});
    }
    return out;
  });
  return to_result(stats.values.at(0), steps, horizon, seed);
}

McResult adaptive_horizon(Hurst h, double c, double base_horizon,
                          std::size_t steps_per_unit, std::uint64_t paths,
                          std::uint64_t seed, const McOptions& options) {
  require_positive(base_horizon, "base horizon");
  require_positive(static_cast<double>(steps_per_unit), "steps per unit");
  const double raw =
      std::ceil(static_cast<double>(steps_per_unit) * base_horizon);
  const std::size_t base_steps =
      std::bit_ceil(std::max<std::size_t>(2, static_cast<std::size_t>(raw)));

  // Each round simulates kDoublingsPerRound doublings ahead and reads the
  // supremum over every dyadic prefix [0, base * 2^j] off the same paths. A
  // prefix of an fGn path has the law of a path simulated on the prefix
  // alone, so this is the doubling search with common random numbers.
  constexpr int kDoublingsPerRound = 2;
  for (int last = kDoublingsPerRound;; last += kDoublingsPerRound) {
    last = std::min(last, kMaxHorizonDoublings);
    std::vector<std::size_t> marks;
    marks.push_back(base_steps / 2);
    for (int j = 0; j <= last; ++j) marks.push_back(base_steps << j);
    const std::size_t steps = marks.back();
    const double horizon = std::ldexp(base_horizon, last);
    const auto stats =
        sup_drift_stats(h, c, horizon, steps, marks, paths, seed, options);

    for (int j = 0; j <= last; ++j) {
      const auto& at = stats.values[j + 1];
      const double gain = stats.gains[j + 1].mean();
      const bool converged = gain < 0.1 * at.std_error();
      if (converged || j == kMaxHorizonDoublings) {
        McResult out = to_result(at, marks[j + 1],
                                 std::ldexp(base_horizon, j), seed);
        out.doublings = j;
        out.converged = converged;
        if (!converged) out.note += "; horizon search did not converge";
        return out;
      }
    }
  }
}

}  // namespace fbmsup::mc
