#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

#include "critpt/rng.hpp"
#include "critpt/types.hpp"

namespace critpt {

// One Monte-Carlo answer. std_error is sqrt(sample variance / n_samples)
// accumulated with streaming (Welford) moments; n_rejected counts samples
// discarded as degenerate.
struct MCEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t n_samples = 0;
  std::int64_t n_rejected = 0;
  std::uint64_t seed = 0;

  MCEstimate scaled(double c) const {
    MCEstimate e = *this;
    e.mean *= c;
    e.std_error *= std::abs(c);
    return e;
  }
};

struct MCOptions {
  int workers = 1;
  std::int64_t block_size = 1 << 16;
  bool median_of_means = false;  // robust mode, off by default
  int mom_groups = 16;
};

namespace detail {

struct VecAccum {
  std::int64_t n = 0;
  std::int64_t rejected = 0;
  std::vector<double> mean;
  std::vector<double> m2;

  void init(int k) {
    mean.assign(k, 0.0);
    m2.assign(k, 0.0);
    n = 0;
    rejected = 0;
  }
  void add(const double* x) {
    ++n;
    const double inv = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < mean.size(); ++i) {
      double d = x[i] - mean[i];
      mean[i] += d * inv;
      m2[i] += d * (x[i] - mean[i]);
    }
  }
  // Chan's merge; called in a fixed block order so results do not depend on
  // the thread schedule.
  void merge(const VecAccum& o) {
    if (o.n == 0) {
      rejected += o.rejected;
      return;
    }
    if (n == 0) {
      std::int64_t r = rejected + o.rejected;
      *this = o;
      rejected = r;
      return;
    }
    const std::int64_t total = n + o.n;
    const double na = static_cast<double>(n), nb = static_cast<double>(o.n);
    for (std::size_t i = 0; i < mean.size(); ++i) {
      double d = o.mean[i] - mean[i];
      mean[i] += d * nb / static_cast<double>(total);
      m2[i] += o.m2[i] + d * d * na * nb / static_cast<double>(total);
    }
    n = total;
    rejected += o.rejected;
  }
};

// Deterministic block-parallel map: block b processes items
// [b*block_size, ...) with its own RNG substream; results are produced per
// block and folded by the caller in ascending block order.
template <class Result, class BlockFn>
std::vector<Result> run_blocks(std::int64_t n_items, std::int64_t block_size, int workers,
                               const BlockFn& fn) {
  if (block_size <= 0) block_size = 1 << 16;
  const std::int64_t n_blocks = (n_items + block_size - 1) / block_size;
  std::vector<Result> results(static_cast<std::size_t>(n_blocks));
  auto work = [&](std::int64_t b) {
    const std::int64_t first = b * block_size;
    const std::int64_t count = std::min(block_size, n_items - first);
    results[static_cast<std::size_t>(b)] = fn(b, first, count);
  };
  if (workers <= 1 || n_blocks <= 1) {
    for (std::int64_t b = 0; b < n_blocks; ++b) work(b);
  } else {
    std::atomic<std::int64_t> next{0};
    auto loop = [&] {
      for (;;) {
        std::int64_t b = next.fetch_add(1);
        if (b >= n_blocks) break;
        work(b);
      }
    };
    int nt = std::min<int>(workers, static_cast<int>(n_blocks));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nt));
    for (int t = 0; t < nt; ++t) pool.emplace_back(loop);
    for (auto& th : pool) th.join();
  }
  return results;
}

}  // namespace detail

// Runs `kernel` over n_samples draws. Kernel contract:
//   int width() const;                      number of statistics per sample
//   bool operator()(RngStream&, double*);   false  => rejected sample
// Returns one MCEstimate per statistic. Identical (n_samples, seed) give
// bit-identical results for any worker count.
template <class Kernel>
std::vector<MCEstimate> mc_run(const Kernel& kernel, std::int64_t n_samples, std::uint64_t seed,
                               const MCOptions& opt = {}) {
  const int k = kernel.width();
  auto block_fn = [&](std::int64_t b, std::int64_t, std::int64_t count) {
    detail::VecAccum acc;
    acc.init(k);
    RngStream rng(seed, static_cast<std::uint64_t>(b));
    std::vector<double> x(static_cast<std::size_t>(k));
    for (std::int64_t i = 0; i < count; ++i) {
      if (kernel(rng, x.data()))
        acc.add(x.data());
      else
        ++acc.rejected;
    }
    return acc;
  };
  auto blocks =
      detail::run_blocks<detail::VecAccum>(n_samples, opt.block_size, opt.workers, block_fn);

  std::vector<MCEstimate> out(static_cast<std::size_t>(k));
  if (opt.median_of_means && static_cast<std::int64_t>(blocks.size()) >= opt.mom_groups) {
    // fold blocks into groups by block index, take the median of group means
    int g = opt.mom_groups;
    std::vector<detail::VecAccum> groups(static_cast<std::size_t>(g));
    for (auto& gr : groups) gr.init(k);
    for (std::size_t b = 0; b < blocks.size(); ++b)
      groups[b % static_cast<std::size_t>(g)].merge(blocks[b]);
    std::int64_t n = 0, rej = 0;
    for (auto& gr : groups) n += gr.n, rej += gr.rejected;
    for (int i = 0; i < k; ++i) {
      std::vector<double> gm;
      for (auto& gr : groups)
        if (gr.n > 0) gm.push_back(gr.mean[static_cast<std::size_t>(i)]);
      std::sort(gm.begin(), gm.end());
      const std::size_t ng = gm.size();
      double med = ng % 2 ? gm[ng / 2] : 0.5 * (gm[ng / 2 - 1] + gm[ng / 2]);
      double gmean = 0.0;
      for (double v : gm) gmean += v;
      gmean /= static_cast<double>(ng);
      double gvar = 0.0;
      for (double v : gm) gvar += (v - gmean) * (v - gmean);
      gvar /= ng > 1 ? static_cast<double>(ng - 1) : 1.0;
      auto& e = out[static_cast<std::size_t>(i)];
      e.mean = med;
      e.std_error = std::sqrt(gvar / static_cast<double>(ng));
      e.n_samples = n;
      e.n_rejected = rej;
      e.seed = seed;
    }
    return out;
  }

  detail::VecAccum total;
  total.init(k);
  for (const auto& b : blocks) total.merge(b);
  for (int i = 0; i < k; ++i) {
    auto& e = out[static_cast<std::size_t>(i)];
    e.n_samples = total.n;
    e.n_rejected = total.rejected;
    e.seed = seed;
    if (total.n > 0) {
      e.mean = total.mean[static_cast<std::size_t>(i)];
      double var = total.n > 1 ? total.m2[static_cast<std::size_t>(i)] /
                                     static_cast<double>(total.n - 1)
                               : 0.0;
      e.std_error = std::sqrt(var / static_cast<double>(total.n));
    }
  }
  return out;
}

}  // namespace critpt
