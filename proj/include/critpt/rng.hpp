#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "critpt/types.hpp"

namespace critpt {

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}
}  // namespace detail

// Deterministic substream generator. A given (seed, stream_id) pair always
// produces the same draw sequence, so workers that own disjoint stream_ids
// give results independent of the worker count. Variates are produced by
// explicit bit mapping rather than std::*_distribution (whose algorithms are
// implementation-defined).
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0)
      : seed_(seed), stream_id_(stream_id) {
    std::uint64_t s = seed ^ (stream_id * 0xD2B74407B1CE6E93ULL + 0x8BB84B93962EACC9ULL);
    std::uint64_t init = detail::splitmix64(s);
    init ^= detail::splitmix64(s) << 1;
    gen_.seed(init);
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  std::uint64_t next_u64() { return gen_(); }

  // uniform in [0, 1)
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  // uniform in (0, 1]
  double uniform_pos() { return (static_cast<double>(gen_() >> 11) + 1.0) * 0x1.0p-53; }

  // unit-rate exponential
  double exponential() { return -std::log(uniform_pos()); }

  // standard complex Gaussian with density pi^{-1} exp(-|z|^2),
  // i.e. E|z|^2 = 1 (variance 1/2 per real component)
  Complex complex_gaussian() {
    double r = std::sqrt(exponential());
    double theta = 2.0 * kPi * uniform();
    return Complex(r * std::cos(theta), r * std::sin(theta));
  }

  // real standard normal (mean 0, variance 1)
  double normal() {
    double r = std::sqrt(2.0 * exponential());
    return r * std::cos(2.0 * kPi * uniform());
  }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 gen_;
};

}  // namespace critpt
