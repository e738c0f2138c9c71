#pragma once

#include <cstdint>
#include <random>

namespace gfk {

// SplitMix64 finalizer; used to derive independent per-trajectory seeds.
std::uint64_t splitmix64(std::uint64_t value);

// Seed of trajectory `index` under `master_seed`:
//   splitmix64(splitmix64(master_seed) + index)
// A pure function of its arguments, so any trajectory can be regenerated alone.
std::uint64_t trajectory_seed(std::uint64_t master_seed, std::uint64_t index);

// Random stream owned by a single trajectory. Binomial signs are drawn one bit
// at a time from 64-bit engine outputs.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  static RandomStream for_trajectory(std::uint64_t master_seed, std::uint64_t index) {
    return RandomStream(trajectory_seed(master_seed, index));
  }

  double sign() {
    if (bits_left_ == 0) {
      bits_ = engine_();
      bits_left_ = 64;
    }
    const double s = (bits_ & 1U) ? 1.0 : -1.0;
    bits_ >>= 1U;
    --bits_left_;
    return s;
  }

  double normal() { return normal_(engine_); }

  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uint64_t bits_ = 0;
  int bits_left_ = 0;
};

}  // namespace gfk
