#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace llp {

/// Seedable, splittable pseudo-random source.
///
/// Every helper (`uniform_index`, `coin`, `uniform01`) consumes exactly one
/// 64-bit draw from the underlying engine, so callers can reason about how
/// many draws an operation uses. `split` derives an independent stream from
/// the seed and a stream id without touching the parent's state.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  /// Uniform integer in [0, n). One draw.
  std::size_t uniform_index(std::size_t n);
  /// Fair coin. One draw.
  bool coin();
  /// Uniform real in [0, 1). One draw.
  double uniform01();
  /// Standard normal variate.
  double normal();

  [[nodiscard]] Rng split(std::uint64_t stream) const;

  [[nodiscard]] std::uint64_t seed() const { return seed_; }
  [[nodiscard]] std::uint64_t draws() const { return draws_; }

 private:
  std::uint64_t seed_;
  std::uint64_t draws_ = 0;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// splitmix64 finalizer; used for seed derivation.
std::uint64_t mix_seed(std::uint64_t x);

}  // namespace llp
