#pragma once

#include <cstdint>
#include <limits>

namespace arena {

/// SplitMix64 finalizer; used to decorrelate seed material.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Stream identifiers mixed into the master seed.
enum class StreamKind : std::uint64_t {
  population = 1,
  run = 2,
};

/// xoshiro256++ generator. Satisfies UniformRandomBitGenerator.
///
/// Independent substreams are keyed by (seed, kind, index) so that a run's
/// random numbers do not depend on which worker executes it.
class Xoshiro256pp {
 public:
  using result_type = std::uint64_t;

  explicit Xoshiro256pp(std::uint64_t seed) noexcept;

  static Xoshiro256pp substream(std::uint64_t seed, StreamKind kind, std::uint64_t index) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept;

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() noexcept {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, bound) without modulo bias.
  std::uint64_t below(std::uint64_t bound) noexcept;

 private:
  std::uint64_t s_[4];
};

}  // namespace arena
