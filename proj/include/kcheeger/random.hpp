#ifndef KCHEEGER_RANDOM_HPP
#define KCHEEGER_RANDOM_HPP

#include <cstdint>

namespace kcheeger {

/// Counter-based generator: the i-th output of stream `key` is
/// splitmix64_mix(key + (i + 1) * 0x9E3779B97F4A7C15).
///
/// Streams are keyed by (seed, stream id) so independent trials can run in any
/// order or on any thread and still reproduce the same draws bit-for-bit.
class CounterRng {
public:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept
      : key_(mix(seed ^ mix(stream + kGolden))) {}

  std::uint64_t next_u64() noexcept { return mix(key_ + (++counter_) * kGolden); }

  /// Uniform double in [0, 1) from the top 53 bits.
  double uniform() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  std::uint64_t counter() const noexcept { return counter_; }

private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

} // namespace kcheeger

#endif // KCHEEGER_RANDOM_HPP
