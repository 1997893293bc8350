#pragma once

#include <cmath>
#include <cstdint>

namespace brw::rng {

// 64-bit finalizer used throughout for seed derivation and one-shot draws
// (splitmix64 output function). Bijective on uint64_t.
inline constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Keyed combination: order-sensitive, so combine(a,b) != combine(b,a).
inline constexpr std::uint64_t combine(std::uint64_t key, std::uint64_t v) noexcept {
  return mix64(key ^ mix64(v));
}

// Sequential generator over a counter (splitmix64). State advances by a
// fixed odd increment; output is mix64 of the counter, so the stream for a
// given seed is independent of how many values other streams consumed.
class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr std::uint64_t next_u64() noexcept {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform on the open interval (0,1): 53-bit mantissa offset by half an ulp,
  // so inverse-CDF transforms never see 0 or 1.
  double next_open01() noexcept {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Exponential with the given rate via inverse CDF, -ln(1-u)/rate.
  double next_exponential(double rate) noexcept {
    return -std::log1p(-next_open01()) / rate;
  }

  // Uniform integer in [0, n) by 128-bit multiply-shift.
  std::uint64_t next_below(std::uint64_t n) noexcept {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

 private:
  std::uint64_t state_;
};

// One-shot uniform in (0,1) from a key pair; used for value-deterministic
// lazy media (draws keyed by point index, not visit order).
inline double unit_open(std::uint64_t key, std::uint64_t v) noexcept {
  return (static_cast<double>(combine(key, v) >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace brw::rng
