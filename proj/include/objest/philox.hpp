#pragma once

#include <array>
#include <cstdint>

namespace objest {

// Philox4x32-10 (Salmon et al., "Parallel random numbers: as easy as
// 1, 2, 3"). A stateless keyed bijection on 128-bit counters: draw k of
// stream s under seed depends only on (seed, s, k).
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static constexpr Counter block(Counter ctr, Key key) noexcept {
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        key[0] += kWeyl0;
        key[1] += kWeyl1;
      }
      const std::uint64_t p0 = std::uint64_t{kMul0} * ctr[0];
      const std::uint64_t p1 = std::uint64_t{kMul1} * ctr[2];
      ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
             static_cast<std::uint32_t>(p1),
             static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
             static_cast<std::uint32_t>(p0)};
    }
    return ctr;
  }

  // Both 64-bit draws of block `pair`: indices 2*pair and 2*pair + 1.
  static constexpr std::array<std::uint64_t, 2> pair64(std::uint64_t seed, std::uint64_t stream,
                                                       std::uint64_t pair) noexcept {
    const Counter out = block({static_cast<std::uint32_t>(pair),
                               static_cast<std::uint32_t>(pair >> 32),
                               static_cast<std::uint32_t>(stream),
                               static_cast<std::uint32_t>(stream >> 32)},
                              {static_cast<std::uint32_t>(seed),
                               static_cast<std::uint32_t>(seed >> 32)});
    return {(std::uint64_t{out[0]} << 32) | out[1], (std::uint64_t{out[2]} << 32) | out[3]};
  }

  // 64 random bits for (seed, stream, index). Each 128-bit block feeds two
  // consecutive indices.
  static constexpr std::uint64_t bits64(std::uint64_t seed, std::uint64_t stream,
                                        std::uint64_t index) noexcept {
    return pair64(seed, stream, index >> 1)[index & 1];
  }

  // Uniform on the open interval (0, 1): midpoints of a 2^-53 grid.
  static constexpr double uniform_open(std::uint64_t seed, std::uint64_t stream,
                                       std::uint64_t index) noexcept {
    return (static_cast<double>(bits64(seed, stream, index) >> 11) + 0.5) * 0x1p-53;
  }

 private:
  static constexpr std::uint32_t kMul0 = 0xD2511F53u;
  static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
};

}  // namespace objest
