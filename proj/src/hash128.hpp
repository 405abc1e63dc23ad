#ifndef SIMCON_HASH128_HPP_
#define SIMCON_HASH128_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>

namespace simcon {

// 128-bit digest, little-endian limbs (h1 is the low half).
struct Digest128 {
  std::uint64_t h1 = 0;
  std::uint64_t h2 = 0;

  friend bool operator==(Digest128 const& a, Digest128 const& b) {
    return a.h1 == b.h1 && a.h2 == b.h2;
  }

  std::array<std::uint8_t, 16> bytes() const {
    std::array<std::uint8_t, 16> out{};
    for (int i = 0; i < 8; ++i) {
      out[i] = static_cast<std::uint8_t>(h1 >> (8 * i));
      out[8 + i] = static_cast<std::uint8_t>(h2 >> (8 * i));
    }
    return out;
  }
};

// MurmurHash3 x64 128 (Austin Appleby's public-domain construction).  The
// seed below is fixed so fingerprints are stable across runs and builds.
inline constexpr std::uint32_t kFingerprintSeed = 0x514d4353;  // "SCMQ"

Digest128 murmur3_x64_128(void const* data, std::size_t len, std::uint32_t seed);

inline Digest128 murmur3_x64_128(std::string_view s, std::uint32_t seed) {
  return murmur3_x64_128(s.data(), s.size(), seed);
}

}  // namespace simcon

#endif  // SIMCON_HASH128_HPP_
