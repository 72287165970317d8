#pragma once

// Stateless counter-based uniforms: every variate is a pure function of
// (seed, stream, index), so draw i is identical no matter how the index
// range is batched or which worker evaluates it.

#include <cstdint>

namespace emulab {

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ull;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebull;
  z ^= z >> 31;
  return z;
}

constexpr std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t stream,
                                     std::uint64_t index) {
  std::uint64_t z = mix64(seed ^ 0x9e3779b97f4a7c15ull);
  z += 0x9e3779b97f4a7c15ull * (index + 1) + 0xd1b54a32d192ed03ull * (stream + 1);
  return mix64(mix64(z));
}

// Uniform on the open interval (0, 1); never returns an endpoint.
inline double uniform01(std::uint64_t seed, std::uint64_t stream,
                        std::uint64_t index) {
  const std::uint64_t h = counter_hash(seed, stream, index);
  return (static_cast<double>(h >> 11) + 0.5) * 0x1p-53;
}

}  // namespace emulab
