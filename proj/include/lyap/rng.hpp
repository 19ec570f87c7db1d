#ifndef LYAP_RNG_HPP
#define LYAP_RNG_HPP

#include <cstdint>
#include <random>

namespace lyap {

inline std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

using Engine = std::mt19937_64;

/// Independent stream `stream` under base seed `seed`: the engine is keyed
/// by splitmix64(seed ^ stream).
inline Engine make_stream(std::uint64_t seed, std::uint64_t stream = 0) {
  return Engine(splitmix64(seed ^ stream));
}

/// Uniform double in [0, 1) from the top 53 bits. Unlike
/// std::uniform_real_distribution this is identical across standard libraries.
inline double uniform01(Engine& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

} // namespace lyap

#endif
