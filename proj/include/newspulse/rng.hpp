#pragma once

#include <cstdint>
#include <random>

namespace newspulse {

// splitmix64 finalizer; decorrelates structured inputs like (seed, i, j).
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Independent substream key: hash-chain the parts so stream (a,b) and (b,a)
// differ and no two distinct paths collide in practice.
inline std::uint64_t substream(std::uint64_t seed, std::uint64_t a,
                               std::uint64_t b = 0, std::uint64_t c = 0) {
  std::uint64_t h = mix64(seed);
  h = mix64(h ^ a);
  h = mix64(h ^ b);
  h = mix64(h ^ c);
  return h;
}

inline std::mt19937_64 make_rng(std::uint64_t key) {
  return std::mt19937_64(key);
}

}  // namespace newspulse
