#pragma once

#include <cstdint>
#include <random>

namespace isoproj {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

/// Seed of stream `stream` under master seed `seed`; schedule-independent.
inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(seed ^ splitmix64(stream + 0x632be59bd9b4e019ull));
}

inline std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t stream) { return std::mt19937_64(stream_seed(seed, stream)); }

}  // namespace isoproj
