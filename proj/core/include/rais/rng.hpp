#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace rais {

using Rng = std::mt19937_64;

// SplitMix64 finalizer, used to spread structured seed tuples before they
// enter the main engine.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Stream salts, one per consumer of randomness within a run. Keeping the
// consumers on disjoint streams is what makes threaded and serial runs
// bit-identical.
enum class StreamSalt : std::uint64_t {
  kRollout = 1,
  kNetworkInit = 2,
  kPretrainData = 3,
  kPretrainShuffle = 4,
  kReplaySampling = 5,
  kPolicyUpdate = 6,
  kGroundTruth = 7,
};

constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt,
                                 std::uint64_t index = 0) {
  return splitmix64(splitmix64(splitmix64(seed) ^ salt) ^ index);
}

inline Rng derive_stream(std::uint64_t seed, StreamSalt salt, std::uint64_t index = 0) {
  return Rng(mix_seed(seed, static_cast<std::uint64_t>(salt), index));
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform_unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Box-Muller without call-to-call caching, so a draw consumes a fixed number
// of engine outputs regardless of history.
double standard_normal(Rng& rng);

// Inverse-CDF draw from an explicit probability vector.
int sample_categorical(std::span<const double> probs, Rng& rng);

}  // namespace rais
