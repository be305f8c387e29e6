#pragma once

#include <cmath>
#include <cstdint>

namespace hopfcole {

/// splitmix64; used to expand seed material into stream states.
struct SplitMix64 {
  uint64_t state;
  explicit SplitMix64(uint64_t seed) : state(seed) {}
  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
};

/// xoshiro256++ stream. All stochastic output of the project flows through
/// this generator so that runs are reproducible bit-for-bit across platforms
/// and thread schedules.
class RngStream {
 public:
  RngStream() : RngStream(0) {}
  explicit RngStream(uint64_t seed) {
    SplitMix64 sm(seed);
    for (auto& w : s_) w = sm.next();
    if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
  }

  uint64_t next() {
    uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform double in [0, 1).
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Exponential with unit rate; uniform01() < 1 keeps the log argument positive.
  double exponential() { return -std::log1p(-uniform01()); }

  int uniform_below(int n) {
    return static_cast<int>(uniform01() * static_cast<double>(n));
  }

 private:
  static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  uint64_t s_[4];
};

/// Stream purposes; part of the documented seed derivation.
enum class StreamPurpose : uint64_t {
  kReplicate = 1,
  kTauLeap = 2,
  kTest = 3,
};

/// Derives an independent stream from (master seed, purpose, ladder index,
/// replicate index). The derivation is a fixed splitmix64 chain, so the same
/// tuple always yields the same stream regardless of execution order.
inline RngStream derive_stream(uint64_t master, StreamPurpose purpose,
                               uint64_t ladder_index, uint64_t replicate) {
  SplitMix64 sm(master);
  uint64_t h = sm.next();
  h ^= SplitMix64(static_cast<uint64_t>(purpose) * 0x9e3779b97f4a7c15ull).next();
  h ^= SplitMix64(ladder_index + 0x7f4a7c15ull).next();
  h ^= SplitMix64(replicate + 0x1ce4e5b9ull).next();
  return RngStream(h);
}

/// Poisson sampler: inversion for small means, Hormann's PTRS transformed
/// rejection for large means. Only used by the tau-leap accelerator.
int64_t poisson(RngStream& rng, double lambda);

}  // namespace hopfcole
