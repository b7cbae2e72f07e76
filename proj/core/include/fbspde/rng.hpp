#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

namespace fbspde {

// All randomness in the suite flows from one root seed. Substreams are
// derived as splitmix64(root ^ hash(tag) ^ index), so any component can be
// regenerated in isolation and path-parallel schedules cannot change what a
// given path draws.

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t hash_tag(std::string_view tag) {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (char c : tag) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Seed for the substream (root, tag, index).
inline std::uint64_t substream_seed(std::uint64_t root, std::string_view tag,
                                    std::uint64_t index = 0) {
  std::uint64_t s = root ^ hash_tag(tag) ^ (0x9e3779b97f4a7c15ULL * (index + 1));
  splitmix64(s);
  return splitmix64(s);
}

/// xoshiro256** — per-path generator, seeded via splitmix64.
class Xoshiro256 {
public:
  explicit Xoshiro256(std::uint64_t seed) {
    std::uint64_t s = seed;
    for (auto& word : state_) word = splitmix64(s);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform on (0,1): 53-bit mantissa, never exactly 0.
  double next_unit() {
    const double u = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    return u > 0.0 ? u : 0x1.0p-53;
  }

private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  std::uint64_t state_[4]{};
};

/// Standard normal draws (Box–Muller, pair-cached).
class NormalSampler {
public:
  explicit NormalSampler(std::uint64_t seed) : gen_(seed) {}

  double next();

private:
  Xoshiro256 gen_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

inline double NormalSampler::next() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = gen_.next_unit();
  const double u2 = gen_.next_unit();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 6.283185307179586476925286766559 * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

}  // namespace fbspde
