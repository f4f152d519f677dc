#pragma once

#include <cstdint>
#include <cstring>
#include <span>
#include <string_view>
#include <vector>

namespace qgap {

/// splitmix64 mixing step; bijective on 64-bit words.
inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Counter-based RNG: stateless streams keyed by up to three ids.
/// Every draw is a pure function of (key, counter), so replicas and sweeps
/// produce identical streams regardless of scheduling.
class CounterRng {
public:
  CounterRng(std::uint64_t seed, std::uint64_t stream = 0, std::uint64_t substream = 0)
      : key_(splitmix64(seed) ^ splitmix64(stream * 0x9e3779b97f4a7c15ULL + 1) ^
             splitmix64(substream * 0xda942042e4dd58b5ULL + 2)) {}

  std::uint64_t next_u64() { return splitmix64(key_ + 0x632be59bd9b4e019ULL * ++counter_); }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n). Modulo bias is < 2^-32 for the n used here.
  std::uint32_t below(std::uint32_t n) { return static_cast<std::uint32_t>(next_u64() % n); }

private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// FNV-1a over raw bytes; used for config hashes and solver seeding.
inline std::uint64_t fnv1a(const void* data, std::size_t n, std::uint64_t h = 0xcbf29ce484222325ULL) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::uint64_t fnv1a(std::string_view s, std::uint64_t h = 0xcbf29ce484222325ULL) {
  return fnv1a(s.data(), s.size(), h);
}

inline std::uint64_t fnv1a(std::span<const double> v, std::uint64_t h = 0xcbf29ce484222325ULL) {
  return fnv1a(v.data(), v.size_bytes(), h);
}

// Blocked reductions. Partial sums are accumulated per fixed-width block and
// combined in block order, so the result does not depend on the number of
// threads that produced the blocks.
inline constexpr std::size_t kReductionBlock = 4096;

double blocked_dot(std::span<const double> a, std::span<const double> b);
double blocked_norm2(std::span<const double> a);

} // namespace qgap
