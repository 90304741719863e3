#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace scf {

/// Seeded generator with platform-stable helpers. All experiment randomness
/// goes through this so a config seed reproduces runs bit for bit.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n) { return engine_() % n; }

  /// Uniform double in [0, 1).
  double real() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// k distinct values from [0, n), sorted ascending.
  std::vector<std::uint32_t> sample(std::uint32_t n, std::uint32_t k) {
    std::vector<std::uint32_t> pool(n);
    for (std::uint32_t i = 0; i < n; ++i) pool[i] = i;
    for (std::uint32_t i = 0; i < k && i + 1 < n; ++i) {
      std::uint32_t j = i + static_cast<std::uint32_t>(below(n - i));
      std::swap(pool[i], pool[j]);
    }
    pool.resize(k < n ? k : n);
    std::sort(pool.begin(), pool.end());
    return pool;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace scf
