#pragma once

#include <cstdint>
#include <random>

namespace tpe {

// Deterministic random stream. The engine is mt19937_64 (its output sequence
// is fixed by the standard); every derived quantity is produced by our own
// arithmetic rather than std distributions, so the draw sequence is
// reproducible bit for bit across platforms and compiler versions.
class RandomStream {
public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_raw() { return engine_(); }

  // Uniform on [0, 1).
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform on (0, 1), safe as a quantile argument.
  double uniform_open01() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  double uniform(double low, double high) {
    return low + (high - low) * uniform01();
  }

  // Uniform integer in [0, n).
  int uniform_int(int n) {
    const int k = static_cast<int>(uniform01() * n);
    return k < n ? k : n - 1;
  }

  // Standard normal draw via the inverse CDF.
  double normal();

private:
  std::mt19937_64 engine_;
};

// Deterministically derives an independent seed from a base seed and a salt
// (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t salt);

} // namespace tpe
