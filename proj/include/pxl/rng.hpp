#pragma once

#include <cstdint>
#include <random>

namespace pxl {

// SplitMix64 finalizer; used to fan a master seed out into independent streams.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed for stream `index` under `master`. Stream r is reproducible on its own.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
  return splitmix64(master + index);
}

/// Reproducible uniform source. Only the raw 64-bit output of mt19937_64 is
/// used, so draws are identical across standard library implementations.
class UniformSource {
 public:
  explicit UniformSource(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on the open interval (0, 1).
  double next() noexcept {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1p-53;
  }

  /// Poisson draw by sequential inversion. Large means are split into
  /// chunks of at most 30 to keep exp(-mean) away from underflow.
  std::uint64_t poisson(double mean) noexcept;

 private:
  std::mt19937_64 engine_;
};

}  // namespace pxl
