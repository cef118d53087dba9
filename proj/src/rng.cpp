#include "pxl/rng.hpp"

#include <cmath>

namespace pxl {

std::uint64_t UniformSource::poisson(double mean) noexcept {
  std::uint64_t total = 0;
  while (mean > 0.0) {
    const double chunk = mean > 30.0 ? 30.0 : mean;
    mean -= chunk;
    // Inversion: walk the cdf until it exceeds u.
    const double u = next();
    double p = std::exp(-chunk);
    double cdf = p;
    std::uint64_t k = 0;
    while (u > cdf && k < 1000) {
      ++k;
      p *= chunk / static_cast<double>(k);
      cdf += p;
    }
    total += k;
  }
  return total;
}

}  // namespace pxl
