#include "pxl/utility.hpp"

#include <cmath>

#include "pxl/error.hpp"
#include "text.hpp"

namespace pxl {

UtilityConfig UtilityConfig::make(double beta, double loading, double lambda, double horizon,
                                  double initial_wealth) {
  const auto positive = [](double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw DomainError(std::string(what) + " must be positive, got " + text::format_number(v));
    }
  };
  positive(beta, "risk aversion beta");
  positive(lambda, "Poisson intensity lambda");
  positive(horizon, "horizon t");
  if (!(loading > -1.0) || !std::isfinite(loading)) {
    throw DomainError("safety loading must exceed -1, got " + text::format_number(loading));
  }
  if (!std::isfinite(initial_wealth)) throw DomainError("initial wealth must be finite");
  return {beta, loading, lambda, horizon, initial_wealth};
}

}  // namespace pxl
