#include "zetalab/integrands.hpp"

#include <cmath>

#include "zetalab/error.hpp"

namespace zetalab {

double panel_weight(double sigma) noexcept {
  if (sigma >= 1.0) return 0.25;
  if (sigma > 0.5) return 0.5;
  return 1.0;
}

ZetaLineIntegrand::ZetaLineIntegrand(double sigma, double grid_resolution, zeta::EvalSettings settings)
    : line_(sigma, settings), grid_resolution_(grid_resolution) {
  if (!(grid_resolution > 0.0)) fail(Errc::InvalidArgument, "grid resolution must be positive");
}

double ZetaLineIntegrand::panel_width(double t) const {
  return 2.0 * zeta::mean_zero_gap(t) / (grid_resolution_ * panel_weight(line_.sigma()));
}

void ZetaLineIntegrand::prepare(double a, double b) {
  line_.reserve(std::max(std::fabs(a), std::fabs(b)));
}

}  // namespace zetalab
