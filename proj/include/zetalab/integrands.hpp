#pragma once

#include "zetalab/quadrature.hpp"
#include "zetalab/zeta_kernel.hpp"

namespace zetalab {

/// |zeta(sigma + it)|^2. Panels are 2 g(t) / (grid_resolution w(sigma)) wide,
/// g the mean zero gap and w = 1, 1/2, 1/4 for sigma = 1/2, 1/2 < sigma < 1,
/// sigma >= 1: the integrand flattens out as sigma moves right.
class ZetaLineIntegrand final : public quad::Integrand {
 public:
  ZetaLineIntegrand(double sigma, double grid_resolution, zeta::EvalSettings settings = {});

  double operator()(double t) const override { return line_.abs_sq(t); }
  double panel_width(double t) const override;
  void prepare(double a, double b) override;
  bool nonnegative() const override { return true; }

  double sigma() const noexcept { return line_.sigma(); }

 private:
  zeta::LineEvaluator line_;
  double grid_resolution_;
};

double panel_weight(double sigma) noexcept;

}  // namespace zetalab
