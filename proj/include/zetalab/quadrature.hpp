#pragma once

// Adaptive composite Gauss-Legendre quadrature.
//
// [a, b] is cut into top-level panels whose widths come from the integrand
// (tied to the mean zero gap for the zeta integrands) plus any breakpoints it
// reports. Each panel is refined independently: the 15-point rule on the panel
// is compared with the sum over its two halves, and halves are split further
// until the difference meets the panel's share of the tolerance. Panel results
// are reduced in panel order, so the value does not depend on the worker count.

#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

namespace zetalab::quad {

struct QuadratureResult {
  double value = 0.0;
  double err_estimate = 0.0;
  long long evaluations = 0;
};

class Integrand {
 public:
  virtual ~Integrand() = default;

  virtual double operator()(double t) const = 0;

  /// Width of a top-level panel that starts at t.
  virtual double panel_width(double /*t*/) const { return std::numeric_limits<double>::infinity(); }

  /// Points strictly inside (a, b) where the integrand is not smooth.
  virtual std::vector<double> breakpoints(double /*a*/, double /*b*/) const { return {}; }

  /// Called once, single-threaded, before [a, b] is evaluated.
  virtual void prepare(double /*a*/, double /*b*/) {}

  virtual bool nonnegative() const { return false; }
};

struct Options {
  long long max_evaluations = 100'000'000;
  int workers = 1;
  int max_depth = 30;
};

struct Node {
  double x;
  double w;
};

/// n-point Gauss-Legendre nodes and weights on [-1, 1].
std::vector<Node> gauss_legendre(int n);

/// Throws Errc::BudgetExceeded when the evaluation cap is hit.
QuadratureResult integrate(Integrand& f, double a, double b, double tol, const Options& options = {});

/// Top-level panels used for [a, b]; exposed for inspection and tests.
std::vector<std::pair<double, double>> partition(const Integrand& f, double a, double b);

}  // namespace zetalab::quad
