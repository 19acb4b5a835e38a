#pragma once

// Riemann zeta on vertical lines Re(s) >= 0.4, plus the critical-line helpers
// theta(t) and Z(t).
//
// Off the critical line (and for small t on it) everything goes through an
// Euler-Maclaurin continuation of the Hurwitz sum with an explicit remainder
// bound. On the critical line above kRiemannSiegelThreshold, Z(t) comes from
// the Riemann-Siegel formula with four correction terms.

#include <complex>
#include <vector>

namespace zetalab {

using Complex = std::complex<double>;

namespace zeta {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Above this height Z(t) uses Riemann-Siegel; below it, Euler-Maclaurin.
inline constexpr double kRiemannSiegelThreshold = 1000.0;

struct EvalSettings {
  /// Lower bound on the Euler-Maclaurin cut N. The cut is raised
  /// automatically until the remainder bound meets target_abs_error.
  long truncation_N = 20;
  int em_correction_terms = 12;
  double target_abs_error = 1e-10;

  void validate() const;
};

struct ZetaValue {
  Complex value;
  double err_bound = 0.0;
  long terms = 0;  // direct-sum length actually used
};

ZetaValue zeta(Complex s, const EvalSettings& settings = {});

/// sum_{k>=0} (k + a)^{-s}, a > 0, by the same Euler-Maclaurin engine.
ZetaValue hurwitz_zeta(Complex s, double a, const EvalSettings& settings = {});

/// Principal-branch log Gamma for Re(z) > 0, continuous in the right half-plane.
Complex log_gamma(Complex z);

/// Riemann-Siegel theta. Asymptotic series for |t| >= 10, log Gamma below.
double theta(double t);
double theta_asymptotic(double t, int terms);
double theta_log_gamma(double t);

/// integral_0^t theta(u) du, in extended precision (t >= 0).
long double theta_integral(double t);

/// Hardy Z(t) = exp(i theta(t)) zeta(1/2 + it), real.
double hardy_z(double t, const EvalSettings& settings = {});
double hardy_z_euler_maclaurin(double t, const EvalSettings& settings = {});
double hardy_z_riemann_siegel(double t);

/// zeta(2 sigma) for sigma >= 1/2 + epsilon. Throws Errc::Domain otherwise.
double zeta_2sigma(double sigma, double epsilon);

/// Mean spacing 2 pi / ln(t / 2 pi) of zeta zeros at height t, clamped to
/// 2 pi near the origin where the formula degenerates.
double mean_zero_gap(double t);

/// Fast |zeta(sigma + it)|^2 for one fixed sigma. Keeps a table of n^{-sigma}
/// sized by reserve(); evaluation is const and safe from many threads once the
/// table covers the heights being evaluated.
class LineEvaluator {
 public:
  explicit LineEvaluator(double sigma, EvalSettings settings = {});

  double sigma() const noexcept { return sigma_; }

  /// Size the coefficient table for heights up to t_max.
  void reserve(double t_max);

  Complex value(double t) const;
  double abs_sq(double t) const;

 private:
  long cut_for(double t) const;

  double sigma_;
  EvalSettings settings_;
  std::vector<double> n_pow_;  // n_pow_[n] = n^{-sigma}
};

}  // namespace zeta
}  // namespace zetalab
