#pragma once

// S(t) = arg zeta(1/2 + it) / pi and S_1(t) = integral_0^t S(u) du.
//
// The argument is defined by continuous variation along 2 -> 2 + it -> 1/2 + it.
// arg_zeta_critical() walks that path directly. Walking it for every quadrature
// node would be far too slow, so ZeroSet uses it only at sparse anchors: the
// anchor value fixes N(t) = theta(t)/pi + 1 + S(t), the zeros of Z between two
// anchors are located by sign changes and checked against that count, and then
//
//   S(t)   = N(t) - theta(t)/pi - 1
//   S_1(t) = sum_{gamma <= t} (t - gamma) - t - Theta(t)/pi
//
// hold exactly, with Theta the antiderivative of theta.

#include <cstddef>
#include <shared_mutex>
#include <vector>

#include "zetalab/quadrature.hpp"
#include "zetalab/zeta_kernel.hpp"

namespace zetalab {

class Context;

namespace sone {

struct ArgOptions {
  /// The first horizontal step is 1.5 / min_steps.
  int min_steps = 16;
  long max_steps = 100'000;
  double max_turn = zeta::kPi / 4.0;
};

struct ArgTrace {
  double t = 0.0;  // height actually used (t + offset)
  double arg_value = 0.0;
  long path_steps = 0;
  double max_step_turn = 0.0;
  double offset = 0.0;
};

/// Throws ZeroProximity when |zeta| < 1e-12 at the end of the path.
ArgTrace arg_zeta_critical(double t, const ArgOptions& options = {});

/// As above, retrying at t + 1e-7 and t - 1e-7 on ZeroProximity.
ArgTrace arg_zeta_critical_nudged(double t, const ArgOptions& options = {});

struct Anchor {
  double t;
  long count;  // N(t)
  double S;
};

struct ZeroSetOptions {
  double min_block = 20.0;
  double block_gaps = 60.0;  // anchor spacing in mean zero gaps
  int max_refinements = 5;
  double zero_tol = 1e-12;
  ArgOptions arg;
};

/// Ordinates of the zeros of zeta(1/2 + it) on [0, covered()], verified block
/// by block against branch-tracked anchors. Reads are safe from many threads;
/// extension takes an exclusive lock.
class ZeroSet {
 public:
  explicit ZeroSet(ZeroSetOptions options = {});

  void extend(double t);
  double covered() const;

  /// #{gamma <= t}.
  long count(double t);
  std::vector<double> zeros_in(double a, double b);
  std::vector<Anchor> anchors() const;
  std::size_t size() const;

  double S(double t);
  double S1(double t);

 private:
  void ensure(double t);
  void extend_block();
  long count_locked(double t) const;

  ZeroSetOptions options_;
  mutable std::shared_mutex mutex_;
  std::vector<double> zeros_;
  std::vector<long double> sums_;  // sums_[k] = gamma_0 + ... + gamma_{k-1}
  std::vector<Anchor> anchors_;
};

/// S on (a, b] with panel breaks at the zeros.
class SIntegrand final : public quad::Integrand {
 public:
  explicit SIntegrand(ZeroSet& zeros) : zeros_(zeros) {}
  double operator()(double t) const override;
  double panel_width(double t) const override;
  std::vector<double> breakpoints(double a, double b) const override;
  void prepare(double a, double b) override;

 private:
  ZeroSet& zeros_;
};

/// |S_1(t)|^{exponent}, breaks at the zeros where S jumps.
class S1PowIntegrand final : public quad::Integrand {
 public:
  S1PowIntegrand(ZeroSet& zeros, int exponent, double grid_resolution);
  double operator()(double t) const override;
  double panel_width(double t) const override;
  std::vector<double> breakpoints(double a, double b) const override;
  void prepare(double a, double b) override;
  bool nonnegative() const override { return true; }

 private:
  ZeroSet& zeros_;
  int exponent_;
  double grid_resolution_;
};

/// integral_0^t S(u) du by quadrature over the inter-zero panels.
double S1_quadrature(ZeroSet& zeros, double t, double tol, const quad::Options& options = {});

struct SelbergConstant {
  int l = 1;
  double estimate = 0.0;
  double T_used = 0.0;
  double uncertainty = 0.0;
};

/// integral_a^b |S_1(t)|^{2l} dt through the context's S1Pow cache.
double s1_moment(Context& ctx, int l, double a, double b, double tol);

/// estimate = s1_moment(l, 0, T) / T, uncertainty = estimate / ln T.
SelbergConstant selberg_constant(Context& ctx, int l, double T, double tol);

/// (1/H) integral_T^{T+H} |S_1|^{2l}; requires T^a <= H <= T with the
/// configured window exponent a.
double window_moment(Context& ctx, int l, double T, double H, double tol);

}  // namespace sone
}  // namespace zetalab
