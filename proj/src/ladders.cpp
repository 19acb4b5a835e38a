#include "zetalab/ladders.hpp"

#include <cmath>
#include <sstream>

#include "zetalab/context.hpp"
#include "zetalab/error.hpp"

namespace zetalab::ladders {

namespace {

// g(Y) = J(Y) - J(T) - target, increasing in Y.
class StepEquation {
 public:
  StepEquation(Context& ctx, double T, double target, double quad_tol)
      : cache_(ctx.j_cache()), T_(T), target_(target), quad_tol_(quad_tol) {
    base_ = cache_.prefix(T, quad_tol_);
  }

  double operator()(double Y) const { return cache_.prefix(Y, quad_tol_) - base_ - target_; }
  double segment(double Y) const { return cache_.prefix(Y, quad_tol_) - base_; }

 private:
  quad::PrefixCache& cache_;
  double T_;
  double target_;
  double quad_tol_;
  double base_ = 0.0;
};

}  // namespace

Constants Constants::from(double c) {
  if (!(c > 0.0 && c < 1.0)) fail(Errc::InvalidArgument, "c must lie in (0, 1)");
  return {c, 1.0 - c};
}

double predictor(double T, const Constants& k) { return k.one_minus_c * T / std::log(T); }

StepResult reverse_step(Context& ctx, double T, double tol) {
  if (!std::isfinite(T) || T < 100.0) fail(Errc::Domain, "reverse_step needs T >= 100");
  if (!(tol > 0.0)) fail(Errc::InvalidArgument, "tolerance must be positive");
  const Constants k = Constants::from(ctx.config().euler_c);
  const double target = k.one_minus_c * T;
  // Integrate J well inside the residual budget.
  const StepEquation g(ctx, T, target, 1e-2 * tol * target);
  const double h0 = predictor(T, k);

  StepResult out;
  double lo = T;
  double g_lo = -target;
  double hi = 0.0;
  double g_hi = 0.0;
  bool bracketed = false;
  for (double m : {0.5, 0.75, 1.0, 1.25, 1.5, 2.0, 3.0, 4.0, 8.0, 16.0, 32.0, 64.0, 128.0, 256.0}) {
    const double y = T + m * h0;
    const double gy = g(y);
    if (gy >= 0.0) {
      hi = y;
      g_hi = gy;
      bracketed = true;
      break;
    }
    lo = y;
    g_lo = gy;
  }
  if (!bracketed) {
    std::ostringstream os;
    os << "no sign change of the step equation on [" << T << ", " << T + 256.0 * h0 << "]";
    fail(Errc::BracketFailure, os.str());
  }
  out.bracket_lo = lo;
  out.bracket_hi = hi;

  // Bisection.
  double a = lo, b = hi;
  while (b - a > 1e-10 * b) {
    const double m = 0.5 * (a + b);
    if (m <= a || m >= b) break;
    (g(m) < 0.0 ? a : b) = m;
    ++out.bisection_steps;
  }
  out.Y = 0.5 * (a + b);

  // Illinois on the original bracket, as an independent check.
  double x0 = lo, x1 = hi, f0 = g_lo, f1 = g_hi;
  int side = 0;
  double xs = x1;
  for (int it = 0; it < 200 && std::fabs(x1 - x0) > 1e-10 * x1; ++it) {
    xs = (x0 * f1 - x1 * f0) / (f1 - f0);
    const double fs = g(xs);
    ++out.secant_steps;
    if (fs == 0.0) {
      x0 = x1 = xs;
      break;
    }
    if ((fs < 0.0) == (f0 < 0.0)) {
      x0 = xs;
      f0 = fs;
      if (side == -1) f1 *= 0.5;
      side = -1;
    } else {
      x1 = xs;
      f1 = fs;
      if (side == 1) f0 *= 0.5;
      side = 1;
    }
    if (std::fabs(fs) <= 1e-3 * tol * target) break;
  }
  out.secant_Y = xs;

  out.segment_integral = g.segment(out.Y);
  out.residual = std::fabs(out.segment_integral - target) / target;
  if (out.residual > tol) {
    std::ostringstream os;
    os << "reverse step residual " << out.residual << " above tolerance " << tol;
    fail(Errc::AccuracyNotReached, os.str());
  }
  return out;
}

LadderSequence reverse_iterates(Context& ctx, double T, int k, double tol) {
  if (k < 1 || k > ctx.config().iterate_cap) {
    fail(Errc::LimitExceeded, "iterate count must lie in [1, " + std::to_string(ctx.config().iterate_cap) + "]");
  }
  LadderSequence seq;
  seq.base_T = T;
  seq.constants = Constants::from(ctx.config().euler_c);
  double cur = T;
  for (int r = 1; r <= k; ++r) {
    const StepResult step = reverse_step(ctx, cur, tol);
    seq.iterates.push_back(step.Y);
    seq.segment_integrals.push_back(step.segment_integral);
    seq.residuals.push_back(step.residual);
    seq.secant_iterates.push_back(step.secant_Y);
    cur = step.Y;
  }
  return seq;
}

PartitionReport check_partition(const LadderSequence& seq) {
  const std::size_t k = seq.iterates.size();
  if (k < 2) fail(Errc::InvalidArgument, "partition check needs at least two iterates");
  std::vector<double> pts{seq.base_T};
  pts.insert(pts.end(), seq.iterates.begin(), seq.iterates.end());
  PartitionReport rep;
  for (std::size_t r = 1; r < k; ++r) {
    rep.equidistance.push_back((pts[r] - pts[r - 1]) / (pts[r + 1] - pts[r]));
    rep.segment_ratios.push_back(seq.segment_integrals[r - 1] / seq.segment_integrals[r]);
  }
  double sum = 0.0;
  for (std::size_t r = 1; r <= k; ++r) {
    rep.step_law.push_back((pts[r] - pts[r - 1]) / predictor(pts[r], seq.constants));
    sum += pts[r];
  }
  const double T = seq.base_T;
  const double kk = static_cast<double>(k);
  rep.sum_excess = (sum - kk * T) / (kk * kk * T / std::log(T));
  return rep;
}

Coupling coupling_check(Context& ctx, CouplingKind kind, double sigma, int l, double T, double tol) {
  if (!(T >= 500.0)) fail(Errc::Domain, "coupling check needs T >= 500");
  const Constants k = Constants::from(ctx.config().euler_c);
  Coupling out;
  if (kind == CouplingKind::Zeta) {
    out.constant = ctx.zeta_2sigma(sigma);
    out.lhs = ctx.zeta_cache(sigma).prefix(T, ctx.config().tol);
  } else {
    out.constant = ctx.selberg(l).estimate;
    out.lhs = sone::s1_moment(ctx, l, 0.0, T, ctx.config().tol);
  }
  out.A = out.constant * T / k.one_minus_c;
  const StepResult step = reverse_step(ctx, out.A, tol);
  out.Y = step.Y;
  out.rhs = step.segment_integral;
  out.ratio = out.lhs / out.rhs;
  return out;
}

}  // namespace zetalab::ladders
