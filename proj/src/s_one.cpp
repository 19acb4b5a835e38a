#include "zetalab/s_one.hpp"

#include <algorithm>
#include <boost/math/tools/toms748_solve.hpp>
#include <cmath>
#include <mutex>
#include <sstream>

#include "zetalab/context.hpp"
#include "zetalab/error.hpp"

namespace zetalab::sone {

namespace {

using zeta::kPi;

double root_between(double lo, double hi, double zlo, double zhi, double tol) {
  auto f = [](double t) { return zeta::hardy_z(t); };
  auto done = [tol](double a, double b) {
    return std::fabs(b - a) <= std::max(tol, 4.0 * std::numeric_limits<double>::epsilon() * std::fabs(b));
  };
  std::uintmax_t iters = 200;
  const auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, zlo, zhi, done, iters);
  return 0.5 * (a + b);
}

}  // namespace

ArgTrace arg_zeta_critical(double t, const ArgOptions& options) {
  if (!std::isfinite(t) || t < 0.0) fail(Errc::InvalidArgument, "arg_zeta_critical needs finite t >= 0");
  if (options.min_steps < 1 || options.max_steps < 1 || !(options.max_turn > 0.0) ||
      !(options.max_turn < kPi / 2.0)) {
    fail(Errc::InvalidArgument, "bad path step options");
  }
  ArgTrace trace;
  trace.t = t;
  if (t == 0.0) return trace;

  Complex prev = zeta::zeta(Complex(2.0, t)).value;
  double arg = std::arg(prev);  // Re zeta(2 + it) >= 2 - zeta(2) > 0
  const double h_max = 1.5 / options.min_steps;
  double h = h_max;
  double sigma = 2.0;
  while (sigma > 0.5) {
    if (trace.path_steps >= options.max_steps) {
      fail(Errc::BudgetExceeded, "argument walk exceeded its step cap");
    }
    const double step = std::min(h, sigma - 0.5);
    const double next_sigma = step == sigma - 0.5 ? 0.5 : sigma - step;
    const Complex cur = zeta::zeta(Complex(next_sigma, t)).value;
    const double turn = std::arg(cur / prev);
    if (std::fabs(turn) >= options.max_turn) {
      h = 0.5 * step;
      if (h < 1e-14) fail(Errc::ZeroProximity, "argument walk stalled near a zero");
      continue;
    }
    arg += turn;
    trace.max_step_turn = std::max(trace.max_step_turn, std::fabs(turn));
    ++trace.path_steps;
    sigma = next_sigma;
    prev = cur;
    h = std::min(h_max, 2.0 * h);
  }
  if (std::abs(prev) < 1e-12) {
    std::ostringstream os;
    os << "|zeta(1/2 + " << t << "i)| = " << std::abs(prev) << " below 1e-12";
    fail(Errc::ZeroProximity, os.str());
  }
  trace.arg_value = arg;
  return trace;
}

ArgTrace arg_zeta_critical_nudged(double t, const ArgOptions& options) {
  for (double offset : {0.0, 1e-7, -1e-7}) {
    if (t + offset < 0.0) continue;
    try {
      ArgTrace trace = arg_zeta_critical(t + offset, options);
      trace.offset = offset;
      return trace;
    } catch (const Error& e) {
      if (e.code() != Errc::ZeroProximity) throw;
    }
  }
  fail(Errc::ZeroProximity, "zeta vanishes at every offset tried near t");
}

ZeroSet::ZeroSet(ZeroSetOptions options) : options_(options) {
  sums_.push_back(0.0L);
  anchors_.push_back({0.0, 0, 0.0});
}

double ZeroSet::covered() const {
  std::shared_lock lock(mutex_);
  return anchors_.back().t;
}

std::size_t ZeroSet::size() const {
  std::shared_lock lock(mutex_);
  return zeros_.size();
}

std::vector<Anchor> ZeroSet::anchors() const {
  std::shared_lock lock(mutex_);
  return anchors_;
}

void ZeroSet::extend(double t) {
  if (!std::isfinite(t)) fail(Errc::InvalidArgument, "cannot extend zero set to a non-finite height");
  std::unique_lock lock(mutex_);
  while (anchors_.back().t < t) extend_block();
}

void ZeroSet::ensure(double t) {
  {
    std::shared_lock lock(mutex_);
    if (t <= anchors_.back().t) return;
  }
  extend(t);
}

void ZeroSet::extend_block() {
  const Anchor start = anchors_.back();
  const double a = start.t;
  const double len = std::max(options_.min_block, options_.block_gaps * zeta::mean_zero_gap(a));
  const double nominal = a + len;
  const double gap = zeta::mean_zero_gap(nominal);

  // Put the anchor where |Z| is large so the argument walk ends well away
  // from a zero.
  double b = nominal;
  double best = -1.0;
  for (int j = 0; j < 8; ++j) {
    const double c = nominal + j * gap / 8.0;
    const double z = std::fabs(zeta::hardy_z(c));
    if (z > best) {
      best = z;
      b = c;
    }
  }

  const ArgTrace trace = arg_zeta_critical_nudged(b, options_.arg);
  b = trace.t;
  const double n_real = zeta::theta(b) / kPi + 1.0 + trace.arg_value / kPi;
  const long n_end = std::lround(n_real);
  if (std::fabs(n_real - static_cast<double>(n_end)) > 1e-4) {
    std::ostringstream os;
    os << "zero count at anchor t = " << b << " is not an integer (" << n_real << ")";
    fail(Errc::AccuracyNotReached, os.str());
  }
  const long expected = n_end - start.count;
  if (expected < 0) fail(Errc::AccuracyNotReached, "zero count decreased between anchors");

  std::vector<double> grid_t;
  std::vector<double> grid_z;
  double step = gap / 4.0;
  long found = -1;
  for (int level = 0; level <= options_.max_refinements; ++level, step *= 0.5) {
    const long n = std::max(2L, static_cast<long>(std::ceil((b - a) / step)));
    grid_t.resize(n + 1);
    grid_z.resize(n + 1);
    for (long i = 0; i <= n; ++i) {
      grid_t[i] = i == n ? b : a + (b - a) * static_cast<double>(i) / static_cast<double>(n);
      grid_z[i] = zeta::hardy_z(grid_t[i]);
    }
    found = 0;
    for (long i = 0; i < n; ++i) found += (grid_z[i] < 0.0) != (grid_z[i + 1] < 0.0);
    if (found == expected) break;
  }
  if (found != expected) {
    std::ostringstream os;
    os << "found " << found << " sign changes of Z on [" << a << ", " << b << "] but the argument gives "
       << expected << " zeros";
    fail(Errc::AccuracyNotReached, os.str());
  }
  for (std::size_t i = 0; i + 1 < grid_t.size(); ++i) {
    if ((grid_z[i] < 0.0) == (grid_z[i + 1] < 0.0)) continue;
    const double g = grid_z[i] == 0.0
                         ? grid_t[i]
                         : root_between(grid_t[i], grid_t[i + 1], grid_z[i], grid_z[i + 1], options_.zero_tol);
    zeros_.push_back(g);
    sums_.push_back(sums_.back() + static_cast<long double>(g));
  }
  anchors_.push_back({b, n_end, trace.arg_value / kPi});
}

long ZeroSet::count_locked(double t) const {
  return static_cast<long>(std::upper_bound(zeros_.begin(), zeros_.end(), t) - zeros_.begin());
}

long ZeroSet::count(double t) {
  ensure(t);
  std::shared_lock lock(mutex_);
  return count_locked(t);
}

std::vector<double> ZeroSet::zeros_in(double a, double b) {
  ensure(b);
  std::shared_lock lock(mutex_);
  auto lo = std::upper_bound(zeros_.begin(), zeros_.end(), a);
  auto hi = std::lower_bound(zeros_.begin(), zeros_.end(), b);
  return lo < hi ? std::vector<double>(lo, hi) : std::vector<double>{};
}

double ZeroSet::S(double t) {
  if (!std::isfinite(t) || t < 0.0) fail(Errc::InvalidArgument, "S(t) needs finite t >= 0");
  if (t == 0.0) return 0.0;
  ensure(t);
  std::shared_lock lock(mutex_);
  return static_cast<double>(count_locked(t)) - zeta::theta(t) / kPi - 1.0;
}

double ZeroSet::S1(double t) {
  if (!std::isfinite(t) || t < 0.0) fail(Errc::InvalidArgument, "S1(t) needs finite t >= 0");
  if (t == 0.0) return 0.0;
  ensure(t);
  std::shared_lock lock(mutex_);
  const long k = count_locked(t);
  const long double lt = t;
  const long double counted = static_cast<long double>(k) * lt - sums_[k];
  const long double value = counted - lt - zeta::theta_integral(t) / static_cast<long double>(kPi);
  return static_cast<double>(value);
}

double SIntegrand::operator()(double t) const { return zeros_.S(t); }

double SIntegrand::panel_width(double t) const { return zeta::mean_zero_gap(t); }

std::vector<double> SIntegrand::breakpoints(double a, double b) const { return zeros_.zeros_in(a, b); }

void SIntegrand::prepare(double, double b) { zeros_.extend(b); }

S1PowIntegrand::S1PowIntegrand(ZeroSet& zeros, int exponent, double grid_resolution)
    : zeros_(zeros), exponent_(exponent), grid_resolution_(grid_resolution) {
  if (exponent < 1) fail(Errc::InvalidArgument, "S1 power must be positive");
  if (!(grid_resolution > 0.0)) fail(Errc::InvalidArgument, "grid resolution must be positive");
}

double S1PowIntegrand::operator()(double t) const {
  return std::pow(std::fabs(zeros_.S1(t)), exponent_);
}

double S1PowIntegrand::panel_width(double t) const {
  return 8.0 * zeta::mean_zero_gap(t) / grid_resolution_;
}

std::vector<double> S1PowIntegrand::breakpoints(double a, double b) const { return zeros_.zeros_in(a, b); }

void S1PowIntegrand::prepare(double, double b) { zeros_.extend(b); }

double S1_quadrature(ZeroSet& zeros, double t, double tol, const quad::Options& options) {
  if (!std::isfinite(t) || t < 0.0) fail(Errc::InvalidArgument, "S1 needs finite t >= 0");
  SIntegrand f(zeros);
  return quad::integrate(f, 0.0, t, tol, options).value;
}

double s1_moment(Context& ctx, int l, double a, double b, double tol) {
  if (l < 1) fail(Errc::InvalidArgument, "moment order l must be at least 1");
  if (!(a >= 0.0) || !(b >= a)) fail(Errc::InvalidArgument, "s1_moment needs 0 <= a <= b");
  if (a == b) return 0.0;
  auto& cache = ctx.s1_pow_cache(l);
  return std::max(0.0, cache.segment(a, b, tol));
}

SelbergConstant selberg_constant(Context& ctx, int l, double T, double tol) {
  if (!(T >= 500.0)) fail(Errc::Domain, "Selberg constant estimate needs T >= 500");
  SelbergConstant c;
  c.l = l;
  c.T_used = T;
  c.estimate = s1_moment(ctx, l, 0.0, T, tol) / T;
  c.uncertainty = c.estimate / std::log(T);
  return c;
}

double window_moment(Context& ctx, int l, double T, double H, double tol) {
  const double a = ctx.config().window_exponent;
  if (!(T > 1.0) || !(H <= T) || !(H >= std::pow(T, a))) {
    std::ostringstream os;
    os << "window H = " << H << " outside [T^" << a << ", T] for T = " << T;
    fail(Errc::ConstraintViolation, os.str());
  }
  return s1_moment(ctx, l, T, T + H, tol) / H;
}

}  // namespace zetalab::sone
