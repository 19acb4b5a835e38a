#include "zetalab/zeta_kernel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "summation.hpp"
#include "zetalab/quadrature.hpp"
#include "zetalab/error.hpp"

namespace zetalab::zeta {

namespace {

constexpr long kLogTableSize = 1L << 18;
constexpr long kMaxCut = 200'000'000L;
constexpr int kMaxCorrectionTerms = 12;

// B_{2j} for j = 1..13.
constexpr std::array<double, 13> kBernoulliEven = {
    1.0 / 6.0,           -1.0 / 30.0,         1.0 / 42.0,
    -1.0 / 30.0,         5.0 / 66.0,          -691.0 / 2730.0,
    7.0 / 6.0,           -3617.0 / 510.0,     43867.0 / 798.0,
    -174611.0 / 330.0,   854513.0 / 138.0,    -236364091.0 / 2730.0,
    8553103.0 / 6.0};

// B_{2j} / (2j)!, j = 1..13.
const std::array<double, 13>& em_coefficients() {
  static const std::array<double, 13> coef = [] {
    std::array<double, 13> c{};
    long double fact = 1.0L;
    for (int j = 1; j <= 13; ++j) {
      fact *= static_cast<long double>(2 * j - 1) * (2 * j);
      c[j - 1] = static_cast<double>(kBernoulliEven[j - 1] / fact);
    }
    return c;
  }();
  return coef;
}

const std::vector<double>& log_table() {
  static const std::vector<double> table = [] {
    std::vector<double> t(kLogTableSize);
    t[0] = 0.0;
    for (long n = 1; n < kLogTableSize; ++n) t[n] = std::log(static_cast<double>(n));
    return t;
  }();
  return table;
}

inline double log_int(long n, const std::vector<double>& table) {
  return n < kLogTableSize ? table[n] : std::log(static_cast<double>(n));
}

// Smallest x = N + a for which the Euler-Maclaurin remainder after m
// corrections is below target. Uses
//   |R_m| <= |T_{m+1}| |s + 2m + 1| / (sigma + 2m + 1).
double required_x(Complex s, int m, double target) {
  const double sigma = s.real();
  double log_c = std::log(std::abs(em_coefficients()[m]));
  for (int i = 0; i <= 2 * m; ++i) log_c += std::log(std::abs(s + double(i)));
  log_c += std::log(std::abs(s + double(2 * m + 1))) - std::log(sigma + 2 * m + 1);
  return std::exp((log_c - std::log(target)) / (sigma + 2 * m + 1));
}

double remainder_bound(Complex s, double x, int m) {
  const double sigma = s.real();
  double log_b = std::log(std::abs(em_coefficients()[m]));
  for (int i = 0; i <= 2 * m; ++i) log_b += std::log(std::abs(s + double(i)));
  log_b += std::log(std::abs(s + double(2 * m + 1))) - std::log(sigma + 2 * m + 1);
  log_b -= (sigma + 2 * m + 1) * std::log(x);
  return std::exp(log_b);
}

// Tail sum_{k>=N} (k + a)^{-s} expanded at x = N + a.
Complex em_tail(Complex s, double x, int m) {
  const double lx = std::log(x);
  const Complex x_ms = std::exp(-s * lx);
  Complex tail = x_ms * x / (s - 1.0) + 0.5 * x_ms;
  Complex poch = s;
  Complex xp = x_ms / x;
  const double inv_x2 = 1.0 / (x * x);
  const auto& coef = em_coefficients();
  for (int j = 1; j <= m; ++j) {
    tail += coef[j - 1] * poch * xp;
    poch *= (s + double(2 * j - 1)) * (s + double(2 * j));
    xp *= inv_x2;
  }
  return tail;
}

long choose_cut(Complex s, double a, const EvalSettings& settings) {
  const double x = required_x(s, settings.em_correction_terms, settings.target_abs_error);
  double n = std::max<double>(static_cast<double>(settings.truncation_N), std::ceil(x - a));
  if (!(n <= static_cast<double>(kMaxCut))) {
    std::ostringstream os;
    os << "Euler-Maclaurin cut " << n << " exceeds " << kMaxCut << " for s = " << s;
    fail(Errc::AccuracyNotReached, os.str());
  }
  return static_cast<long>(n);
}

void check_argument(Complex s) {
  if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
    fail(Errc::InvalidArgument, "non-finite argument");
  if (std::abs(s - 1.0) < 1e-12) fail(Errc::PoleAtOne, "s is within 1e-12 of the pole");
  if (s.real() < 0.4) {
    std::ostringstream os;
    os << "Re(s) = " << s.real() << " is below the guard band 0.4";
    fail(Errc::Domain, os.str());
  }
}

// Power sum over k = 0..N-1 of (k + a)^{-s}; a == 1 uses the integer log table.
Complex direct_sum(Complex s, double a, long cut, const double* n_pow, long n_pow_size) {
  detail::ComplexNeumaier acc;
  const double sigma = s.real();
  const double t = s.imag();
  if (a == 1.0) {
    const auto& table = log_table();
    for (long n = 1; n <= cut; ++n) {
      const double l = log_int(n, table);
      const double mag = (n_pow != nullptr && n < n_pow_size) ? n_pow[n] : std::exp(-sigma * l);
      const double ang = t * l;
      acc.add(mag * std::cos(ang), -mag * std::sin(ang));
    }
  } else {
    for (long k = 0; k < cut; ++k) {
      const double l = std::log(static_cast<double>(k) + a);
      const double mag = std::exp(-sigma * l);
      const double ang = t * l;
      acc.add(mag * std::cos(ang), -mag * std::sin(ang));
    }
  }
  return acc.value();
}

// ---- Riemann-Siegel correction polynomials ----
//
// C_k(p) are built from derivatives of Psi(p) = cos(2 pi (p^2 - p - 1/16)) /
// cos(2 pi p). Psi is entire, so its Taylor coefficients about p = 1/2 are
// taken from a Cauchy integral on the unit circle; the correction terms become
// plain polynomials in u = p - 1/2.

constexpr int kPsiDegree = 96;
constexpr int kCauchyPoints = 256;

struct RsPolynomials {
  std::array<std::vector<double>, 5> c;
};

std::complex<long double> psi_complex(std::complex<long double> p) {
  const long double two_pi = 2.0L * static_cast<long double>(kPi);
  return std::cos(two_pi * (p * p - p - 0.0625L)) / std::cos(two_pi * p);
}

const RsPolynomials& rs_polynomials() {
  static const RsPolynomials polys = [] {
    // Taylor coefficients a_k of Psi(1/2 + u).
    std::vector<long double> a(kPsiDegree + 13, 0.0L);
    const long double two_pi = 2.0L * static_cast<long double>(kPi);
    for (std::size_t k = 0; k < a.size(); ++k) {
      std::complex<long double> acc = 0;
      for (int j = 0; j < kCauchyPoints; ++j) {
        const long double phi = two_pi * (j + 0.5L) / kCauchyPoints;
        const std::complex<long double> w(std::cos(phi), std::sin(phi));
        const std::complex<long double> f = psi_complex(0.5L + w);
        const long double kp = -static_cast<long double>(k) * phi;
        acc += f * std::complex<long double>(std::cos(kp), std::sin(kp));
      }
      a[k] = acc.real() / kCauchyPoints;
    }
    // deriv(j)[i] = coefficient of u^i in Psi^{(j)}(1/2 + u).
    auto deriv = [&](int j) {
      std::vector<long double> d(kPsiDegree + 1, 0.0L);
      for (int i = 0; i <= kPsiDegree; ++i) {
        long double f = 1.0L;
        for (int q = 1; q <= j; ++q) f *= static_cast<long double>(i + q);
        d[i] = a[i + j] * f;
      }
      return d;
    };
    const long double pi2 = static_cast<long double>(kPi) * static_cast<long double>(kPi);
    const long double pi4 = pi2 * pi2, pi6 = pi4 * pi2, pi8 = pi4 * pi4;
    struct Term {
      int order;
      long double weight;
    };
    const std::array<std::vector<Term>, 5> recipe = {{
        {{0, 1.0L}},
        {{3, -1.0L / (96.0L * pi2)}},
        {{2, 1.0L / (64.0L * pi2)}, {6, 1.0L / (18432.0L * pi4)}},
        {{1, -1.0L / (64.0L * pi2)},
         {5, -1.0L / (3840.0L * pi4)},
         {9, -1.0L / (5308416.0L * pi6)}},
        {{0, 1.0L / (128.0L * pi2)},
         {4, 19.0L / (24576.0L * pi4)},
         {8, 11.0L / (5898240.0L * pi6)},
         {12, 1.0L / (2038431744.0L * pi8)}},
    }};
    RsPolynomials out;
    for (int k = 0; k < 5; ++k) {
      std::vector<long double> poly(kPsiDegree + 1, 0.0L);
      for (const Term& term : recipe[k]) {
        const auto d = deriv(term.order);
        for (int i = 0; i <= kPsiDegree; ++i) poly[i] += term.weight * d[i];
      }
      // |u| <= 1/2; drop the negligible high-order tail.
      int last = kPsiDegree;
      while (last > 0 && std::fabs(poly[last]) * std::pow(0.5L, last) < 1e-22L) --last;
      out.c[k].assign(poly.begin(), poly.begin() + last + 1);
    }
    return out;
  }();
  return polys;
}

double horner(const std::vector<double>& poly, double u) {
  double acc = 0.0;
  for (auto it = poly.rbegin(); it != poly.rend(); ++it) acc = acc * u + *it;
  return acc;
}

// ---- theta ----

double theta_coefficient(int k) {
  // (1 - 2^{1-2k}) |B_{2k}| / (4k(2k-1))
  const double b = std::fabs(kBernoulliEven[k - 1]);
  return (1.0 - std::ldexp(1.0, 1 - 2 * k)) * b / (4.0 * k * (2.0 * k - 1.0));
}

constexpr int kThetaTerms = 8;
constexpr double kThetaSwitch = 10.0;

// Antiderivative of the asymptotic theta series.
long double theta_antiderivative(long double u) {
  const long double pi = static_cast<long double>(kPi);
  const long double lu = std::log(u / (2.0L * pi));
  long double acc = u * u / 4.0L * lu - u * u / 8.0L - u * u / 4.0L - pi * u / 8.0L;
  acc += theta_coefficient(1) * std::log(u);
  for (int k = 2; k <= kThetaTerms; ++k) {
    acc += theta_coefficient(k) * std::pow(u, 2 - 2 * k) / (2.0L - 2.0L * k);
  }
  return acc;
}

long double theta_integral_small(double t) {
  static const auto rule = quad::gauss_legendre(20);
  constexpr int kPanels = 8;
  long double acc = 0.0L;
  const double w = t / kPanels;
  for (int p = 0; p < kPanels; ++p) {
    const double mid = (p + 0.5) * w;
    for (const auto& node : rule) acc += node.w * 0.5L * w * theta_log_gamma(mid + 0.5 * w * node.x);
  }
  return acc;
}

}  // namespace

void EvalSettings::validate() const {
  if (!(target_abs_error > 0.0)) fail(Errc::InvalidArgument, "target_abs_error must be positive");
  if (truncation_N < 2) fail(Errc::InvalidArgument, "truncation_N must be at least 2");
  if (em_correction_terms < 0 || em_correction_terms > kMaxCorrectionTerms)
    fail(Errc::InvalidArgument, "em_correction_terms must lie in [0, 12]");
}

ZetaValue hurwitz_zeta(Complex s, double a, const EvalSettings& settings) {
  settings.validate();
  check_argument(s);
  if (!(a > 0.0)) fail(Errc::InvalidArgument, "Hurwitz parameter must be positive");
  const int m = settings.em_correction_terms;
  const long cut = choose_cut(s, a, settings);
  const double x = static_cast<double>(cut) + a;
  ZetaValue out;
  out.value = direct_sum(s, a, cut, nullptr, 0) + em_tail(s, x, m);
  out.err_bound = remainder_bound(s, x, m);
  out.terms = cut;
  if (!(out.err_bound <= settings.target_abs_error) || !std::isfinite(out.value.real()) ||
      !std::isfinite(out.value.imag())) {
    fail(Errc::AccuracyNotReached, "remainder bound above target");
  }
  return out;
}

ZetaValue zeta(Complex s, const EvalSettings& settings) { return hurwitz_zeta(s, 1.0, settings); }

Complex log_gamma(Complex z) {
  if (!(z.real() > 0.0)) fail(Errc::Domain, "log_gamma requires Re(z) > 0");
  Complex shift = 0.0;
  while (z.real() < 15.0) {
    shift += std::log(z);
    z += 1.0;
  }
  const Complex inv = 1.0 / z;
  const Complex inv2 = inv * inv;
  Complex term = inv;
  Complex series = 0.0;
  for (int k = 1; k <= 10; ++k) {
    series += kBernoulliEven[k - 1] / (2.0 * k * (2.0 * k - 1.0)) * term;
    term *= inv2;
  }
  return (z - 0.5) * std::log(z) - z + 0.5 * std::log(kTwoPi) + series - shift;
}

double theta_asymptotic(double t, int terms) {
  double acc = 0.5 * t * std::log(t / kTwoPi) - 0.5 * t - kPi / 8.0;
  const double inv = 1.0 / t;
  const double inv2 = inv * inv;
  double p = inv;
  for (int k = 1; k <= terms && k <= 13; ++k) {
    acc += theta_coefficient(k) * p;
    p *= inv2;
  }
  return acc;
}

double theta_log_gamma(double t) {
  return log_gamma(Complex(0.25, 0.5 * t)).imag() - 0.5 * t * std::log(kPi);
}

double theta(double t) {
  if (!std::isfinite(t)) fail(Errc::InvalidArgument, "theta of non-finite t");
  if (t < 0.0) return -theta(-t);
  return t >= kThetaSwitch ? theta_asymptotic(t, kThetaTerms) : theta_log_gamma(t);
}

long double theta_integral(double t) {
  if (!(t >= 0.0)) fail(Errc::InvalidArgument, "theta_integral requires t >= 0");
  if (t <= kThetaSwitch) return theta_integral_small(t);
  static const long double base = theta_integral_small(kThetaSwitch) - theta_antiderivative(kThetaSwitch);
  return base + theta_antiderivative(t);
}

double hardy_z_euler_maclaurin(double t, const EvalSettings& settings) {
  const Complex z = zeta(Complex(0.5, t), settings).value;
  const double th = theta(t);
  return (Complex(std::cos(th), std::sin(th)) * z).real();
}

double hardy_z_riemann_siegel(double t) {
  t = std::fabs(t);
  if (t < 2.0 * kTwoPi) fail(Errc::Domain, "Riemann-Siegel needs t >= 4 pi");
  const double tau = std::sqrt(t / kTwoPi);
  const long n_terms = static_cast<long>(std::floor(tau));
  const double p = tau - static_cast<double>(n_terms);
  const double th = theta(t);
  const auto& table = log_table();
  detail::Neumaier<double> acc;
  for (long n = 1; n <= n_terms; ++n) {
    const double l = log_int(n, table);
    acc.add(std::cos(th - t * l) / std::sqrt(static_cast<double>(n)));
  }
  const auto& polys = rs_polynomials();
  const double u = p - 0.5;
  const double w = std::sqrt(kTwoPi / t);  // (2 pi / t)^{1/2}
  double corr = 0.0;
  double wk = 1.0;
  for (int k = 0; k < 5; ++k) {
    corr += horner(polys.c[k], u) * wk;
    wk *= w;
  }
  const double sign = (n_terms % 2 == 1) ? 1.0 : -1.0;  // (-1)^{N-1}
  return 2.0 * acc.value() + sign * std::sqrt(w) * corr;
}

double hardy_z(double t, const EvalSettings& settings) {
  if (!std::isfinite(t)) fail(Errc::InvalidArgument, "hardy_z of non-finite t");
  t = std::fabs(t);
  return t >= kRiemannSiegelThreshold ? hardy_z_riemann_siegel(t) : hardy_z_euler_maclaurin(t, settings);
}

double zeta_2sigma(double sigma, double epsilon) {
  if (!(sigma >= 0.5 + epsilon)) {
    std::ostringstream os;
    os << "sigma = " << sigma << " is below 1/2 + epsilon = " << 0.5 + epsilon;
    fail(Errc::Domain, os.str());
  }
  EvalSettings settings;
  settings.target_abs_error = 1e-15;
  return zeta(Complex(2.0 * sigma, 0.0), settings).value.real();
}

double mean_zero_gap(double t) {
  const double l = std::log(std::fabs(t) / kTwoPi);
  return kTwoPi / std::max(1.0, l);
}

LineEvaluator::LineEvaluator(double sigma, EvalSettings settings)
    : sigma_(sigma), settings_(settings) {
  settings_.validate();
  if (!(sigma >= 0.4)) fail(Errc::Domain, "LineEvaluator needs sigma >= 0.4");
}

long LineEvaluator::cut_for(double t) const {
  return choose_cut(Complex(sigma_, t), 1.0, settings_);
}

void LineEvaluator::reserve(double t_max) {
  const long cut = cut_for(std::fabs(t_max)) + 1;
  const long old = static_cast<long>(n_pow_.size());
  if (cut <= old) return;
  n_pow_.resize(cut + 1);
  const auto& table = log_table();
  for (long n = std::max(old, 1L); n <= cut; ++n) n_pow_[n] = std::exp(-sigma_ * log_int(n, table));
}

Complex LineEvaluator::value(double t) const {
  if (sigma_ == 0.5 && std::fabs(t) >= kRiemannSiegelThreshold) {
    const double z = hardy_z_riemann_siegel(t);
    const double th = theta(t);
    return Complex(std::cos(th), -std::sin(th)) * z;
  }
  const Complex s(sigma_, t);
  check_argument(s);
  const long cut = cut_for(t);
  return direct_sum(s, 1.0, cut, n_pow_.data(), static_cast<long>(n_pow_.size())) +
         em_tail(s, static_cast<double>(cut) + 1.0, settings_.em_correction_terms);
}

double LineEvaluator::abs_sq(double t) const {
  if (sigma_ == 0.5 && std::fabs(t) >= kRiemannSiegelThreshold) {
    const double z = hardy_z_riemann_siegel(t);
    return z * z;
  }
  return std::norm(value(t));
}

}  // namespace zetalab::zeta
