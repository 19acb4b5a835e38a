#pragma once

// Reference computations for the tests. None of these route through the
// library's own evaluation paths beyond what each comment states.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

namespace oracle {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

/// Composite Simpson with n (even) subintervals.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  if (n % 2) ++n;
  const double h = (b - a) / n;
  long double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0L : 2.0L) * f(a + i * h);
  return static_cast<double>(s * h / 3.0L);
}

/// zeta(s), real s > 1: sum_{n<N} n^-s plus the Euler-Maclaurin tail at N
/// through the s(s+1)(s+2) term, summed backwards in long double.
inline double zeta_partial_tail(double s, long N = 2'000'000) {
  long double sum = 0.0L;
  for (long n = N - 1; n >= 1; --n) sum += std::pow(static_cast<long double>(n), -static_cast<long double>(s));
  const long double Nl = N, sl = s;
  const long double tail = std::pow(Nl, 1.0L - sl) / (sl - 1.0L) + 0.5L * std::pow(Nl, -sl) +
                           sl / 12.0L * std::pow(Nl, -sl - 1.0L) -
                           sl * (sl + 1.0L) * (sl + 2.0L) / 720.0L * std::pow(Nl, -sl - 3.0L);
  return static_cast<double>(sum + tail);
}

/// Im log Gamma(1/4 + it/2) - (t/2) log pi via the Stirling series after
/// shifting the argument up by 10, principal branch continued in t.
inline double theta_stirling(double t) {
  using C = std::complex<long double>;
  C z(0.25L, t / 2.0L);
  C shift = 0.0L;
  for (int k = 0; k < 10; ++k) shift += std::log(z + static_cast<long double>(k));
  const C w = z + 10.0L;
  const C w2 = w * w;
  C lg = (w - 0.5L) * std::log(w) - w + 0.5L * std::log(2.0L * static_cast<long double>(kPi)) +
         1.0L / (12.0L * w) - 1.0L / (360.0L * w * w2) + 1.0L / (1260.0L * w * w2 * w2) -
         1.0L / (1680.0L * w * w2 * w2 * w2);
  lg -= shift;
  // Each log term is principal; their imaginary parts sum continuously in t
  // because every factor stays in the right half-plane.
  return static_cast<double>(lg.imag() - t / 2.0L * std::log(static_cast<long double>(kPi)));
}

/// Bisection on a sign change of f inside [a, b].
inline double bisect(const std::function<double(double)>& f, double a, double b, double tol = 1e-13) {
  double fa = f(a);
  for (int i = 0; i < 200 && b - a > tol; ++i) {
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    if ((fm < 0) == (fa < 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

/// Zeros of a real function on [a, b] from sign changes on a uniform grid.
inline std::vector<double> sign_change_roots(const std::function<double(double)>& f, double a, double b, double step) {
  std::vector<double> roots;
  double x0 = a, f0 = f(a);
  while (x0 < b) {
    const double x1 = std::min(b, x0 + step);
    const double f1 = f(x1);
    if ((f0 < 0) != (f1 < 0)) roots.push_back(bisect(f, x0, x1));
    x0 = x1;
    f0 = f1;
  }
  return roots;
}

/// S_1(t) from a zero list and theta: integrates S(u) = N(u) - theta(u)/pi - 1
/// piece by piece between zeros with Simpson.
inline double S1_simpson(const std::vector<double>& zeros, const std::function<double(double)>& theta, double t,
                         int per_piece = 400) {
  std::vector<double> cuts{0.0};
  for (double g : zeros) {
    if (g < t) cuts.push_back(g);
  }
  cuts.push_back(t);
  long double total = 0.0L;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i], b = cuts[i + 1];
    if (b <= a) continue;
    const double count = static_cast<double>(i);  // zeros strictly below the piece
    total += simpson([&](double u) { return count - theta(u) / kPi - 1.0; }, a, b, per_piece);
  }
  return static_cast<double>(total);
}

/// sum_{n<=N} |a_n|^2 n^{-2 sigma} with a tail bound omitted; N large.
inline double F_partial(const std::function<double(long)>& abs_sq, double sigma, long N) {
  long double s = 0.0L;
  for (long n = N; n >= 1; --n) s += abs_sq(n) * std::pow(static_cast<long double>(n), -2.0L * sigma);
  return static_cast<double>(s);
}

/// Exhaustive Fermat box scan in 128-bit integers. Returns the minimal
/// |x^n + y^n - z^n| / z^n as (numerator, denominator) unreduced, the witness
/// (first in n, x, y, z order), and the count of exact solutions.
struct BruteGap {
  __int128 num = -1;
  __int128 den = 1;
  long x = 0, y = 0, z = 0;
  int n = 0;
  long long solutions = 0;
};

inline __int128 ipow(long b, int e) {
  __int128 r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

inline BruteGap brute_fermat(long h, int nmin, int nmax) {
  BruteGap best;
  for (int n = nmin; n <= nmax; ++n) {
    for (long x = 1; x <= h; ++x) {
      for (long y = 1; y <= h; ++y) {
        for (long z = 1; z <= h; ++z) {
          __int128 d = ipow(x, n) + ipow(y, n) - ipow(z, n);
          if (d < 0) d = -d;
          const __int128 den = ipow(z, n);
          if (d == 0) ++best.solutions;
          if (best.num < 0 || d * best.den < best.num * den) {
            best.num = d;
            best.den = den;
            best.x = x;
            best.y = y;
            best.z = z;
            best.n = n;
          }
        }
      }
    }
  }
  return best;
}

}  // namespace oracle
