#include "zetalab/fermat.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "zetalab/error.hpp"

namespace zetalab::fermat {

namespace {

mpz_class power(const mpz_class& base, int n) {
  mpz_class out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(n));
  return out;
}

}  // namespace

std::string FermatRational::to_string() const {
  std::ostringstream os;
  os << '(' << x.get_str() << ',' << y.get_str() << ',' << z.get_str() << ',' << n << ')';
  return os.str();
}

void validate(const FermatRational& q) {
  if (q.x < 1 || q.y < 1 || q.z < 1) fail(Errc::InvalidArgument, "x, y, z must be positive integers");
  if (q.n < 3) fail(Errc::InvalidArgument, "exponent n must be at least 3");
  if (q.n > kMaxExponent) fail(Errc::LimitExceeded, "exponent above the cap of 64");
}

mpq_class value(const FermatRational& q) {
  validate(q);
  mpq_class v(power(q.x, q.n) + power(q.y, q.n), power(q.z, q.n));
  v.canonicalize();
  return v;
}

bool equals_one(const FermatRational& q) {
  validate(q);
  return power(q.x, q.n) + power(q.y, q.n) == power(q.z, q.n);
}

void check_box(long h_max, int n_min, int n_max) {
  if (h_max < 1 || h_max > kMaxHeight) fail(Errc::LimitExceeded, "h_max must lie in [1, 10000]");
  if (n_min < 3 || n_max > kMaxExponent || n_min > n_max) {
    fail(Errc::LimitExceeded, "exponents must satisfy 3 <= n_min <= n_max <= 64");
  }
}

void enumerate(long h_max, int n_min, int n_max, const std::function<bool(const FermatRational&)>& visit) {
  check_box(h_max, n_min, n_max);
  FermatRational q;
  for (int n = n_min; n <= n_max; ++n) {
    q.n = n;
    for (long x = 1; x <= h_max; ++x) {
      q.x = x;
      for (long y = 1; y <= h_max; ++y) {
        q.y = y;
        for (long z = 1; z <= h_max; ++z) {
          q.z = z;
          if (!visit(q)) return;
        }
      }
    }
  }
}

GapResult min_gap(long h_max, int n_min, int n_max) {
  check_box(h_max, n_min, n_max);
  GapResult out;
  // Best so far as num/den with num = |x^n + y^n - z^n|, den = z^n.
  mpz_class best_num, best_den;
  bool have = false;
  std::vector<mpz_class> pw(static_cast<std::size_t>(h_max) + 1);
  mpz_class num;
  for (int n = n_min; n <= n_max; ++n) {
    for (long i = 1; i <= h_max; ++i) pw[i] = power(mpz_class(i), n);
    for (long x = 1; x <= h_max; ++x) {
      for (long y = 1; y <= h_max; ++y) {
        const mpz_class sum = pw[x] + pw[y];
        for (long z = 1; z <= h_max; ++z) {
          ++out.scanned;
          num = sum - pw[z];
          if (num == 0) ++out.equal_one;
          mpz_abs(num.get_mpz_t(), num.get_mpz_t());
          if (!have || num * best_den < best_num * pw[z]) {
            best_num = num;
            best_den = pw[z];
            out.witness.x = x;
            out.witness.y = y;
            out.witness.z = z;
            out.witness.n = n;
            have = true;
          }
        }
      }
    }
  }
  out.gap = mpq_class(best_num, best_den);
  out.gap.canonicalize();
  return out;
}

double pair_sigma(const FermatRational& q, double epsilon) {
  if (!std::isfinite(epsilon) || epsilon < 0.0) fail(Errc::InvalidArgument, "epsilon must be finite and >= 0");
  const mpq_class v = value(q);
  const mpq_class floor = mpq_class(1, 2) + mpq_class(epsilon);
  if (v < floor) {
    fail(Errc::ConstraintViolation,
         "value " + to_string(v) + " of " + q.to_string() + " is below 1/2 + epsilon");
  }
  return v.get_d();
}

std::string to_string(const mpq_class& q) { return q.get_str(); }

}  // namespace zetalab::fermat
