#pragma once

// Fermat rationals (x^n + y^n) / z^n in exact arithmetic.

#include <functional>
#include <string>

#include <gmpxx.h>

namespace zetalab::fermat {

inline constexpr long kMaxHeight = 10'000;
inline constexpr int kMaxExponent = 64;

struct FermatRational {
  mpz_class x, y, z;
  int n = 3;

  std::string to_string() const;  // "(x,y,z,n)"
};

/// Throws InvalidArgument unless x, y, z >= 1 and n >= 3.
void validate(const FermatRational& q);

/// Exact reduced value.
mpq_class value(const FermatRational& q);

/// x^n + y^n == z^n, decided on integers.
bool equals_one(const FermatRational& q);

/// Throws LimitExceeded outside 1 <= h_max <= 1e4, 3 <= n_min <= n_max <= 64.
void check_box(long h_max, int n_min, int n_max);

/// Visits (x, y, z, n) with 1 <= x, y, z <= h_max in the order n, x, y, z.
/// The visitor returns false to stop early.
void enumerate(long h_max, int n_min, int n_max, const std::function<bool(const FermatRational&)>& visit);

struct GapResult {
  mpq_class gap;  // min |value - 1|
  FermatRational witness;  // first tuple in enumeration order attaining it
  long long scanned = 0;
  long long equal_one = 0;  // tuples with value exactly 1
};

GapResult min_gap(long h_max, int n_min, int n_max);

/// sigma = value(q) for use as a real part; requires value(q) >= 1/2 + epsilon
/// (exact comparison, epsilon taken as its exact binary value).
double pair_sigma(const FermatRational& q, double epsilon);

std::string to_string(const mpq_class& q);

}  // namespace zetalab::fermat
