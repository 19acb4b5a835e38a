#include <doctest.h>

#include "oracles.hpp"
#include "zetalab/error.hpp"
#include "zetalab/fermat.hpp"

using namespace zetalab;
using fermat::FermatRational;

namespace {

FermatRational q(long x, long y, long z, int n) { return {mpz_class(x), mpz_class(y), mpz_class(z), n}; }

mpq_class brute_gap(const oracle::BruteGap& b) {
  auto to_mpz = [](__int128 v) {
    mpz_class r = 0;
    const mpz_class base("18446744073709551616");
    r = mpz_class(static_cast<unsigned long>(static_cast<unsigned __int128>(v) >> 64)) * base +
        mpz_class(static_cast<unsigned long>(v & 0xFFFFFFFFFFFFFFFFULL));
    return r;
  };
  mpq_class g(to_mpz(b.num), to_mpz(b.den));
  g.canonicalize();
  return g;
}

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::Io;
}

}  // namespace

TEST_CASE("exact values") {
  CHECK(fermat::value(q(3, 4, 5, 3)) == mpq_class(91, 125));
  CHECK(fermat::to_string(fermat::value(q(3, 4, 5, 3))) == "91/125");
  CHECK(fermat::value(q(1, 1, 1, 3)) == 2);
  CHECK(fermat::to_string(mpq_class(2)) == "2");
  CHECK(!fermat::equals_one(q(6, 8, 9, 3)));
  CHECK(fermat::value(q(6, 8, 9, 3)) == mpq_class(728, 729));
}

TEST_CASE("homogeneity") {
  for (int n = 3; n <= 6; ++n) {
    for (long k = 1; k <= 5; ++k) {
      CHECK(fermat::value(q(k * 3, k * 7, k * 4, n)) == fermat::value(q(3, 7, 4, n)));
      CHECK(fermat::value(q(k * 2, k * 9, k * 11, n)) == fermat::value(q(2, 9, 11, n)));
    }
  }
}

TEST_CASE("validation and limits") {
  CHECK(code_of([] { fermat::validate(q(0, 1, 1, 3)); }) == Errc::InvalidArgument);
  CHECK(code_of([] { fermat::validate(q(1, 1, 1, 2)); }) == Errc::InvalidArgument);
  CHECK(code_of([] { fermat::check_box(20000, 3, 4); }) == Errc::LimitExceeded);
  CHECK(code_of([] { fermat::check_box(10, 3, 65); }) == Errc::LimitExceeded);
  CHECK(code_of([] { fermat::check_box(10, 5, 4); }) == Errc::LimitExceeded);
}

TEST_CASE("enumeration order and count") {
  std::vector<std::string> seen;
  fermat::enumerate(2, 3, 4, [&](const FermatRational& r) {
    seen.push_back(r.to_string());
    return true;
  });
  REQUIRE(seen.size() == 16);
  CHECK(seen.front() == "(1,1,1,3)");
  CHECK(seen[1] == "(1,1,2,3)");
  CHECK(seen.back() == "(2,2,2,4)");
  int visits = 0;
  fermat::enumerate(5, 3, 3, [&](const FermatRational&) { return ++visits < 7; });
  CHECK(visits == 7);
}

TEST_CASE("minimal gap agrees with a 128-bit brute-force scan") {
  for (auto [h, a, b] : {std::tuple{5L, 3, 3}, std::tuple{12L, 3, 5}, std::tuple{20L, 3, 7}}) {
    const auto mine = fermat::min_gap(h, a, b);
    const auto ref = oracle::brute_fermat(h, a, b);
    CHECK(mine.gap == brute_gap(ref));
    CHECK(mine.witness.to_string() == q(ref.x, ref.y, ref.z, ref.n).to_string());
    CHECK(mine.equal_one == ref.solutions);
    CHECK(mine.scanned == h * h * h * (b - a + 1));
  }
  CHECK(fermat::min_gap(5, 3, 3).gap == mpq_class(1, 125));
}

TEST_CASE("pair sigma") {
  CHECK(fermat::pair_sigma(q(3, 4, 5, 3), 0.05) == doctest::Approx(91.0 / 125.0));
  CHECK(code_of([] { fermat::pair_sigma(q(1, 2, 3, 3), 0.05); }) == Errc::ConstraintViolation);
}
