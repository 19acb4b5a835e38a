#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "zetalab/context.hpp"
#include "zetalab/error.hpp"
#include "zetalab/ladders.hpp"
#include "zetalab/zeta_kernel.hpp"

using namespace zetalab;

namespace {

Context& shared() {
  static Context ctx;
  return ctx;
}

}  // namespace

TEST_CASE("predictor and constants") {
  const auto k = ladders::Constants::from(kEulerGamma);
  CHECK(k.one_minus_c == doctest::Approx(1.0 - kEulerGamma));
  CHECK(ladders::predictor(1000.0, k) == doctest::Approx((1.0 - kEulerGamma) * 1000.0 / std::log(1000.0)));
  CHECK_THROWS_AS(ladders::Constants::from(1.5), Error);
}

TEST_CASE("reverse step solves the segment equation") {
  const double T = 1000.0;
  const auto r = ladders::reverse_step(shared(), T, 1e-7);
  const double target = (1.0 - kEulerGamma) * T;
  CHECK(r.Y > T);
  CHECK(r.residual <= 1e-7);
  CHECK(r.bracket_lo <= r.Y);
  CHECK(r.Y <= r.bracket_hi);
  CHECK(std::abs(r.secant_Y - r.Y) < 1e-5 * r.Y);
  // Independent Simpson integral of |zeta(1/2+it)|^2 over [T, Y].
  const double ref = oracle::simpson([](double t) { return std::norm(zeta::zeta({0.5, t}).value); }, T, r.Y, 40000);
  CHECK(ref == doctest::Approx(target).epsilon(1e-6));
}

TEST_CASE("reverse step errors") {
  try {
    ladders::reverse_step(shared(), 50.0, 1e-6);
    FAIL("expected DomainError");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::Domain);
  }
  RunConfig cfg;
  cfg.iterate_cap = 2;
  Context small(cfg);
  try {
    ladders::reverse_iterates(small, 1000.0, 3, 1e-6);
    FAIL("expected LimitExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::LimitExceeded);
  }
}

TEST_CASE("iterates and partition report") {
  const auto seq = ladders::reverse_iterates(shared(), 1000.0, 3, 1e-7);
  REQUIRE(seq.iterates.size() == 3);
  CHECK(seq.iterates[0] < seq.iterates[1]);
  CHECK(seq.iterates[1] < seq.iterates[2]);
  for (std::size_t r = 0; r < 3; ++r) {
    const double prev = r ? seq.iterates[r - 1] : 1000.0;
    CHECK(seq.segment_integrals[r] == doctest::Approx((1.0 - kEulerGamma) * prev).epsilon(1e-7));
  }
  const auto p = ladders::check_partition(seq);
  CHECK(p.equidistance.size() == 2);
  CHECK(p.segment_ratios.size() == 2);
  CHECK(p.step_law.size() == 3);
  for (double v : p.segment_ratios) {
    CHECK(v > 0.85);
    CHECK(v < 1.0);
  }
  for (double v : p.step_law) CHECK(std::abs(v - 1.0) < 0.5);
  ladders::LadderSequence one = seq;
  one.iterates.resize(1);
  CHECK_THROWS_AS(ladders::check_partition(one), Error);
}
