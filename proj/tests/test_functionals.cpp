#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "zetalab/context.hpp"
#include "zetalab/error.hpp"
#include "zetalab/functionals.hpp"

using namespace zetalab;
using namespace zetalab::functionals;

namespace {

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::Io;
}

FunctionalSpec spec(Kind kind, double sigma = 2.0, int l = 1, int k = 1) {
  FunctionalSpec s;
  s.kind = kind;
  s.sigma = sigma;
  s.l = l;
  s.k = k;
  return s;
}

}  // namespace

TEST_CASE("kind names round-trip") {
  for (Kind k : {Kind::ZetaMean, Kind::S1Mean, Kind::Combined, Kind::LadderZeta, Kind::LadderS1, Kind::Master,
                 Kind::Dirichlet}) {
    CHECK(parse_kind(kind_name(k)) == k);
  }
  CHECK(parse_kind("ladder-zeta") == Kind::LadderZeta);
  CHECK(code_of([] { parse_kind("BOGUS"); }) == Errc::InvalidArgument);
}

TEST_CASE("verdicts") {
  CHECK(classify({0.3, 0.2, 0.1}, 1.0, 0.25) == Verdict::Converging);
  CHECK(classify({0.9, 0.6, 0.3}, 1.0, 0.25) == Verdict::Stalled);
  CHECK(classify({0.1, 0.2, 0.3}, 1.0, 0.25) == Verdict::Diverging);
  CHECK(classify({0.1, 0.1, 0.1}, 1.0, 0.25) == Verdict::Stalled);
  CHECK(classify({0.2, 0.05, 0.1}, 1.0, 0.25) == Verdict::Stalled);
  CHECK(classify({5.0, 0.0, 0.0, 0.0}, 1.0, 0.25) == Verdict::Converging);
  CHECK(code_of([] { classify({0.1, 0.05}, 1.0, 0.25); }) == Errc::InvalidArgument);
}

TEST_CASE("resolve validates parameters") {
  Context ctx;
  CHECK(code_of([&] { resolve(ctx, spec(Kind::ZetaMean, 0.52)); }) == Errc::Domain);
  CHECK(code_of([&] { resolve(ctx, spec(Kind::LadderZeta, 2.0, 1, 6)); }) == Errc::LimitExceeded);
  CHECK(code_of([&] { resolve(ctx, spec(Kind::S1Mean, 2.0, 0)); }) == Errc::InvalidArgument);
  auto r = resolve(ctx, spec(Kind::ZetaMean, 1.5));
  CHECK(r.zeta_2sigma == doctest::Approx(oracle::zeta_partial_tail(3.0)).epsilon(1e-12));
  CHECK(r.c == kEulerGamma);
  CHECK(denominator(r) == r.zeta_2sigma);
  CHECK(upper_limit(r, 2.0, 100.0) == doctest::Approx(200.0 / r.zeta_2sigma));
  CHECK(lower_limit(Kind::ZetaMean) == 1.0);
  CHECK(lower_limit(Kind::S1Mean) == 0.0);
}

TEST_CASE("constant overrides and the S_1 exponent switch") {
  Context ctx;
  auto s = spec(Kind::Combined, 2.0, 2);
  s.selberg = 0.5;
  auto r = resolve(ctx, s);
  CHECK(r.selberg.estimate == 0.5);
  CHECK(r.s1_exponent_l == 2);
  RunConfig cfg;
  cfg.literal_s1_exponent = true;
  Context literal(cfg);
  CHECK(resolve(literal, s).s1_exponent_l == 1);
  auto m = spec(Kind::S1Mean, 2.0, 2);
  m.selberg = 0.5;
  CHECK(resolve(literal, m).s1_exponent_l == 2);
}

TEST_CASE("ZETA_MEAN value against Simpson") {
  Context ctx;
  const auto r = resolve(ctx, spec(Kind::ZetaMean, 2.0));
  const double tau = 60.0, x = 1.5;
  const auto e = eval_functional(ctx, r, x, tau, 1e-10);
  const double U = x * tau / r.zeta_2sigma;
  CHECK(e.upper == doctest::Approx(U));
  const double ref =
      oracle::simpson([](double t) { return std::norm(zeta::zeta({2.0, t}).value); }, 1.0, U, 20000) / tau;
  CHECK(e.value == doctest::Approx(ref).epsilon(1e-9));
  REQUIRE(e.terms.size() == 1);
}

TEST_CASE("integrand terms add up") {
  Context ctx;
  auto s = spec(Kind::Master, 2.0);
  s.selberg = 0.75;
  const auto r = resolve(ctx, s);
  const auto [total, terms] = integrand_at(ctx, r, 123.4);
  REQUIRE(terms.size() == 3);
  double sum = 0.0;
  for (const auto& t : terms) sum += t.weight * t.integral;
  CHECK(total == doctest::Approx(sum));
  const double c = kEulerGamma, z4 = r.zeta_2sigma;
  CHECK(terms[0].weight == doctest::Approx(2 * 0.75 * z4));
  CHECK(terms[1].weight == doctest::Approx((1 - c) * 0.75));
  CHECK(terms[2].weight == doctest::Approx((1 - c) * z4));
}

TEST_CASE("scans need an increasing schedule") {
  Context ctx;
  const auto r = resolve(ctx, spec(Kind::ZetaMean, 2.0));
  CHECK(code_of([&] { convergence_scan(ctx, r, 1.0, {10.0, 20.0}, 1e-8); }) == Errc::InvalidArgument);
  CHECK(code_of([&] { convergence_scan(ctx, r, 1.0, {10.0, 30.0, 20.0}, 1e-8); }) == Errc::InvalidArgument);
  const auto rep = convergence_scan(ctx, r, 1.0, {100.0, 200.0, 400.0}, 1e-8);
  CHECK(rep.values.size() == 3);
  CHECK(rep.deltas[2] == doctest::Approx(std::abs(rep.values[2] - 1.0)));
}

TEST_CASE("Fermat condition evaluates at the exact value") {
  Context ctx;
  const fermat::FermatRational q{mpz_class(3), mpz_class(4), mpz_class(5), 3};
  const auto rep = fermat_condition(ctx, spec(Kind::ZetaMean, 2.0), q, {100.0, 200.0, 400.0}, 1e-8);
  CHECK(rep.exact_value == mpq_class(91, 125));
  CHECK(rep.exact_gap == mpq_class(34, 125));
  CHECK(!rep.equals_one);
  CHECK(rep.scan.x_target == doctest::Approx(91.0 / 125.0));
  CHECK(rep.distance_from_one.size() == 3);
  const auto paired = fermat_condition(ctx, spec(Kind::ZetaMean, 2.0), q, {100.0, 200.0, 400.0}, 1e-8, q);
  CHECK(paired.scan.spec.spec.sigma == doctest::Approx(91.0 / 125.0));
}
