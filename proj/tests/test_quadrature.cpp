#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "zetalab/error.hpp"
#include "zetalab/integrands.hpp"
#include "zetalab/quadrature.hpp"

using namespace zetalab;

namespace {

struct Fn final : quad::Integrand {
  std::function<double(double)> f;
  double width;
  explicit Fn(std::function<double(double)> g, double w = 1.0) : f(std::move(g)), width(w) {}
  double operator()(double t) const override { return f(t); }
  double panel_width(double) const override { return width; }
};

}  // namespace

TEST_CASE("Gauss-Legendre rules") {
  for (int n : {5, 15, 20}) {
    const auto rule = quad::gauss_legendre(n);
    REQUIRE(rule.size() == static_cast<std::size_t>(n));
    double w = 0.0, x2 = 0.0;
    for (const auto& node : rule) {
      w += node.w;
      x2 += node.w * node.x * node.x;
    }
    CHECK(w == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(x2 == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  }
}

TEST_CASE("smooth integrals") {
  Fn e([](double t) { return std::exp(t); });
  CHECK(quad::integrate(e, 0.0, 3.0, 1e-12).value == doctest::Approx(std::exp(3.0) - 1.0).epsilon(1e-13));
  Fn s([](double t) { return std::sin(t) * std::sin(t); }, 2.0);
  CHECK(quad::integrate(s, 0.0, 100.0, 1e-10).value == doctest::Approx(50.0 - std::sin(200.0) / 4.0).epsilon(1e-12));
  Fn kink([](double t) { return std::sqrt(std::abs(t - 0.3)); });
  CHECK(quad::integrate(kink, 0.0, 1.0, 1e-9).value ==
        doctest::Approx(2.0 / 3.0 * (std::pow(0.3, 1.5) + std::pow(0.7, 1.5))).epsilon(1e-9));
}

TEST_CASE("degenerate and bad limits") {
  Fn f([](double t) { return t; });
  const auto r = quad::integrate(f, 2.0, 2.0, 1e-8);
  CHECK(r.value == 0.0);
  CHECK(r.evaluations == 0);
  CHECK_THROWS_AS(quad::integrate(f, 3.0, 2.0, 1e-8), Error);
  CHECK_THROWS_AS(quad::integrate(f, 0.0, 1.0, 0.0), Error);
}

TEST_CASE("evaluation budget") {
  Fn f([](double t) { return std::sin(1.0 / (t + 1e-9)); });
  quad::Options o;
  o.max_evaluations = 1000;
  try {
    quad::integrate(f, 0.0, 1.0, 1e-12, o);
    FAIL("expected BudgetExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::BudgetExceeded);
  }
}

TEST_CASE("partition respects breakpoints and widths") {
  struct B final : quad::Integrand {
    double operator()(double) const override { return 1.0; }
    double panel_width(double) const override { return 0.4; }
    std::vector<double> breakpoints(double, double) const override { return {0.55}; }
  } b;
  const auto parts = quad::partition(b, 0.0, 1.0);
  REQUIRE(!parts.empty());
  CHECK(parts.front().first == 0.0);
  CHECK(parts.back().second == 1.0);
  bool has_break = false;
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
    CHECK(parts[i].second == parts[i + 1].first);
    if (parts[i].second == 0.55) has_break = true;
  }
  CHECK(has_break);
}

TEST_CASE("worker count does not change the bits") {
  ZetaLineIntegrand f(0.5, 8.0);
  f.prepare(0.0, 300.0);
  quad::Options one, three;
  three.workers = 3;
  const double a = quad::integrate(f, 10.0, 300.0, 1e-8, one).value;
  const double b = quad::integrate(f, 10.0, 300.0, 1e-8, three).value;
  CHECK(a == b);
}

TEST_CASE("zeta line integrals: additivity and Simpson oracle on random subintervals") {
  std::mt19937_64 rng(7);
  for (double sigma : {0.5, 2.0}) {
    ZetaLineIntegrand f(sigma, 8.0);
    f.prepare(0.0, 400.0);
    std::uniform_real_distribution<double> U(1.0, 400.0);
    for (int i = 0; i < 5; ++i) {
      double a = U(rng), b = U(rng);
      if (a > b) std::swap(a, b);
      const double m = 0.5 * (a + b);
      const double tol = 1e-8;
      const double whole = quad::integrate(f, a, b, tol).value;
      const double split = quad::integrate(f, a, m, tol).value + quad::integrate(f, m, b, tol).value;
      CHECK(std::abs(whole - split) <= 3 * tol * std::max(1.0, std::abs(whole)));
      const int n = 2 * static_cast<int>(std::ceil(10 * (b - a) * 8.0 / zeta::mean_zero_gap(b))) + 200;
      const double ref = oracle::simpson([&](double t) { return f(t); }, a, b, 10 * n);
      CHECK(std::abs(whole - ref) <= 1e-6 * std::max(1.0, std::abs(ref)));
    }
  }
}
