#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "oracles.hpp"
#include "zetalab/context.hpp"
#include "zetalab/dirichlet.hpp"
#include "zetalab/error.hpp"

using namespace zetalab;
using zetalab::Complex;

namespace {

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::Io;
}

std::filesystem::path write_series(const std::string& name, const std::string& text) {
  const auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p) << text;
  return p;
}

}  // namespace

TEST_CASE("mean-value constants in closed form") {
  const double pi = oracle::kPi;
  CHECK(std::abs(dirichlet::F_constant(dirichlet::builtin("zeta"), 2.0, 1e-14) - std::pow(pi, 4) / 90.0) < 1e-12);
  CHECK(std::abs(dirichlet::F_constant(dirichlet::builtin("chi4"), 1.0, 1e-14) - pi * pi / 8.0) < 1e-12);
  CHECK(std::abs(dirichlet::F_constant(dirichlet::builtin("eta"), 1.5, 1e-14) - oracle::zeta_partial_tail(3.0)) <
        1e-10);
  CHECK(dirichlet::F_constant(dirichlet::builtin("one"), 0.3, 1e-14) == 1.0);
}

TEST_CASE("F against partial sums") {
  const double ref = oracle::F_partial([](long n) { return n % 2 ? 1.0 : 0.0; }, 1.25, 4'000'000);
  CHECK(dirichlet::F_constant(dirichlet::builtin("chi4"), 1.25, 1e-14) == doctest::Approx(ref).epsilon(1e-6));
}

TEST_CASE("series values") {
  const Complex s(1.5, 7.0);
  const Complex z = zeta::zeta(s).value;
  const Complex eta = dirichlet::evaluate(dirichlet::builtin("eta"), 1.5, 7.0, 1e-12);
  CHECK(std::abs(eta - (1.0 - std::pow(Complex(2.0), 1.0 - s)) * z) < 1e-10);
  const Complex L2 = dirichlet::evaluate(dirichlet::builtin("chi4"), 2.0, 0.0, 1e-13);
  CHECK(L2.real() == doctest::Approx(0.915965594177219015).epsilon(1e-12));  // Catalan's constant
  CHECK(std::abs(L2.imag()) < 1e-13);
  // Conjugate symmetry for real coefficients.
  const Complex a = dirichlet::evaluate(dirichlet::builtin("chi4"), 1.2, -30.0, 1e-12);
  const Complex b = dirichlet::evaluate(dirichlet::builtin("chi4"), 1.2, 30.0, 1e-12);
  CHECK(std::abs(a - std::conj(b)) < 1e-11);
}

TEST_CASE("domain checks") {
  CHECK(code_of([] { dirichlet::evaluate(dirichlet::builtin("zeta"), 1.01, 0.0, 1e-10); }) == Errc::Domain);
  CHECK(code_of([] { dirichlet::F_constant(dirichlet::builtin("zeta"), 0.5, 1e-10); }) == Errc::Domain);
  CHECK(code_of([] { dirichlet::resolve("mystery"); }) == Errc::InvalidArgument);
}

TEST_CASE("coefficient files") {
  const auto finite = write_series("zl_finite_series.txt", "# sigma_a 0\n# bound finite\n1 1 0\n2 0 1\n4 -0.5 0\n");
  const auto f = dirichlet::resolve("file:" + finite.string());
  CHECK(dirichlet::F_constant(f, 1.0, 1e-14) == doctest::Approx(1.0 + 0.25 + 0.25 / 16.0).epsilon(1e-14));
  const Complex v = dirichlet::evaluate(f, 1.0, 3.0, 1e-14);
  const Complex s(1.0, 3.0);
  const Complex ref = 1.0 + Complex(0, 1) * std::pow(Complex(2.0), -s) - 0.5 * std::pow(Complex(4.0), -s);
  CHECK(std::abs(v - ref) < 1e-14);

  const auto periodic = write_series("zl_periodic_series.txt", "# sigma_a 1\n# bound periodic 4\n1 1 0\n3 -1 0\n");
  const auto g = dirichlet::load_series_file(periodic);
  CHECK(dirichlet::F_constant(g, 1.0, 1e-14) == doctest::Approx(oracle::kPi * oracle::kPi / 8.0).epsilon(1e-13));

  const auto broken = write_series("zl_broken_series.txt", "# bound finite\n1 one 0\n");
  CHECK(code_of([&] { dirichlet::load_series_file(broken); }) == Errc::InvalidArgument);
  CHECK(code_of([] { dirichlet::load_series_file("/nonexistent/series.txt"); }) == Errc::Io);
}

TEST_CASE("finite-T mean of a constant series") {
  Context ctx;
  CHECK(dirichlet::mean_value_estimate(ctx, "one", 1.0, 150.0, 1e-8) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(code_of([&] { dirichlet::mean_value_estimate(ctx, "one", 1.0, 50.0, 1e-8); }) == Errc::Domain);
}
