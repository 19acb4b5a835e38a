#pragma once

// Dirichlet series f(s) = sum a_n n^{-s} on vertical lines, the mean-value
// constant F(sigma0; f) = sum |a_n|^2 n^{-2 sigma0}, and finite-T means of
// |f(sigma0 + it)|^2.
//
// Periodic coefficient sequences (zeta, eta, chi_4, ...) are summed exactly as
// q^{-s} sum_r a_r zeta(s, r/q). Anything else is a truncated sum whose tail
// is bounded through the declared coefficient bound.

#include <filesystem>
#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "zetalab/quadrature.hpp"
#include "zetalab/zeta_kernel.hpp"

namespace zetalab {

class Context;

namespace dirichlet {

enum class BoundModel {
  Constant,  // |a_n| <= B
  Power,     // |a_n| <= B n^theta
  Periodic,  // a_{n+q} = a_n
  Finite,    // a_n = 0 past the listed coefficients
};

const char* bound_model_name(BoundModel model) noexcept;

class DirichletSeries {
 public:
  using Oracle = std::function<Complex(long)>;

  static DirichletSeries periodic(std::string id, std::vector<Complex> residues, double sigma_a);
  static DirichletSeries finite(std::string id, std::vector<Complex> coefficients);
  static DirichletSeries bounded(std::string id, Oracle oracle, double sigma_a, double B, double theta = 0.0);

  const std::string& id() const noexcept { return id_; }
  double sigma_a() const noexcept { return sigma_a_; }
  BoundModel bound() const noexcept { return bound_; }
  double bound_B() const noexcept { return B_; }
  double bound_theta() const noexcept { return theta_; }
  long period() const noexcept { return static_cast<long>(table_.size()); }

  /// a_n for n >= 1. Oracle values are memoized.
  Complex coeff(long n) const;

  /// Largest n with a possibly nonzero coefficient, or -1 if unbounded.
  long last_index() const noexcept;

  bool all_zero() const;

 private:
  DirichletSeries() = default;

  std::string id_;
  double sigma_a_ = 1.0;
  BoundModel bound_ = BoundModel::Finite;
  double B_ = 0.0;
  double theta_ = 0.0;
  std::vector<Complex> table_;  // residues 1..q or finite coefficients 1..M
  Oracle oracle_;
  struct Memo {
    std::mutex mutex;
    std::vector<Complex> values;
  };
  std::shared_ptr<Memo> memo_;
};

/// Built-in series: "zeta", "eta", "chi4", "one".
DirichletSeries builtin(const std::string& id);
std::vector<std::string> builtin_ids();

/// Coefficient file: "# sigma_a v", "# bound finite" or "# bound periodic q",
/// then lines "n re im". Missing n are zero.
DirichletSeries load_series_file(const std::filesystem::path& path);

/// "zeta" | "eta" | "chi4" | "one" | "file:PATH".
DirichletSeries resolve(const std::string& spec);

/// Hard cap on the length of a truncated sum.
inline constexpr long kMaxTerms = 10'000'000;

/// f(sigma0 + it) with |error| <= tol. Requires sigma0 >= sigma_a + margin.
Complex evaluate(const DirichletSeries& f, double sigma0, double t, double tol, double margin = 0.05);

/// F(sigma0; f). The sum of |a_n|^2 n^{-2 sigma0} converges for
/// sigma0 > sigma_a - 1/2 when the coefficients are bounded, so the domain
/// check here is sigma0 >= sigma_a - 1/2 + margin.
double F_constant(const DirichletSeries& f, double sigma0, double tol, double margin = 0.05);

/// |f(sigma0 + it)|^2 for quadrature.
class DirichletIntegrand final : public quad::Integrand {
 public:
  DirichletIntegrand(DirichletSeries f, double sigma0, double tol, double margin, double grid_resolution);
  double operator()(double t) const override;
  double panel_width(double t) const override;
  bool nonnegative() const override { return true; }

 private:
  DirichletSeries f_;
  double sigma0_;
  double tol_;
  double margin_;
  double grid_resolution_;
};

/// (1/T) integral_0^T |f(sigma0 + it)|^2 dt through the context's cache.
double mean_value_estimate(Context& ctx, const std::string& series, double sigma0, double T, double tol);

}  // namespace dirichlet
}  // namespace zetalab
