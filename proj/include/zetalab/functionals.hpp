#pragma once

// Finite-tau values of the limit functionals
//
//   F(tau) = (1/tau) integral_{lower}^{upper(x, tau)} (kind integrand) dt  -> x
//
// and convergence scans over a tau schedule.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zetalab/fermat.hpp"
#include "zetalab/ladders.hpp"
#include "zetalab/s_one.hpp"

namespace zetalab {

class Context;

namespace functionals {

enum class Kind { ZetaMean, S1Mean, Combined, LadderZeta, LadderS1, Master, Dirichlet };

const char* kind_name(Kind kind) noexcept;  // "ZETA_MEAN", ...
Kind parse_kind(const std::string& name);   // accepts either case, '-' or '_'

bool uses_sigma(Kind kind) noexcept;
bool uses_selberg(Kind kind) noexcept;
bool is_ladder(Kind kind) noexcept;

struct FunctionalSpec {
  Kind kind = Kind::ZetaMean;
  double sigma = 2.0;  // sigma, or sigma0 for DIRICHLET
  int l = 1;
  int k = 1;
  std::string series = "zeta";

  // Overrides for the normalising constants; unset values are computed.
  std::optional<double> zeta_2sigma;
  std::optional<double> selberg;
  std::optional<double> F;
};

/// A spec with every constant it consumes filled in.
struct ResolvedSpec {
  FunctionalSpec spec;
  double c = 0.0;
  double zeta_2sigma = 0.0;          // 0 when unused
  sone::SelbergConstant selberg{};   // estimate 0 when unused
  double F = 0.0;                    // 0 when unused
  int s1_exponent_l = 1;             // l actually used in |S_1|^{2l}
};

/// Validates the spec and computes its constants. Throws Domain for sigma
/// below 1/2 + epsilon, LimitExceeded for k above the ladder cap.
ResolvedSpec resolve(Context& ctx, const FunctionalSpec& spec);

/// Denominator D with upper limit T = x tau / D.
double denominator(const ResolvedSpec& r);

/// For ladder kinds this is the lower end U of [U, [U]^k].
double upper_limit(const ResolvedSpec& r, double x, double tau);

/// Fixed lower limit for non-ladder kinds (1 or 0).
double lower_limit(Kind kind) noexcept;

struct Term {
  std::string name;
  double weight = 0.0;
  double integral = 0.0;  // unweighted integral of the term's function
};

struct Evaluation {
  double tau = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double value = 0.0;
  std::vector<Term> terms;
  std::vector<double> iterates;  // ladder kinds: [U]^1 .. [U]^k
};

Evaluation eval_functional(Context& ctx, const ResolvedSpec& r, double x, double tau, double tol);

/// The kind's integrand at t, term by term, and the weighted total.
std::pair<double, std::vector<Term>> integrand_at(Context& ctx, const ResolvedSpec& r, double t);

enum class Verdict { Converging, Stalled, Diverging };
const char* verdict_name(Verdict v) noexcept;

/// CONVERGING: the last three deltas strictly decrease and the last one is at
/// most stall_fraction |x| (or all three are at rounding level).
/// DIVERGING: the last three strictly increase. STALLED otherwise.
Verdict classify(const std::vector<double>& deltas, double x, double stall_fraction);

struct ConvergenceReport {
  ResolvedSpec spec;
  double x_target = 0.0;
  std::vector<double> schedule;
  std::vector<double> values;
  std::vector<double> deltas;
  std::vector<Evaluation> evaluations;
  Verdict verdict = Verdict::Stalled;
};

/// schedule strictly increasing, at least three points.
ConvergenceReport convergence_scan(Context& ctx, const ResolvedSpec& r, double x,
                                   const std::vector<double>& schedule, double tol);

struct FermatReport {
  fermat::FermatRational q;
  mpq_class exact_value;
  mpq_class exact_gap;  // |value(q) - 1|
  bool equals_one = false;
  std::optional<fermat::FermatRational> pair;  // q-bar supplying sigma
  ConvergenceReport scan;
  std::vector<double> distance_from_one;
  std::string note;
};

/// With pair set, sigma = pair_sigma(pair, epsilon) replaces spec.sigma.
FermatReport fermat_condition(Context& ctx, FunctionalSpec spec, const fermat::FermatRational& q,
                              const std::vector<double>& schedule, double tol,
                              const std::optional<fermat::FermatRational>& pair = std::nullopt);

}  // namespace functionals
}  // namespace zetalab
