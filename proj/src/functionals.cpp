#include "zetalab/functionals.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "zetalab/context.hpp"
#include "zetalab/dirichlet.hpp"
#include "zetalab/error.hpp"
#include "zetalab/integrands.hpp"

namespace zetalab::functionals {

namespace {

constexpr const char* kCriticalTerm = "|zeta(1/2+it)|^2";
constexpr const char* kLineTerm = "|zeta(sigma+it)|^2";
constexpr const char* kS1Term = "|S_1(t)|^(2l)";
constexpr const char* kSeriesTerm = "|f(sigma0+it)|^2";

double line_integral(Context& ctx, double sigma, double a, double b, double tol) {
  if (b <= a) return 0.0;
  ZetaLineIntegrand f(sigma, ctx.config().grid_resolution);
  return quad::integrate(f, a, b, tol, ctx.quad_options()).value;
}

double s1_segment(Context& ctx, int l, double a, double b, double tol) {
  if (b <= a) return 0.0;
  return std::max(0.0, ctx.s1_pow_cache(l).segment(a, b, tol));
}

}  // namespace

const char* kind_name(Kind kind) noexcept {
  switch (kind) {
    case Kind::ZetaMean: return "ZETA_MEAN";
    case Kind::S1Mean: return "S1_MEAN";
    case Kind::Combined: return "COMBINED";
    case Kind::LadderZeta: return "LADDER_ZETA";
    case Kind::LadderS1: return "LADDER_S1";
    case Kind::Master: return "MASTER";
    case Kind::Dirichlet: return "DIRICHLET";
  }
  return "UNKNOWN";
}

Kind parse_kind(const std::string& name) {
  std::string norm;
  for (char ch : name) norm += ch == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  for (Kind k : {Kind::ZetaMean, Kind::S1Mean, Kind::Combined, Kind::LadderZeta, Kind::LadderS1, Kind::Master,
                 Kind::Dirichlet}) {
    if (norm == kind_name(k)) return k;
  }
  fail(Errc::InvalidArgument, "unknown functional kind '" + name + "'");
}

bool uses_sigma(Kind kind) noexcept {
  return kind == Kind::ZetaMean || kind == Kind::Combined || kind == Kind::LadderZeta || kind == Kind::Master;
}

bool uses_selberg(Kind kind) noexcept {
  return kind == Kind::S1Mean || kind == Kind::Combined || kind == Kind::LadderS1 || kind == Kind::Master;
}

bool is_ladder(Kind kind) noexcept {
  return kind == Kind::LadderZeta || kind == Kind::LadderS1 || kind == Kind::Master;
}

double lower_limit(Kind kind) noexcept {
  return kind == Kind::ZetaMean || kind == Kind::Combined ? 1.0 : 0.0;
}

ResolvedSpec resolve(Context& ctx, const FunctionalSpec& spec) {
  const RunConfig& cfg = ctx.config();
  ResolvedSpec r;
  r.spec = spec;
  r.c = cfg.euler_c;
  if (spec.l < 1) fail(Errc::InvalidArgument, "l must be at least 1");
  if (is_ladder(spec.kind) && (spec.k < 1 || spec.k > cfg.ladder_k_cap)) {
    fail(Errc::LimitExceeded, "k must lie in [1, " + std::to_string(cfg.ladder_k_cap) + "]");
  }
  if (uses_sigma(spec.kind)) {
    if (!(spec.sigma >= 0.5 + cfg.epsilon)) {
      std::ostringstream os;
      os << kind_name(spec.kind) << " needs sigma >= 1/2 + epsilon = " << 0.5 + cfg.epsilon << ", got "
         << spec.sigma;
      fail(Errc::Domain, os.str());
    }
    r.zeta_2sigma = spec.zeta_2sigma ? *spec.zeta_2sigma : ctx.zeta_2sigma(spec.sigma);
    if (!(r.zeta_2sigma > 0.0)) fail(Errc::InvalidArgument, "zeta(2 sigma) override must be positive");
  }
  if (uses_selberg(spec.kind)) {
    if (spec.selberg) {
      if (!(*spec.selberg > 0.0)) fail(Errc::InvalidArgument, "Selberg constant override must be positive");
      r.selberg.l = spec.l;
      r.selberg.estimate = *spec.selberg;
    } else {
      try {
        r.selberg = ctx.selberg(spec.l);
      } catch (const Error& e) {
        fail(Errc::ConstantUnavailable, std::string("Selberg constant c(") + std::to_string(spec.l) +
                                            ") could not be calibrated: " + e.what());
      }
    }
    const bool literal = cfg.literal_s1_exponent && (spec.kind == Kind::Combined || spec.kind == Kind::Master);
    r.s1_exponent_l = literal ? 1 : spec.l;
  }
  if (spec.kind == Kind::Dirichlet) {
    const auto f = dirichlet::resolve(spec.series);
    if (f.all_zero()) fail(Errc::Domain, "series '" + spec.series + "' has no nonzero coefficient");
    if (f.bound() != dirichlet::BoundModel::Finite && !(spec.sigma >= f.sigma_a() + cfg.dirichlet_margin)) {
      std::ostringstream os;
      os << "sigma0 = " << spec.sigma << " is within the margin of sigma_a = " << f.sigma_a();
      fail(Errc::Domain, os.str());
    }
    r.F = spec.F ? *spec.F : dirichlet::F_constant(f, spec.sigma, 1e-14, cfg.dirichlet_margin);
    if (!(r.F > 0.0)) fail(Errc::InvalidArgument, "F override must be positive");
  }
  return r;
}

double denominator(const ResolvedSpec& r) {
  const double k = r.spec.k;
  const double omc = 1.0 - r.c;
  const double cbar = r.selberg.estimate;
  switch (r.spec.kind) {
    case Kind::ZetaMean: return r.zeta_2sigma;
    case Kind::S1Mean: return cbar;
    case Kind::Combined: return 2.0 * cbar * r.zeta_2sigma;
    case Kind::LadderZeta: return k * omc * r.zeta_2sigma;
    case Kind::LadderS1: return k * omc * cbar;
    case Kind::Master: return 2.0 * k * omc * cbar * r.zeta_2sigma;
    case Kind::Dirichlet: return r.F;
  }
  return 1.0;
}

double upper_limit(const ResolvedSpec& r, double x, double tau) {
  if (!(x > 0.0) || !std::isfinite(x)) fail(Errc::InvalidArgument, "x must be positive");
  if (!(tau > 0.0) || !std::isfinite(tau)) fail(Errc::InvalidArgument, "tau must be positive");
  return x * tau / denominator(r);
}

Evaluation eval_functional(Context& ctx, const ResolvedSpec& r, double x, double tau, double tol) {
  if (!(tol > 0.0)) fail(Errc::InvalidArgument, "tolerance must be positive");
  const Kind kind = r.spec.kind;
  Evaluation ev;
  ev.tau = tau;
  const double omc = 1.0 - r.c;
  const double cbar = r.selberg.estimate;
  const double sigma = r.spec.sigma;

  if (!is_ladder(kind)) {
    ev.lower = lower_limit(kind);
    ev.upper = upper_limit(r, x, tau);
    if (ev.upper <= ev.lower) return ev;
    const double T = ev.upper;
    switch (kind) {
      case Kind::ZetaMean:
        ev.terms.push_back({kLineTerm, 1.0, ctx.zeta_cache(sigma).prefix(T, tol)});
        break;
      case Kind::S1Mean:
        ev.terms.push_back({kS1Term, 1.0, s1_segment(ctx, r.s1_exponent_l, 0.0, T, tol)});
        break;
      case Kind::Combined:
        ev.terms.push_back({kLineTerm, cbar, ctx.zeta_cache(sigma).prefix(T, tol)});
        ev.terms.push_back({kS1Term, r.zeta_2sigma, s1_segment(ctx, r.s1_exponent_l, 1.0, T, tol)});
        break;
      case Kind::Dirichlet:
        ev.terms.push_back({kSeriesTerm, 1.0, ctx.dirichlet_cache(r.spec.series, sigma).prefix(T, tol)});
        break;
      default: break;
    }
  } else {
    ev.lower = upper_limit(r, x, tau);
    if (ev.lower < 100.0) {
      std::ostringstream os;
      os << "ladder start U = " << ev.lower << " is below 100; increase tau";
      fail(Errc::Domain, os.str());
    }
    const auto seq = ladders::reverse_iterates(ctx, ev.lower, r.spec.k, ctx.config().tol);
    ev.iterates = seq.iterates;
    ev.upper = seq.iterates.back();
    const double U = ev.lower, V = ev.upper;
    double jseg = 0.0;
    for (double s : seq.segment_integrals) jseg += s;
    switch (kind) {
      case Kind::LadderZeta:
        ev.terms.push_back({kCriticalTerm, r.zeta_2sigma, jseg});
        ev.terms.push_back({kLineTerm, omc, line_integral(ctx, sigma, U, V, tol)});
        break;
      case Kind::LadderS1:
        ev.terms.push_back({kCriticalTerm, cbar, jseg});
        ev.terms.push_back({kS1Term, omc, s1_segment(ctx, r.s1_exponent_l, U, V, tol)});
        break;
      case Kind::Master:
        ev.terms.push_back({kCriticalTerm, 2.0 * cbar * r.zeta_2sigma, jseg});
        ev.terms.push_back({kLineTerm, omc * cbar, line_integral(ctx, sigma, U, V, tol)});
        ev.terms.push_back({kS1Term, omc * r.zeta_2sigma, s1_segment(ctx, r.s1_exponent_l, U, V, tol)});
        break;
      default: break;
    }
  }
  double total = 0.0;
  for (const Term& t : ev.terms) total += t.weight * t.integral;
  ev.value = total / tau;
  return ev;
}

std::pair<double, std::vector<Term>> integrand_at(Context& ctx, const ResolvedSpec& r, double t) {
  const double omc = 1.0 - r.c;
  const double cbar = r.selberg.estimate;
  const double sigma = r.spec.sigma;
  auto line = [&](double s) {
    ZetaLineIntegrand f(s, ctx.config().grid_resolution);
    f.prepare(0.0, t);
    return f(t);
  };
  auto s1pow = [&] { return std::pow(std::fabs(ctx.zeros().S1(t)), 2 * r.s1_exponent_l); };
  std::vector<Term> terms;
  switch (r.spec.kind) {
    case Kind::ZetaMean: terms.push_back({kLineTerm, 1.0, line(sigma)}); break;
    case Kind::S1Mean: terms.push_back({kS1Term, 1.0, s1pow()}); break;
    case Kind::Combined:
      terms.push_back({kLineTerm, cbar, line(sigma)});
      terms.push_back({kS1Term, r.zeta_2sigma, s1pow()});
      break;
    case Kind::LadderZeta:
      terms.push_back({kCriticalTerm, r.zeta_2sigma, line(0.5)});
      terms.push_back({kLineTerm, omc, line(sigma)});
      break;
    case Kind::LadderS1:
      terms.push_back({kCriticalTerm, cbar, line(0.5)});
      terms.push_back({kS1Term, omc, s1pow()});
      break;
    case Kind::Master:
      terms.push_back({kCriticalTerm, 2.0 * cbar * r.zeta_2sigma, line(0.5)});
      terms.push_back({kLineTerm, omc * cbar, line(sigma)});
      terms.push_back({kS1Term, omc * r.zeta_2sigma, s1pow()});
      break;
    case Kind::Dirichlet: {
      const auto f = dirichlet::resolve(r.spec.series);
      terms.push_back({kSeriesTerm, 1.0, std::norm(dirichlet::evaluate(f, sigma, t, 1e-12,
                                                                        ctx.config().dirichlet_margin))});
      break;
    }
  }
  double total = 0.0;
  for (const Term& term : terms) total += term.weight * term.integral;
  return {total, terms};
}

const char* verdict_name(Verdict v) noexcept {
  switch (v) {
    case Verdict::Converging: return "CONVERGING";
    case Verdict::Stalled: return "STALLED";
    case Verdict::Diverging: return "DIVERGING";
  }
  return "UNKNOWN";
}

Verdict classify(const std::vector<double>& deltas, double x, double stall_fraction) {
  if (deltas.size() < 3) fail(Errc::InvalidArgument, "verdict needs at least three deltas");
  const double d0 = deltas[deltas.size() - 3];
  const double d1 = deltas[deltas.size() - 2];
  const double d2 = deltas[deltas.size() - 1];
  const double rounding = 1e-12 * std::max(1.0, std::fabs(x));
  if (d0 <= rounding && d1 <= rounding && d2 <= rounding) return Verdict::Converging;
  if (d0 > d1 && d1 > d2 && d2 <= stall_fraction * std::fabs(x)) return Verdict::Converging;
  if (d0 < d1 && d1 < d2) return Verdict::Diverging;
  return Verdict::Stalled;
}

ConvergenceReport convergence_scan(Context& ctx, const ResolvedSpec& r, double x,
                                   const std::vector<double>& schedule, double tol) {
  if (schedule.size() < 3) fail(Errc::InvalidArgument, "schedule needs at least three points");
  for (std::size_t i = 1; i < schedule.size(); ++i) {
    if (!(schedule[i] > schedule[i - 1])) fail(Errc::InvalidArgument, "schedule must be strictly increasing");
  }
  ConvergenceReport rep;
  rep.spec = r;
  rep.x_target = x;
  rep.schedule = schedule;
  for (double tau : schedule) {
    Evaluation ev = eval_functional(ctx, r, x, tau, tol);
    rep.values.push_back(ev.value);
    rep.deltas.push_back(std::fabs(ev.value - x));
    rep.evaluations.push_back(std::move(ev));
  }
  rep.verdict = classify(rep.deltas, x, ctx.config().stall_fraction);
  return rep;
}

FermatReport fermat_condition(Context& ctx, FunctionalSpec spec, const fermat::FermatRational& q,
                              const std::vector<double>& schedule, double tol,
                              const std::optional<fermat::FermatRational>& pair) {
  FermatReport rep;
  rep.q = q;
  rep.exact_value = fermat::value(q);
  rep.exact_gap = abs(rep.exact_value - 1);
  rep.equals_one = fermat::equals_one(q);
  if (pair) {
    spec.sigma = fermat::pair_sigma(*pair, ctx.config().epsilon);
    rep.pair = pair;
  }
  const ResolvedSpec r = resolve(ctx, spec);
  rep.scan = convergence_scan(ctx, r, rep.exact_value.get_d(), schedule, tol);
  for (double v : rep.scan.values) rep.distance_from_one.push_back(std::fabs(v - 1.0));
  rep.note =
      "The decision value != 1 is exact: it compares x^n + y^n with z^n on integers. The functional values are "
      "finite-tau numerics that approach the Fermat rational; they are evidence of convergence, not a proof.";
  return rep;
}

}  // namespace zetalab::functionals
