#include "zetalab/dirichlet.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "summation.hpp"
#include "zetalab/context.hpp"
#include "zetalab/error.hpp"

namespace zetalab::dirichlet {

namespace {

void check_line(const DirichletSeries& f, double sigma0, double floor, const char* what) {
  if (!std::isfinite(sigma0)) fail(Errc::InvalidArgument, "non-finite sigma0");
  if (f.bound() == BoundModel::Finite) return;
  if (!(sigma0 >= floor)) {
    std::ostringstream os;
    os << what << " for series '" << f.id() << "' needs sigma0 >= " << floor << ", got " << sigma0;
    fail(Errc::Domain, os.str());
  }
}

// Smallest N with B N^{e} / (-e) <= tol, where e = exponent < 0.
long tail_cut(double B, double exponent, double tol) {
  if (!(exponent < 0.0)) fail(Errc::TailBoundUnavailable, "coefficient bound gives a divergent tail");
  if (B == 0.0) return 1;
  const double n = std::pow(tol * (-exponent) / B, 1.0 / exponent);
  if (!(n < static_cast<double>(kMaxTerms))) {
    std::ostringstream os;
    os << "tail bound needs " << n << " terms, cap is " << kMaxTerms;
    fail(Errc::TailBoundUnavailable, os.str());
  }
  return std::max(1L, static_cast<long>(std::ceil(n)));
}

zeta::EvalSettings hurwitz_settings(double tol) {
  zeta::EvalSettings s;
  s.target_abs_error = std::max(tol, 1e-15);
  return s;
}

}  // namespace

const char* bound_model_name(BoundModel model) noexcept {
  switch (model) {
    case BoundModel::Constant: return "constant";
    case BoundModel::Power: return "power";
    case BoundModel::Periodic: return "periodic";
    case BoundModel::Finite: return "finite";
  }
  return "unknown";
}

DirichletSeries DirichletSeries::periodic(std::string id, std::vector<Complex> residues, double sigma_a) {
  if (residues.empty()) fail(Errc::InvalidArgument, "periodic series needs at least one residue");
  DirichletSeries f;
  f.id_ = std::move(id);
  f.bound_ = BoundModel::Periodic;
  f.sigma_a_ = sigma_a;
  for (const Complex& a : residues) f.B_ = std::max(f.B_, std::abs(a));
  f.table_ = std::move(residues);
  return f;
}

DirichletSeries DirichletSeries::finite(std::string id, std::vector<Complex> coefficients) {
  DirichletSeries f;
  f.id_ = std::move(id);
  f.bound_ = BoundModel::Finite;
  f.sigma_a_ = -std::numeric_limits<double>::infinity();
  for (const Complex& a : coefficients) f.B_ = std::max(f.B_, std::abs(a));
  f.table_ = std::move(coefficients);
  return f;
}

DirichletSeries DirichletSeries::bounded(std::string id, Oracle oracle, double sigma_a, double B, double theta) {
  if (!oracle) fail(Errc::InvalidArgument, "bounded series needs a coefficient oracle");
  if (!(B >= 0.0)) fail(Errc::InvalidArgument, "coefficient bound must be nonnegative");
  DirichletSeries f;
  f.id_ = std::move(id);
  f.bound_ = theta == 0.0 ? BoundModel::Constant : BoundModel::Power;
  f.sigma_a_ = sigma_a;
  f.B_ = B;
  f.theta_ = theta;
  f.oracle_ = std::move(oracle);
  f.memo_ = std::make_shared<Memo>();
  return f;
}

Complex DirichletSeries::coeff(long n) const {
  if (n < 1) fail(Errc::InvalidArgument, "coefficient index must be positive");
  switch (bound_) {
    case BoundModel::Periodic: return table_[static_cast<std::size_t>((n - 1) % period())];
    case BoundModel::Finite:
      return n <= static_cast<long>(table_.size()) ? table_[static_cast<std::size_t>(n - 1)] : Complex(0.0);
    default: break;
  }
  std::lock_guard<std::mutex> lock(memo_->mutex);
  auto& v = memo_->values;
  while (static_cast<long>(v.size()) < n) v.push_back(oracle_(static_cast<long>(v.size()) + 1));
  return v[static_cast<std::size_t>(n - 1)];
}

long DirichletSeries::last_index() const noexcept {
  return bound_ == BoundModel::Finite ? static_cast<long>(table_.size()) : -1;
}

bool DirichletSeries::all_zero() const {
  if (bound_ == BoundModel::Periodic || bound_ == BoundModel::Finite) {
    for (const Complex& a : table_) {
      if (a != 0.0) return false;
    }
    return true;
  }
  return B_ == 0.0;
}

DirichletSeries builtin(const std::string& id) {
  if (id == "zeta") return DirichletSeries::periodic("zeta", {1.0}, 1.0);
  if (id == "eta") return DirichletSeries::periodic("eta", {1.0, -1.0}, 1.0);
  if (id == "chi4") return DirichletSeries::periodic("chi4", {1.0, 0.0, -1.0, 0.0}, 1.0);
  if (id == "one") return DirichletSeries::finite("one", {1.0});
  fail(Errc::InvalidArgument, "unknown series '" + id + "'");
}

std::vector<std::string> builtin_ids() { return {"zeta", "eta", "chi4", "one"}; }

DirichletSeries load_series_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::Io, "cannot open series file " + path.string());
  double sigma_a = std::numeric_limits<double>::quiet_NaN();
  std::string bound = "finite";
  long q = 0;
  std::map<long, Complex> coeffs;
  std::string line;
  int line_no = 0;
  auto bad = [&](const std::string& what) {
    fail(Errc::InvalidArgument, path.string() + ":" + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (first[0] == '#') {
      std::string word = first.size() > 1 ? first.substr(1) : "";
      if (word.empty()) ls >> word;
      if (word == "sigma_a") {
        if (!(ls >> sigma_a)) bad("sigma_a needs a value");
      } else if (word == "bound") {
        if (!(ls >> bound)) bad("bound needs a model");
        if (bound == "periodic" && !(ls >> q && q >= 1)) bad("periodic bound needs a period q >= 1");
        if (bound != "periodic" && bound != "finite") bad("bound model must be finite or periodic");
      }
      continue;
    }
    long n = 0;
    double re = 0.0, im = 0.0;
    std::istringstream row(line);
    if (!(row >> n >> re >> im) || n < 1) bad("expected 'n re im' with n >= 1");
    if (!std::isfinite(re) || !std::isfinite(im)) bad("non-finite coefficient");
    if (coeffs.count(n)) bad("duplicate index " + std::to_string(n));
    coeffs[n] = Complex(re, im);
  }
  const std::string id = "file:" + path.filename().string();
  if (bound == "periodic") {
    if (!std::isfinite(sigma_a)) sigma_a = 1.0;
    std::vector<Complex> residues(static_cast<std::size_t>(q), 0.0);
    for (const auto& [n, a] : coeffs) {
      if (n > q) fail(Errc::InvalidArgument, path.string() + ": index above the declared period");
      residues[static_cast<std::size_t>(n - 1)] = a;
    }
    return DirichletSeries::periodic(id, std::move(residues), sigma_a);
  }
  if (coeffs.empty()) fail(Errc::InvalidArgument, path.string() + ": no coefficients");
  if (coeffs.rbegin()->first > kMaxTerms) fail(Errc::LimitExceeded, path.string() + ": index above cap");
  std::vector<Complex> table(static_cast<std::size_t>(coeffs.rbegin()->first), 0.0);
  for (const auto& [n, a] : coeffs) table[static_cast<std::size_t>(n - 1)] = a;
  return DirichletSeries::finite(id, std::move(table));
}

DirichletSeries resolve(const std::string& spec) {
  if (spec.rfind("file:", 0) == 0) return load_series_file(spec.substr(5));
  return builtin(spec);
}

Complex evaluate(const DirichletSeries& f, double sigma0, double t, double tol, double margin) {
  if (!std::isfinite(t)) fail(Errc::InvalidArgument, "non-finite t");
  if (!(tol > 0.0)) fail(Errc::InvalidArgument, "tolerance must be positive");
  check_line(f, sigma0, f.sigma_a() + margin, "evaluation");
  const Complex s(sigma0, t);
  switch (f.bound()) {
    case BoundModel::Finite: {
      detail::ComplexNeumaier acc;
      for (long n = 1; n <= f.last_index(); ++n) {
        const Complex a = f.coeff(n);
        if (a != 0.0) acc.add(a * std::exp(-s * std::log(static_cast<double>(n))));
      }
      return acc.value();
    }
    case BoundModel::Periodic: {
      const long q = f.period();
      double weight = 0.0;
      for (long r = 1; r <= q; ++r) weight += std::abs(f.coeff(r));
      const double qs = std::pow(static_cast<double>(q), -sigma0);
      const auto settings = hurwitz_settings(tol / std::max(1.0, weight * qs));
      detail::ComplexNeumaier acc;
      for (long r = 1; r <= q; ++r) {
        const Complex a = f.coeff(r);
        if (a == 0.0) continue;
        acc.add(a * zeta::hurwitz_zeta(s, static_cast<double>(r) / static_cast<double>(q), settings).value);
      }
      return std::exp(-s * std::log(static_cast<double>(q))) * acc.value();
    }
    default: {
      const double e = f.bound_theta() + 1.0 - sigma0;
      const long cut = tail_cut(f.bound_B(), e, tol);
      detail::ComplexNeumaier acc;
      for (long n = 1; n <= cut; ++n) {
        const Complex a = f.coeff(n);
        if (a != 0.0) acc.add(a * std::exp(-s * std::log(static_cast<double>(n))));
      }
      return acc.value();
    }
  }
}

double F_constant(const DirichletSeries& f, double sigma0, double tol, double margin) {
  if (!(tol > 0.0)) fail(Errc::InvalidArgument, "tolerance must be positive");
  check_line(f, sigma0, f.sigma_a() - 0.5 + margin, "F(sigma0; f)");
  switch (f.bound()) {
    case BoundModel::Finite: {
      detail::Neumaier<double> acc;
      for (long n = 1; n <= f.last_index(); ++n) {
        acc.add(std::norm(f.coeff(n)) * std::pow(static_cast<double>(n), -2.0 * sigma0));
      }
      return acc.value();
    }
    case BoundModel::Periodic: {
      const long q = f.period();
      const auto settings = hurwitz_settings(std::min(tol, 1e-15));
      detail::Neumaier<double> acc;
      for (long r = 1; r <= q; ++r) {
        const double w = std::norm(f.coeff(r));
        if (w == 0.0) continue;
        acc.add(w * zeta::hurwitz_zeta(Complex(2.0 * sigma0, 0.0), static_cast<double>(r) / q, settings)
                        .value.real());
      }
      return std::pow(static_cast<double>(q), -2.0 * sigma0) * acc.value();
    }
    default: {
      const double e = 2.0 * f.bound_theta() + 1.0 - 2.0 * sigma0;
      const long cut = tail_cut(f.bound_B() * f.bound_B(), e, tol);
      detail::Neumaier<double> acc;
      for (long n = 1; n <= cut; ++n) {
        acc.add(std::norm(f.coeff(n)) * std::pow(static_cast<double>(n), -2.0 * sigma0));
      }
      return acc.value();
    }
  }
}

DirichletIntegrand::DirichletIntegrand(DirichletSeries f, double sigma0, double tol, double margin,
                                       double grid_resolution)
    : f_(std::move(f)), sigma0_(sigma0), tol_(tol), margin_(margin), grid_resolution_(grid_resolution) {
  check_line(f_, sigma0, f_.sigma_a() + margin, "mean value");
}

double DirichletIntegrand::operator()(double t) const {
  return std::norm(evaluate(f_, sigma0_, t, tol_, margin_));
}

double DirichletIntegrand::panel_width(double t) const {
  const double weight = sigma0_ >= 1.0 ? 0.25 : (sigma0_ > 0.5 ? 0.5 : 1.0);
  return 2.0 * zeta::mean_zero_gap(t) / (grid_resolution_ * weight);
}

double mean_value_estimate(Context& ctx, const std::string& series, double sigma0, double T, double tol) {
  if (!(T >= 100.0)) fail(Errc::Domain, "mean value estimate needs T >= 100");
  auto& cache = ctx.dirichlet_cache(series, sigma0);
  return cache.prefix(T, tol) / T;
}

}  // namespace zetalab::dirichlet
