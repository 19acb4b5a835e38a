#include "zetalab/quadrature.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "summation.hpp"
#include "zetalab/error.hpp"

namespace zetalab::quad {

std::vector<Node> gauss_legendre(int n) {
  std::vector<Node> rule(n);
  const long double pi = 3.141592653589793238462643383279502884L;
  for (int i = 0; i < n; ++i) {
    long double x = std::cos(pi * (i + 0.75L) / (n + 0.5L));
    long double dp = 0;
    for (int it = 0; it < 100; ++it) {
      long double p0 = 1.0L, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const long double p2 = ((2.0L * k - 1.0L) * x * p1 - (k - 1.0L) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0L);
      const long double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-19L) break;
    }
    rule[i] = {static_cast<double>(x), static_cast<double>(2.0L / ((1.0L - x * x) * dp * dp))};
  }
  return rule;
}

namespace {

const std::vector<Node>& gl15() {
  static const std::vector<Node> rule = gauss_legendre(15);
  return rule;
}

struct PanelResult {
  double value = 0.0;
  double err = 0.0;
  long long evals = 0;
};

class PanelIntegrator {
 public:
  PanelIntegrator(const Integrand& f, int max_depth) : f_(f), max_depth_(max_depth) {}

  PanelResult run(double a, double b, double tol) {
    PanelResult r;
    const double whole = rule(a, b, r.evals);
    refine(a, b, whole, tol, 0, r);
    return r;
  }

 private:
  double rule(double a, double b, long long& evals) const {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    detail::Neumaier<double> acc;
    for (const Node& node : gl15()) acc.add(node.w * f_(mid + half * node.x));
    evals += static_cast<long long>(gl15().size());
    return half * acc.value();
  }

  void refine(double a, double b, double whole, double tol, int depth, PanelResult& out) const {
    const double m = 0.5 * (a + b);
    const double left = rule(a, m, out.evals);
    const double right = rule(m, b, out.evals);
    const double refined = left + right;
    const double err = std::fabs(refined - whole);
    if (err <= std::max(tol, 1e-14 * std::fabs(refined)) || depth >= max_depth_ || m <= a || m >= b) {
      out.value += refined;
      out.err += err;
      return;
    }
    refine(a, m, left, 0.5 * tol, depth + 1, out);
    refine(m, b, right, 0.5 * tol, depth + 1, out);
  }

  const Integrand& f_;
  int max_depth_;
};

}  // namespace

std::vector<std::pair<double, double>> partition(const Integrand& f, double a, double b) {
  std::vector<double> cuts{a};
  for (double x : f.breakpoints(a, b)) {
    if (x > a && x < b) cuts.push_back(x);
  }
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<std::pair<double, double>> panels;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i];
    const double hi = cuts[i + 1];
    double x = lo;
    while (x < hi) {
      double w = f.panel_width(x);
      if (!(w > 0.0)) fail(Errc::InvalidArgument, "integrand reported a non-positive panel width");
      double next = (w >= hi - x || hi - (x + w) < 0.25 * w) ? hi : x + w;
      panels.emplace_back(x, next);
      x = next;
    }
  }
  return panels;
}

QuadratureResult integrate(Integrand& f, double a, double b, double tol, const Options& options) {
  if (!std::isfinite(a) || !std::isfinite(b)) fail(Errc::InvalidArgument, "non-finite integration limit");
  if (a > b) fail(Errc::InvalidArgument, "integration limits out of order");
  if (!(tol > 0.0)) fail(Errc::InvalidArgument, "tolerance must be positive");
  QuadratureResult result;
  if (a == b) return result;

  f.prepare(a, b);
  const auto panels = partition(f, a, b);
  const long long floor_evals = static_cast<long long>(panels.size()) * 45;
  if (floor_evals > options.max_evaluations) {
    std::ostringstream os;
    os << panels.size() << " panels need at least " << floor_evals << " evaluations, cap is "
       << options.max_evaluations;
    fail(Errc::BudgetExceeded, os.str());
  }

  const double length = b - a;
  std::vector<PanelResult> out(panels.size());
  std::atomic<std::size_t> next{0};
  std::atomic<long long> spent{0};
  std::atomic<bool> stop{false};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  auto work = [&] {
    PanelIntegrator integrator(f, options.max_depth);
    while (!stop.load(std::memory_order_relaxed)) {
      const std::size_t i = next.fetch_add(1);
      if (i >= panels.size()) break;
      try {
        const auto [lo, hi] = panels[i];
        out[i] = integrator.run(lo, hi, tol * (hi - lo) / length);
        if (spent.fetch_add(out[i].evals) + out[i].evals > options.max_evaluations) {
          std::ostringstream os;
          os << "evaluation cap " << options.max_evaluations << " reached on [" << a << ", " << b << "]";
          fail(Errc::BudgetExceeded, os.str());
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        stop = true;
      }
    }
  };

  const int workers = std::max(1, options.workers);
  std::vector<std::thread> pool;
  for (int w = 1; w < workers && static_cast<std::size_t>(w) < panels.size(); ++w) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);

  detail::Neumaier<double> value;
  detail::Neumaier<double> err;
  for (const PanelResult& r : out) {
    value.add(r.value);
    err.add(r.err);
    result.evaluations += r.evals;
  }
  result.value = value.value();
  result.err_estimate = err.value();
  return result;
}

}  // namespace zetalab::quad
