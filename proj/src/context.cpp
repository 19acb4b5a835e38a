#include "zetalab/context.hpp"

#include <unistd.h>

#include <filesystem>

#include "zetalab/dirichlet.hpp"
#include "zetalab/error.hpp"
#include "zetalab/integrands.hpp"

namespace zetalab {

Context::Context(RunConfig config) : config_(std::move(config)) {
  config_.validate();
  if (config_.cache_dir.empty()) return;
  std::error_code ec;
  std::filesystem::create_directories(config_.cache_dir, ec);
  if (ec || ::access(config_.cache_dir.c_str(), W_OK) != 0) {
    fail(Errc::Io, "cache_dir " + config_.cache_dir.string() + " is not a writable directory");
  }
}

quad::Options Context::quad_options() const {
  quad::Options o;
  o.max_evaluations = config_.max_evaluations;
  o.workers = config_.workers;
  return o;
}

std::unique_ptr<quad::Integrand> Context::make_integrand(const quad::CacheKey& key) {
  switch (key.kind) {
    case quad::CacheKind::AbsZetaSq:
      return std::make_unique<ZetaLineIntegrand>(key.sigma, key.grid_resolution);
    case quad::CacheKind::AbsZetaHalfSq:
      return std::make_unique<ZetaLineIntegrand>(0.5, key.grid_resolution);
    case quad::CacheKind::S1Pow:
      return std::make_unique<sone::S1PowIntegrand>(zeros_,
                                                    2 * static_cast<int>(key.l), key.grid_resolution);
    case quad::CacheKind::Dirichlet: {
      // The integrand tolerance is pointwise; keep it well below the
      // integral tolerance scaled by the panel width.
      const double pointwise = std::min(1e-10, config_.tol * 1e-3);
      return std::make_unique<dirichlet::DirichletIntegrand>(dirichlet::resolve(key.series), key.sigma, pointwise,
                                                             config_.dirichlet_margin, key.grid_resolution);
    }
  }
  fail(Errc::InvalidArgument, "unknown cache kind");
}

quad::PrefixCache& Context::cache_for(const quad::CacheKey& key) {
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = caches_.find(key);
  if (it != caches_.end()) return *it->second;
  auto cache = std::make_unique<quad::PrefixCache>(key, make_integrand(key), config_.cache_dir, quad_options());
  return *caches_.emplace(key, std::move(cache)).first->second;
}

quad::PrefixCache& Context::zeta_cache(double sigma) {
  if (!(sigma >= 0.5 + config_.epsilon) && sigma != 0.5) {
    fail(Errc::Domain, "|zeta(sigma + it)|^2 integrals need sigma >= 1/2 + epsilon");
  }
  quad::CacheKey key;
  key.kind = quad::CacheKind::AbsZetaSq;
  key.sigma = sigma;
  key.grid_resolution = config_.grid_resolution;
  return cache_for(key);
}

quad::PrefixCache& Context::j_cache() {
  quad::CacheKey key;
  key.kind = quad::CacheKind::AbsZetaHalfSq;
  key.grid_resolution = config_.grid_resolution;
  return cache_for(key);
}

quad::PrefixCache& Context::s1_pow_cache(int l) {
  if (l < 1) fail(Errc::InvalidArgument, "moment order l must be at least 1");
  quad::CacheKey key;
  key.kind = quad::CacheKind::S1Pow;
  key.l = static_cast<std::uint32_t>(l);
  key.grid_resolution = config_.grid_resolution;
  return cache_for(key);
}

quad::PrefixCache& Context::dirichlet_cache(const std::string& series, double sigma0) {
  quad::CacheKey key;
  key.kind = quad::CacheKind::Dirichlet;
  key.sigma = sigma0;
  key.series = series;
  key.grid_resolution = config_.grid_resolution;
  return cache_for(key);
}

sone::SelbergConstant Context::selberg(int l) {
  if (auto known = selberg_if_known(l)) return *known;
  const sone::SelbergConstant c = sone::selberg_constant(*this, l, config_.calibration_T, config_.tol);
  std::lock_guard<std::mutex> lock(mutex_);
  return selberg_.emplace(l, c).first->second;
}

void Context::set_selberg(const sone::SelbergConstant& c) {
  if (!(c.estimate > 0.0)) fail(Errc::InvalidArgument, "Selberg constant must be positive");
  std::lock_guard<std::mutex> lock(mutex_);
  selberg_[c.l] = c;
}

std::optional<sone::SelbergConstant> Context::selberg_if_known(int l) const {
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = selberg_.find(l);
  if (it == selberg_.end()) return std::nullopt;
  return it->second;
}

double Context::zeta_2sigma(double sigma) const { return zeta::zeta_2sigma(sigma, config_.epsilon); }

}  // namespace zetalab
