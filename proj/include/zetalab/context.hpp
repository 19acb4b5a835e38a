#pragma once

// Shared state for one run: the configuration, the prefix caches, the zero
// set on the critical line and the calibrated Selberg constants.

#include <map>
#include <memory>
#include <mutex>
#include <optional>

#include "zetalab/config.hpp"
#include "zetalab/prefix_cache.hpp"
#include "zetalab/s_one.hpp"

namespace zetalab {

class Context {
 public:
  explicit Context(RunConfig config = {});

  const RunConfig& config() const noexcept { return config_; }
  quad::Options quad_options() const;

  /// |zeta(sigma + it)|^2 from 1.
  quad::PrefixCache& zeta_cache(double sigma);
  /// J(T): |zeta(1/2 + it)|^2 from 0.
  quad::PrefixCache& j_cache();
  /// |S_1(t)|^{2l} from 0.
  quad::PrefixCache& s1_pow_cache(int l);
  /// |f(sigma0 + it)|^2 from 0.
  quad::PrefixCache& dirichlet_cache(const std::string& series, double sigma0);

  /// Cache for a key read back from disk (cache verify).
  quad::PrefixCache& cache_for(const quad::CacheKey& key);

  sone::ZeroSet& zeros() noexcept { return zeros_; }

  /// c-bar(l) estimated at calibration_T, computed on first use.
  sone::SelbergConstant selberg(int l);
  void set_selberg(const sone::SelbergConstant& c);
  std::optional<sone::SelbergConstant> selberg_if_known(int l) const;

  /// zeta(2 sigma) with the configured epsilon.
  double zeta_2sigma(double sigma) const;

 /// A fresh integrand for the key, independent of any cache.
  std::unique_ptr<quad::Integrand> make_integrand(const quad::CacheKey& key);

 private:

  RunConfig config_;
  sone::ZeroSet zeros_;
  mutable std::mutex mutex_;
  std::map<quad::CacheKey, std::unique_ptr<quad::PrefixCache>> caches_;
  std::map<int, sone::SelbergConstant> selberg_;
};

}  // namespace zetalab
