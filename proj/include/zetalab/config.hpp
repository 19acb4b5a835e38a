#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

namespace zetalab {

/// Euler's constant, the value used for c in (1 - c).
inline constexpr double kEulerGamma = 0.5772156649015329;

struct RunConfig {
  std::filesystem::path cache_dir;  // empty: caches live in memory only
  double tol = 1e-6;
  double epsilon = 0.05;
  double euler_c = kEulerGamma;
  double calibration_T = 4000.0;
  long long max_evaluations = 100'000'000;
  int workers = 1;
  double grid_resolution = 8.0;
  double window_exponent = 0.6;
  double dirichlet_margin = 0.05;
  int ladder_k_cap = 5;
  int iterate_cap = 20;
  bool literal_s1_exponent = false;
  double stall_fraction = 0.25;
  std::string format = "json";

  /// Throws InvalidArgument on a bad field.
  void validate() const;

  nlohmann::json to_json() const;

  /// Unknown keys are rejected; missing keys keep their defaults.
  static RunConfig from_json(const nlohmann::json& j);
  static RunConfig load(const std::filesystem::path& path);
};

}  // namespace zetalab
