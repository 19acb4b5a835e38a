#include "zetalab/config.hpp"

#include <cmath>
#include <fstream>

#include "zetalab/error.hpp"

namespace zetalab {

void RunConfig::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) fail(Errc::InvalidArgument, std::string(name) + " must be positive");
  };
  positive(tol, "tol");
  positive(epsilon, "epsilon");
  positive(calibration_T, "calibration_T");
  positive(grid_resolution, "grid_resolution");
  positive(stall_fraction, "stall_fraction");
  if (!(dirichlet_margin >= 0.0)) fail(Errc::InvalidArgument, "dirichlet_margin must be nonnegative");
  if (!(euler_c > 0.0 && euler_c < 1.0)) fail(Errc::InvalidArgument, "euler_c must lie in (0, 1)");
  if (!(window_exponent > 0.5 && window_exponent <= 1.0))
    fail(Errc::InvalidArgument, "window_exponent must lie in (1/2, 1]");
  if (max_evaluations < 1) fail(Errc::InvalidArgument, "max_evaluations must be positive");
  if (workers < 1 || workers > 256) fail(Errc::InvalidArgument, "workers must lie in [1, 256]");
  if (ladder_k_cap < 1 || iterate_cap < 1) fail(Errc::InvalidArgument, "ladder caps must be positive");
  if (format != "json" && format != "csv") fail(Errc::InvalidArgument, "format must be json or csv");
}

nlohmann::json RunConfig::to_json() const {
  return {
      {"cache_dir", cache_dir.string()},
      {"tol", tol},
      {"epsilon", epsilon},
      {"euler_c", euler_c},
      {"calibration_T", calibration_T},
      {"max_evaluations", max_evaluations},
      {"workers", workers},
      {"grid_resolution", grid_resolution},
      {"window_exponent", window_exponent},
      {"dirichlet_margin", dirichlet_margin},
      {"ladder_k_cap", ladder_k_cap},
      {"iterate_cap", iterate_cap},
      {"literal_s1_exponent", literal_s1_exponent},
      {"stall_fraction", stall_fraction},
      {"format", format},
  };
}

RunConfig RunConfig::from_json(const nlohmann::json& j) {
  if (!j.is_object()) fail(Errc::InvalidArgument, "config must be a JSON object");
  RunConfig c;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "cache_dir") c.cache_dir = value.get<std::string>();
      else if (key == "tol") c.tol = value.get<double>();
      else if (key == "epsilon") c.epsilon = value.get<double>();
      else if (key == "euler_c") c.euler_c = value.get<double>();
      else if (key == "calibration_T") c.calibration_T = value.get<double>();
      else if (key == "max_evaluations") c.max_evaluations = value.get<long long>();
      else if (key == "workers") c.workers = value.get<int>();
      else if (key == "grid_resolution") c.grid_resolution = value.get<double>();
      else if (key == "window_exponent") c.window_exponent = value.get<double>();
      else if (key == "dirichlet_margin") c.dirichlet_margin = value.get<double>();
      else if (key == "ladder_k_cap") c.ladder_k_cap = value.get<int>();
      else if (key == "iterate_cap") c.iterate_cap = value.get<int>();
      else if (key == "literal_s1_exponent") c.literal_s1_exponent = value.get<bool>();
      else if (key == "stall_fraction") c.stall_fraction = value.get<double>();
      else if (key == "format") c.format = value.get<std::string>();
      else fail(Errc::InvalidArgument, "unknown config key '" + key + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::InvalidArgument, std::string("config: ") + e.what());
  }
  c.validate();
  return c;
}

RunConfig RunConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::Io, "cannot open config " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::InvalidArgument, path.string() + ": " + e.what());
  }
  return from_json(j);
}

}  // namespace zetalab
