// zetalab-cli: batch front end over the zetalab C API.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "zetalab/zetalab.h"

using nlohmann::json;

namespace {

enum Exit { kOk = 0, kFailure = 1, kUsage = 2, kDomain = 3, kBudget = 4, kCache = 5 };

int exit_code(zl_status s) {
  switch (s) {
    case ZL_OK:
      return kOk;
    case ZL_INVALID_ARGUMENT:
      return kUsage;
    case ZL_DOMAIN:
    case ZL_POLE_AT_ONE:
    case ZL_CONSTRAINT_VIOLATION:
    case ZL_TAIL_BOUND_UNAVAILABLE:
    case ZL_ZERO_PROXIMITY:
      return kDomain;
    case ZL_BUDGET_EXCEEDED:
    case ZL_LIMIT_EXCEEDED:
      return kBudget;
    case ZL_CACHE_CORRUPTION:
    case ZL_CACHE_VERSION_MISMATCH:
      return kCache;
    default:
      return kFailure;
  }
}

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw UsageError(std::string("bad number '") + item + "' in " + what);
    }
    if (item.find_first_not_of(" \t", used) != std::string::npos) {
      throw UsageError(std::string("bad number '") + item + "' in " + what);
    }
    out.push_back(v);
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct Globals {
  std::string config_path;
  std::optional<double> tol;
  std::optional<std::string> cache_dir;
  std::optional<std::string> format;
};

struct Params {
  double sigma = 2.0;
  int l = 1;
  int k = 1;
  std::optional<double> x;
  long hmax = 0;
  int nmin = 3;
  int nmax = 0;
  std::string series = "zeta";
  std::string schedule;
  std::vector<double> T;
  std::string kind;
  std::string file;
  unsigned seed = 0;
  std::optional<double> zeta_2sigma, selberg, F;
};

json build_config(const Globals& g) {
  json cfg = json::object();
  if (!g.config_path.empty()) {
    try {
      cfg = json::parse(read_file(g.config_path));
    } catch (const json::parse_error& e) {
      throw UsageError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!cfg.is_object()) throw UsageError("config must be a JSON object");
  }
  if (g.tol) cfg["tol"] = *g.tol;
  if (g.cache_dir) cfg["cache_dir"] = *g.cache_dir;
  if (g.format) cfg["format"] = *g.format;
  return cfg;
}

std::vector<double> heights(const Params& p) {
  std::vector<double> Ts = p.T;
  if (!p.schedule.empty()) {
    auto more = parse_list(p.schedule, "--tau-schedule");
    Ts.insert(Ts.end(), more.begin(), more.end());
  }
  if (Ts.empty()) throw UsageError("no T given (positional T or --tau-schedule)");
  return Ts;
}

std::vector<double> schedule(const Params& p) {
  auto s = parse_list(p.schedule, "--tau-schedule");
  if (s.empty()) throw UsageError("--tau-schedule is empty");
  return s;
}

void add_spec(json& req, const Params& p) {
  req["kind"] = p.kind;
  req["sigma"] = p.sigma;
  req["l"] = p.l;
  req["k"] = p.k;
  req["series"] = p.series;
  if (p.zeta_2sigma) req["zeta_2sigma"] = *p.zeta_2sigma;
  if (p.selberg) req["selberg"] = *p.selberg;
  if (p.F) req["F"] = *p.F;
}

int report_status(zl_status s) {
  std::cerr << "zetalab-cli: " << zl_last_error() << "\n";
  return exit_code(s);
}

int execute(const Globals& g, const json& request) {
  const json cfg = build_config(g);
  zl_context* ctx = nullptr;
  zl_status s = zl_context_create(cfg.dump().c_str(), &ctx);
  if (s != ZL_OK) return report_status(s);

  char* out = nullptr;
  s = zl_run(ctx, request.dump().c_str(), &out);
  const std::string error = s == ZL_OK ? "" : zl_last_error();
  std::string format = "json";
  char* cfg_out = nullptr;
  if (zl_context_config(ctx, &cfg_out) == ZL_OK) {
    format = json::parse(cfg_out).value("format", "json");
    zl_string_free(cfg_out);
  }
  zl_context_destroy(ctx);
  if (s != ZL_OK) {
    std::cerr << "zetalab-cli: " << error << "\n";
    return exit_code(s);
  }

  std::string doc(out);
  zl_string_free(out);
  s = zl_validate_document(doc.c_str());
  if (s != ZL_OK) return report_status(s);
  if (format == "csv") {
    char* csv = nullptr;
    s = zl_to_csv(doc.c_str(), &csv);
    if (s != ZL_OK) return report_status(s);
    std::cout << csv;
    zl_string_free(csv);
  } else {
    std::cout << json::parse(doc).dump(2) << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"zetalab-cli: zeta mean values, Selberg moments, ladders, and limit functionals"};
  app.require_subcommand(1);
  Globals g;
  Params p;

  app.add_option("--config", g.config_path, "JSON configuration file")->check(CLI::ExistingFile);
  app.add_option("--tol", g.tol, "quadrature tolerance")->check(CLI::PositiveNumber);
  app.add_option("--cache-dir", g.cache_dir, "prefix cache directory");
  app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"json", "csv"}));

  auto* zm = app.add_subcommand("zeta-mean", "(1/T) integral_1^T |zeta(sigma+it)|^2");
  zm->add_option("--sigma", p.sigma, "real part sigma")->required();
  zm->add_option("T", p.T, "heights");
  zm->add_option("--tau-schedule", p.schedule, "comma-separated heights");

  auto* sm = app.add_subcommand("s1-mean", "(1/T) integral_0^T |S_1|^{2l}");
  sm->add_option("--l", p.l, "moment index")->check(CLI::PositiveNumber);
  sm->add_option("T", p.T, "heights");
  sm->add_option("--tau-schedule", p.schedule, "comma-separated heights");

  double ladder_T = 0.0;
  auto* ld = app.add_subcommand("ladder", "reverse ladder iterates of T");
  ld->add_option("T", ladder_T, "base height")->required();
  ld->add_option("--k", p.k, "number of iterates")->check(CLI::PositiveNumber);

  double coupling_T = 0.0;
  auto* cp = app.add_subcommand("coupling", "mean-value integral against its ladder segment");
  cp->add_option("kind", p.kind, "zeta or s1")->required()->check(CLI::IsMember({"zeta", "s1"}));
  cp->add_option("T", coupling_T, "height")->required();
  cp->add_option("--sigma", p.sigma, "real part sigma");
  cp->add_option("--l", p.l, "moment index")->check(CLI::PositiveNumber);

  auto* fn = app.add_subcommand("functional", "finite-tau values of a limit functional");
  fn->add_option("kind", p.kind, "ZETA_MEAN, S1_MEAN, COMBINED, LADDER_ZETA, LADDER_S1, MASTER, DIRICHLET")
      ->required();
  fn->add_option("--sigma", p.sigma, "sigma, or sigma0 for DIRICHLET");
  fn->add_option("--l", p.l, "moment index");
  fn->add_option("--k", p.k, "ladder index");
  fn->add_option("--x", p.x, "target value")->required();
  fn->add_option("--series", p.series, "zeta, eta, chi4, one or file:PATH");
  fn->add_option("--tau-schedule", p.schedule, "comma-separated tau values")->required();
  fn->add_option("--zeta-2sigma", p.zeta_2sigma, "override zeta(2 sigma)");
  fn->add_option("--selberg", p.selberg, "override the Selberg constant");
  fn->add_option("--F", p.F, "override F(sigma0; f)");

  auto* fs = app.add_subcommand("fermat-scan", "exhaustive Fermat-rational box scan");
  fs->add_option("--hmax", p.hmax, "height bound")->required();
  fs->add_option("--nmin", p.nmin, "smallest exponent");
  fs->add_option("--nmax", p.nmax, "largest exponent")->required();
  fs->add_option("kind", p.kind, "functional evaluated at the witness");
  fs->add_option("--sigma", p.sigma, "real part sigma");
  fs->add_option("--l", p.l, "moment index");
  fs->add_option("--k", p.k, "ladder index");
  fs->add_option("--series", p.series, "series for DIRICHLET");
  fs->add_option("--tau-schedule", p.schedule, "comma-separated tau values");

  auto* dm = app.add_subcommand("dirichlet-mean", "(1/T) integral_0^T |f(sigma0+it)|^2");
  dm->add_option("--series", p.series, "zeta, eta, chi4, one or file:PATH");
  dm->add_option("--sigma", p.sigma, "sigma0")->required();
  dm->add_option("T", p.T, "heights");
  dm->add_option("--tau-schedule", p.schedule, "comma-separated heights");

  auto* cache = app.add_subcommand("cache", "prefix cache administration");
  cache->require_subcommand(1);
  auto* c_list = cache->add_subcommand("list", "list cache files");
  auto* c_verify = cache->add_subcommand("verify", "recompute one random checkpoint gap");
  c_verify->add_option("file", p.file, "cache file")->required();
  c_verify->add_option("--seed", p.seed, "checkpoint selection seed");
  auto* c_drop = cache->add_subcommand("drop", "remove a cache file ('*' for all)");
  c_drop->add_option("file", p.file, "cache file")->required();

  // Global flags may follow the subcommand.
  app.fallthrough();
  for (auto* sub : {zm, sm, ld, cp, fn, fs, dm, cache, c_list, c_verify, c_drop}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    json req;
    if (*zm) {
      req = {{"command", "zeta-mean"}, {"sigma", p.sigma}, {"T", heights(p)}};
    } else if (*sm) {
      req = {{"command", "s1-mean"}, {"l", p.l}, {"T", heights(p)}};
    } else if (*ld) {
      req = {{"command", "ladder"}, {"T", ladder_T}, {"k", p.k}};
    } else if (*cp) {
      req = {{"command", "coupling"}, {"kind", p.kind}, {"T", coupling_T}, {"sigma", p.sigma}, {"l", p.l}};
    } else if (*fn) {
      req = {{"command", "functional"}, {"x", *p.x}, {"schedule", schedule(p)}};
      add_spec(req, p);
    } else if (*fs) {
      req = {{"command", "fermat-scan"}, {"hmax", p.hmax}, {"nmin", p.nmin}, {"nmax", p.nmax}};
      if (!p.kind.empty()) {
        add_spec(req, p);
        req["schedule"] = p.schedule.empty() ? std::vector<double>{500, 1000, 2000} : schedule(p);
      }
    } else if (*dm) {
      req = {{"command", "dirichlet-mean"}, {"series", p.series}, {"sigma0", p.sigma}, {"T", heights(p)}};
    } else if (*c_list) {
      req = {{"command", "cache-list"}};
    } else if (*c_verify) {
      req = {{"command", "cache-verify"}, {"file", p.file}, {"seed", p.seed}};
    } else if (*c_drop) {
      req = {{"command", "cache-drop"}, {"file", p.file}};
    }
    return execute(g, req);
  } catch (const UsageError& e) {
    std::cerr << "zetalab-cli: " << e.what() << "\n";
    return kUsage;
  }
}
