#include "zetalab/zetalab.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include <json.hpp>

#include "zetalab/context.hpp"
#include "zetalab/dirichlet.hpp"
#include "zetalab/error.hpp"
#include "zetalab/fermat.hpp"
#include "zetalab/ladders.hpp"
#include "zetalab/report.hpp"
#include "zetalab/zeta_kernel.hpp"

using nlohmann::json;
using namespace zetalab;

struct zl_context {
  explicit zl_context(RunConfig cfg) : ctx(std::move(cfg)) {}
  Context ctx;
};

namespace {

thread_local std::string g_last_error;

template <class F>
zl_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return ZL_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return static_cast<zl_status>(static_cast<int>(e.code()));
  } catch (const json::exception& e) {
    g_last_error = std::string("InvalidArgument: ") + e.what();
    return ZL_INVALID_ARGUMENT;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return ZL_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return ZL_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return ZL_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (!p) fail(Errc::InvalidArgument, std::string(what) + " is NULL");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::vector<double> points(const json& req, const char* key) {
  if (!req.contains(key)) fail(Errc::InvalidArgument, std::string("missing '") + key + "'");
  const json& v = req.at(key);
  if (v.is_number()) return {v.get<double>()};
  return v.get<std::vector<double>>();
}

template <class T>
T get_or(const json& req, const char* key, T fallback) {
  return req.contains(key) ? req.at(key).get<T>() : fallback;
}

functionals::FunctionalSpec spec_from(const json& req) {
  functionals::FunctionalSpec s;
  s.kind = functionals::parse_kind(req.at("kind").get<std::string>());
  s.sigma = get_or(req, "sigma", s.sigma);
  s.l = get_or(req, "l", s.l);
  s.k = get_or(req, "k", s.k);
  s.series = get_or(req, "series", s.series);
  if (req.contains("zeta_2sigma")) s.zeta_2sigma = req.at("zeta_2sigma").get<double>();
  if (req.contains("selberg")) s.selberg = req.at("selberg").get<double>();
  if (req.contains("F")) s.F = req.at("F").get<double>();
  return s;
}

json run(Context& ctx, const json& req) {
  if (!req.is_object()) fail(Errc::InvalidArgument, "request must be a JSON object");
  const std::string cmd = req.at("command").get<std::string>();
  const std::string dir = ctx.config().cache_dir.string();
  if (cmd == "zeta-mean") return report::zeta_mean(ctx, req.at("sigma").get<double>(), points(req, "T"));
  if (cmd == "s1-mean") return report::s1_mean(ctx, get_or(req, "l", 1), points(req, "T"));
  if (cmd == "ladder") return report::ladder(ctx, req.at("T").get<double>(), get_or(req, "k", 1));
  if (cmd == "coupling") {
    const std::string kind = get_or<std::string>(req, "kind", "zeta");
    if (kind != "zeta" && kind != "s1") fail(Errc::InvalidArgument, "coupling kind must be zeta or s1");
    return report::coupling(ctx, kind == "zeta" ? ladders::CouplingKind::Zeta : ladders::CouplingKind::S1,
                            get_or(req, "sigma", 2.0), get_or(req, "l", 1), req.at("T").get<double>());
  }
  if (cmd == "functional") {
    return report::functional(ctx, spec_from(req), req.at("x").get<double>(), points(req, "schedule"));
  }
  if (cmd == "fermat-scan") {
    std::optional<functionals::FunctionalSpec> spec;
    std::vector<double> schedule;
    if (req.contains("kind")) {
      spec = spec_from(req);
      schedule = points(req, "schedule");
    }
    return report::fermat_scan(ctx, req.at("hmax").get<long>(), get_or(req, "nmin", 3), req.at("nmax").get<int>(),
                               spec, schedule);
  }
  if (cmd == "dirichlet-mean") {
    return report::dirichlet_mean(ctx, get_or<std::string>(req, "series", "zeta"), req.at("sigma0").get<double>(),
                                  points(req, "T"));
  }
  if (cmd == "cache-list") return report::cache_list(dir);
  if (cmd == "cache-verify") {
    return report::cache_verify(ctx, req.at("file").get<std::string>(), get_or(req, "seed", 0u));
  }
  if (cmd == "cache-drop") return report::cache_drop(dir, req.at("file").get<std::string>());
  fail(Errc::InvalidArgument, "unknown command '" + cmd + "'");
}

json parse(const char* text, const char* what) {
  need(text, what);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(Errc::InvalidArgument, std::string(what) + " is not valid JSON: " + e.what());
  }
}

}  // namespace

extern "C" {

const char* zl_version(void) { return "1.0.0"; }

const char* zl_status_name(zl_status status) {
  if (status == ZL_OK) return "OK";
  if (status == ZL_INTERNAL) return "Internal";
  if (status >= ZL_INVALID_ARGUMENT && status <= ZL_IO) return errc_name(static_cast<Errc>(static_cast<int>(status)));
  return "Unknown";
}

const char* zl_last_error(void) { return g_last_error.c_str(); }

void zl_string_free(char* s) { std::free(s); }

zl_status zl_context_create(const char* config_json, zl_context** out) {
  return guarded([&] {
    need(out, "out");
    *out = nullptr;
    RunConfig cfg;
    if (config_json && *config_json) cfg = RunConfig::from_json(parse(config_json, "config"));
    cfg.validate();
    *out = new zl_context(std::move(cfg));
  });
}

void zl_context_destroy(zl_context* ctx) { delete ctx; }

zl_status zl_context_config(const zl_context* ctx, char** out_json) {
  return guarded([&] {
    need(ctx, "ctx");
    need(out_json, "out_json");
    *out_json = dup_string(ctx->ctx.config().to_json().dump());
  });
}

zl_status zl_zeta(double re, double im, double* out_re, double* out_im) {
  return guarded([&] {
    need(out_re, "out_re");
    need(out_im, "out_im");
    const auto z = zeta::zeta({re, im});
    *out_re = z.value.real();
    *out_im = z.value.imag();
  });
}

zl_status zl_theta(double t, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = zeta::theta(t);
  });
}

zl_status zl_hardy_z(double t, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = zeta::hardy_z(t);
  });
}

zl_status zl_zeta_2sigma(double sigma, double epsilon, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = zeta::zeta_2sigma(sigma, epsilon);
  });
}

zl_status zl_S(zl_context* ctx, double t, double* out) {
  return guarded([&] {
    need(ctx, "ctx");
    need(out, "out");
    *out = ctx->ctx.zeros().S(t);
  });
}

zl_status zl_S1(zl_context* ctx, double t, double* out) {
  return guarded([&] {
    need(ctx, "ctx");
    need(out, "out");
    *out = ctx->ctx.zeros().S1(t);
  });
}

zl_status zl_reverse_step(zl_context* ctx, double T, double* out_Y, double* out_residual) {
  return guarded([&] {
    need(ctx, "ctx");
    need(out_Y, "out_Y");
    const auto r = ladders::reverse_step(ctx->ctx, T, ctx->ctx.config().tol);
    *out_Y = r.Y;
    if (out_residual) *out_residual = r.residual;
  });
}

zl_status zl_dirichlet_F(const char* series, double sigma0, double* out) {
  return guarded([&] {
    need(series, "series");
    need(out, "out");
    *out = dirichlet::F_constant(dirichlet::resolve(series), sigma0, 1e-14);
  });
}

zl_status zl_fermat_value(const char* x, const char* y, const char* z, int n, char** out) {
  return guarded([&] {
    need(x, "x");
    need(y, "y");
    need(z, "z");
    need(out, "out");
    fermat::FermatRational q;
    try {
      q.x = mpz_class(x, 10);
      q.y = mpz_class(y, 10);
      q.z = mpz_class(z, 10);
    } catch (const std::invalid_argument&) {
      fail(Errc::InvalidArgument, "x, y, z must be decimal integers");
    }
    q.n = n;
    *out = dup_string(fermat::to_string(fermat::value(q)));
  });
}

zl_status zl_run(zl_context* ctx, const char* request_json, char** out_json) {
  return guarded([&] {
    need(ctx, "ctx");
    need(out_json, "out_json");
    *out_json = nullptr;
    const json doc = run(ctx->ctx, parse(request_json, "request"));
    report::validate_document(doc);
    *out_json = dup_string(doc.dump());
  });
}

zl_status zl_validate_document(const char* document_json) {
  return guarded([&] { report::validate_document(parse(document_json, "document")); });
}

zl_status zl_to_csv(const char* document_json, char** out_csv) {
  return guarded([&] {
    need(out_csv, "out_csv");
    *out_csv = dup_string(report::to_csv(parse(document_json, "document")));
  });
}

}  // extern "C"
