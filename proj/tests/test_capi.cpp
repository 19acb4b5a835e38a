// Exercises the shared library strictly through its C header.

#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>

#include <json.hpp>

#include "zetalab/zetalab.h"

using nlohmann::json;

namespace {

std::string take(char* s) {
  std::string out(s ? s : "");
  zl_string_free(s);
  return out;
}

struct Ctx {
  zl_context* p = nullptr;
  explicit Ctx(const char* cfg = "") { REQUIRE(zl_context_create(cfg, &p) == ZL_OK); }
  ~Ctx() { zl_context_destroy(p); }
};

}  // namespace

TEST_CASE("context creation and errors") {
  zl_context* ctx = nullptr;
  CHECK(zl_context_create("{not json", &ctx) == ZL_INVALID_ARGUMENT);
  CHECK(ctx == nullptr);
  CHECK(std::strlen(zl_last_error()) > 0);
  CHECK(zl_context_create(R"({"tol": -1})", &ctx) == ZL_INVALID_ARGUMENT);
  CHECK(zl_context_create(R"({"colour": 1})", &ctx) == ZL_INVALID_ARGUMENT);
  CHECK(zl_context_create(nullptr, nullptr) == ZL_INVALID_ARGUMENT);
  Ctx ok(R"({"tol": 1e-7})");
  char* cfg = nullptr;
  REQUIRE(zl_context_config(ok.p, &cfg) == ZL_OK);
  CHECK(json::parse(take(cfg))["tol"] == 1e-7);
  CHECK(std::string(zl_status_name(ZL_DOMAIN)) == "DomainError");
  CHECK(std::string(zl_status_name(ZL_INTERNAL)) == "Internal");
}

TEST_CASE("scalar entry points") {
  double re = 0, im = 0;
  REQUIRE(zl_zeta(2.0, 0.0, &re, &im) == ZL_OK);
  CHECK(std::abs(re - M_PI * M_PI / 6) < 1e-12);
  CHECK(zl_zeta(1.0, 0.0, &re, &im) == ZL_POLE_AT_ONE);
  double v = 0;
  REQUIRE(zl_theta(14.134725, &v) == ZL_OK);
  CHECK(std::abs(v + 1.72867) < 1e-5);
  REQUIRE(zl_hardy_z(14.134725141734693, &v) == ZL_OK);
  CHECK(std::abs(v) < 1e-9);
  CHECK(zl_zeta_2sigma(0.5, 0.05, &v) == ZL_DOMAIN);
  REQUIRE(zl_dirichlet_F("chi4", 1.0, &v) == ZL_OK);
  CHECK(std::abs(v - M_PI * M_PI / 8) < 1e-12);
  char* s = nullptr;
  REQUIRE(zl_fermat_value("3", "4", "5", 3, &s) == ZL_OK);
  CHECK(take(s) == "91/125");
  CHECK(zl_fermat_value("3", "x", "5", 3, &s) == ZL_INVALID_ARGUMENT);
  CHECK(zl_fermat_value("3", "4", "5", 2, &s) == ZL_INVALID_ARGUMENT);
}

TEST_CASE("context entry points") {
  Ctx ctx;
  double v = 0;
  REQUIRE(zl_S(ctx.p, 50.0, &v) == ZL_OK);
  CHECK(std::abs(v) < 2.0);
  REQUIRE(zl_S1(ctx.p, 50.0, &v) == ZL_OK);
  CHECK(std::isfinite(v));
  double Y = 0, res = 1;
  REQUIRE(zl_reverse_step(ctx.p, 500.0, &Y, &res) == ZL_OK);
  CHECK(Y > 500.0);
  CHECK(res <= 1e-6);
  CHECK(zl_reverse_step(ctx.p, 10.0, &Y, &res) == ZL_DOMAIN);
}

TEST_CASE("commands return valid, reproducible documents") {
  const char* req = R"({"command": "zeta-mean", "sigma": 2, "T": [60, 120]})";
  Ctx a, b;
  char* out = nullptr;
  REQUIRE(zl_run(a.p, req, &out) == ZL_OK);
  const std::string d1 = take(out);
  REQUIRE(zl_run(b.p, req, &out) == ZL_OK);
  const std::string d2 = take(out);
  CHECK(zl_validate_document(d1.c_str()) == ZL_OK);
  json j1 = json::parse(d1), j2 = json::parse(d2);
  j1.erase("timing");
  j2.erase("timing");
  CHECK(j1 == j2);
  CHECK(j1["rows"].size() == 2);
  REQUIRE(zl_to_csv(d1.c_str(), &out) == ZL_OK);
  CHECK(take(out).find("T,integral,mean") != std::string::npos);

  CHECK(zl_run(a.p, R"({"command": "teleport"})", &out) == ZL_INVALID_ARGUMENT);
  CHECK(zl_run(a.p, R"({"command": "zeta-mean", "sigma": 0.3, "T": [100]})", &out) == ZL_DOMAIN);
  CHECK(zl_run(a.p, R"({"command": "zeta-mean", "sigma": 2, "T": []})", &out) == ZL_INVALID_ARGUMENT);
  CHECK(zl_run(a.p, R"({"command": "functional", "kind": "NOPE", "x": 1, "schedule": [1,2,3]})", &out) ==
        ZL_INVALID_ARGUMENT);
  CHECK(zl_validate_document(R"({"schema": 1, "command": "x", "config": {}, "rows": []})") == ZL_INVALID_ARGUMENT);
}

TEST_CASE("fermat scan through the API") {
  Ctx ctx;
  char* out = nullptr;
  REQUIRE(zl_run(ctx.p, R"({"command": "fermat-scan", "hmax": 20, "nmax": 7})", &out) == ZL_OK);
  const json doc = json::parse(take(out));
  CHECK(doc["rows"][0]["equal_one"] == 0);
  CHECK(doc["rows"][0]["min_gap"] == "1/1280000000");
  CHECK(doc["rows"][0]["witness"] == "(1,20,20,7)");
}
