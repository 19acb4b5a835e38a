#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>

#include "zetalab/error.hpp"
#include "zetalab/prefix_cache.hpp"

using namespace zetalab;
namespace fs = std::filesystem;

namespace {

struct Cos2 final : quad::Integrand {
  double operator()(double t) const override { return 1.0 + std::cos(t) * std::cos(t); }
  double panel_width(double) const override { return 2.0; }
  bool nonnegative() const override { return true; }
};

double exact(double T) { return 1.5 * T + std::sin(2 * T) / 4.0; }

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("zl_cache_test_" + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

quad::CacheKey j_key() {
  quad::CacheKey k;
  k.kind = quad::CacheKind::AbsZetaHalfSq;
  return k;
}

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::Io;
}

}  // namespace

TEST_CASE("prefix values and reuse") {
  quad::PrefixCache c(j_key(), std::make_unique<Cos2>(), {});
  long long fresh = -1;
  CHECK(c.prefix(10.0, 1e-10, &fresh) == doctest::Approx(exact(10.0)).epsilon(1e-12));
  CHECK(fresh > 0);
  CHECK(c.prefix(10.0, 1e-10, &fresh) == doctest::Approx(exact(10.0)).epsilon(1e-12));
  CHECK(fresh == 0);
  CHECK(c.prefix(4.0, 1e-10) == doctest::Approx(exact(4.0)).epsilon(1e-12));
  CHECK(c.segment(4.0, 10.0, 1e-10) == doctest::Approx(exact(10.0) - exact(4.0)).epsilon(1e-11));
  CHECK(c.checkpoints().size() >= 2);
  CHECK(code_of([&] { c.prefix(-1.0, 1e-10); }) == Errc::Domain);
}

TEST_CASE("persisted cache reloads bit-identically") {
  TempDir dir;
  double first = 0.0;
  {
    quad::PrefixCache c(j_key(), std::make_unique<Cos2>(), dir.path);
    c.prefix(5.0, 1e-10);
    first = c.prefix(20.0, 1e-10);
  }
  quad::PrefixCache again(j_key(), std::make_unique<Cos2>(), dir.path);
  long long fresh = -1;
  CHECK(again.prefix(20.0, 1e-10, &fresh) == first);
  CHECK(fresh == 0);
  const auto file = quad::read_cache_file(again.path());
  REQUIRE(file.records.size() == 2);
  CHECK(file.records[1].value == first);
  CHECK(fs::file_size(again.path()) == quad::kCacheHeaderSize + 2 * quad::kCacheRecordSize);
}

TEST_CASE("corruption is reported with a byte offset") {
  TempDir dir;
  fs::path path;
  {
    quad::PrefixCache c(j_key(), std::make_unique<Cos2>(), dir.path);
    c.prefix(5.0, 1e-10);
    c.prefix(9.0, 1e-10);
    path = c.path();
  }
  SUBCASE("partial record") {
    fs::resize_file(path, fs::file_size(path) - 3);
    try {
      quad::read_cache_file(path);
      FAIL("expected corruption");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::CacheCorruption);
      CHECK(std::string(e.what()).find("offset " + std::to_string(quad::kCacheHeaderSize + 16)) !=
            std::string::npos);
    }
  }
  SUBCASE("bad magic") {
    std::fstream f(path, std::ios::in | std::ios::out | std::ios::binary);
    f.write("XXXX", 4);
    f.close();
    CHECK(code_of([&] { quad::read_cache_file(path); }) == Errc::CacheCorruption);
  }
  SUBCASE("records out of order") {
    std::fstream f(path, std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(static_cast<std::streamoff>(quad::kCacheHeaderSize + 16));
    const double t = 1.0;
    f.write(reinterpret_cast<const char*>(&t), 8);
    f.close();
    CHECK(code_of([&] { quad::read_cache_file(path); }) == Errc::CacheCorruption);
    CHECK(code_of([&] { quad::PrefixCache c(j_key(), std::make_unique<Cos2>(), dir.path); }) ==
          Errc::CacheCorruption);
  }
  SUBCASE("version mismatch") {
    std::fstream f(path, std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(8);
    const std::uint32_t v = quad::kCacheVersion + 1;
    f.write(reinterpret_cast<const char*>(&v), 4);
    f.close();
    CHECK(code_of([&] { quad::read_cache_file(path); }) == Errc::CacheVersionMismatch);
  }
}

TEST_CASE("file names separate keys") {
  quad::CacheKey a, b;
  a.kind = b.kind = quad::CacheKind::AbsZetaSq;
  a.sigma = 2.0;
  b.sigma = 0.75;
  CHECK(a.file_name() != b.file_name());
  CHECK(a.lower_limit() == 1.0);
  CHECK(j_key().lower_limit() == 0.0);
  CHECK(b < a);
}
