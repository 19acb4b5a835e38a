#include "zetalab/prefix_cache.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <array>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <tuple>

#include "zetalab/error.hpp"

namespace zetalab::quad {

static_assert(std::endian::native == std::endian::little, "cache files are written in host order");

namespace {

constexpr char kMagic[8] = {'Z', 'L', 'P', 'C', 'A', 'C', 'H', 'E'};

template <class T>
void put(std::string& buf, T v) {
  char raw[sizeof(T)];
  std::memcpy(raw, &v, sizeof(T));
  buf.append(raw, sizeof(T));
}

template <class T>
T get(const std::string& buf, std::size_t& pos) {
  T v;
  std::memcpy(&v, buf.data() + pos, sizeof(T));
  pos += sizeof(T);
  return v;
}

std::string encode_header(const CacheKey& key) {
  std::string buf(kMagic, 8);
  put<std::uint32_t>(buf, kCacheVersion);
  put<std::uint32_t>(buf, static_cast<std::uint32_t>(key.kind));
  put<double>(buf, key.sigma);
  put<std::uint32_t>(buf, key.l);
  put<std::uint32_t>(buf, 0);
  put<double>(buf, key.grid_resolution);
  std::array<char, 64> id{};
  std::memcpy(id.data(), key.series.data(), std::min<std::size_t>(key.series.size(), 63));
  buf.append(id.data(), id.size());
  return buf;
}

[[noreturn]] void corrupt(const std::filesystem::path& path, std::size_t offset, const std::string& what) {
  std::ostringstream os;
  os << path.string() << " at offset " << offset << ": " << what;
  fail(Errc::CacheCorruption, os.str());
}

bool same_key(const CacheKey& a, const CacheKey& b) {
  return a.kind == b.kind && a.sigma == b.sigma && a.l == b.l && a.series == b.series &&
         a.grid_resolution == b.grid_resolution;
}

}  // namespace

const char* cache_kind_name(CacheKind kind) noexcept {
  switch (kind) {
    case CacheKind::AbsZetaSq: return "abs_zeta_sq";
    case CacheKind::AbsZetaHalfSq: return "abs_zeta_half_sq";
    case CacheKind::S1Pow: return "s1_pow";
    case CacheKind::Dirichlet: return "dirichlet";
  }
  return "unknown";
}

std::string CacheKey::file_name() const {
  char buf[160];
  switch (kind) {
    case CacheKind::AbsZetaSq:
      std::snprintf(buf, sizeof buf, "abs_zeta_sq_s%.10g_g%g.zlc", sigma, grid_resolution);
      break;
    case CacheKind::AbsZetaHalfSq:
      std::snprintf(buf, sizeof buf, "abs_zeta_half_sq_g%g.zlc", grid_resolution);
      break;
    case CacheKind::S1Pow:
      std::snprintf(buf, sizeof buf, "s1_pow_l%u_g%g.zlc", l, grid_resolution);
      break;
    case CacheKind::Dirichlet: {
      std::string id;
      for (char ch : series) id += std::isalnum(static_cast<unsigned char>(ch)) ? ch : '-';
      std::snprintf(buf, sizeof buf, "dirichlet_%s_s%.10g_g%g.zlc", id.c_str(), sigma, grid_resolution);
      break;
    }
  }
  return buf;
}

std::string CacheKey::describe() const {
  std::ostringstream os;
  os << cache_kind_name(kind);
  if (kind == CacheKind::AbsZetaSq || kind == CacheKind::Dirichlet) os << " sigma=" << sigma;
  if (kind == CacheKind::S1Pow) os << " l=" << l;
  if (kind == CacheKind::Dirichlet) os << " series=" << series;
  os << " grid=" << grid_resolution;
  return os.str();
}

bool CacheKey::operator<(const CacheKey& o) const {
  return std::tie(kind, sigma, l, series, grid_resolution) <
         std::tie(o.kind, o.sigma, o.l, o.series, o.grid_resolution);
}

CacheFile read_cache_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::Io, "cannot open " + path.string());
  const std::string buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (buf.size() < kCacheHeaderSize) corrupt(path, buf.size(), "truncated header");
  if (std::memcmp(buf.data(), kMagic, 8) != 0) corrupt(path, 0, "bad magic");

  CacheFile file;
  std::size_t pos = 8;
  file.version = get<std::uint32_t>(buf, pos);
  if (file.version != kCacheVersion) {
    fail(Errc::CacheVersionMismatch, path.string() + ": file version " + std::to_string(file.version) +
                                         ", reader version " + std::to_string(kCacheVersion));
  }
  const std::size_t kind_offset = pos;
  const auto kind = get<std::uint32_t>(buf, pos);
  if (kind < 1 || kind > 4) corrupt(path, kind_offset, "unknown kind " + std::to_string(kind));
  file.key.kind = static_cast<CacheKind>(kind);
  file.key.sigma = get<double>(buf, pos);
  file.key.l = get<std::uint32_t>(buf, pos);
  get<std::uint32_t>(buf, pos);
  file.key.grid_resolution = get<double>(buf, pos);
  const std::size_t id_offset = pos;
  const char* id = buf.data() + pos;
  const std::size_t id_len = strnlen(id, 64);
  if (id_len == 64) corrupt(path, id_offset, "unterminated series id");
  file.key.series.assign(id, id_len);
  pos += 64;

  if ((buf.size() - pos) % kCacheRecordSize != 0) {
    corrupt(path, buf.size() - (buf.size() - pos) % kCacheRecordSize, "partial record");
  }
  double last_T = -std::numeric_limits<double>::infinity();
  double last_v = -std::numeric_limits<double>::infinity();
  while (pos < buf.size()) {
    const std::size_t offset = pos;
    const double T = get<double>(buf, pos);
    const double v = get<double>(buf, pos);
    if (!std::isfinite(T) || !std::isfinite(v)) corrupt(path, offset, "non-finite record");
    if (!(T > last_T) || !(v > last_v)) corrupt(path, offset, "records not strictly increasing");
    file.records.push_back({T, v});
    last_T = T;
    last_v = v;
  }
  return file;
}

FileLock::FileLock(const std::filesystem::path& target) {
  const std::string lock_path = target.string() + ".lock";
  fd_ = ::open(lock_path.c_str(), O_RDWR | O_CREAT, 0644);
  if (fd_ < 0) fail(Errc::Io, "cannot open lock file " + lock_path);
  if (::flock(fd_, LOCK_EX) != 0) {
    ::close(fd_);
    fail(Errc::Io, "cannot lock " + lock_path);
  }
}

FileLock::~FileLock() {
  if (fd_ >= 0) {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
}

PrefixCache::PrefixCache(CacheKey key, std::unique_ptr<Integrand> integrand, std::filesystem::path dir,
                         Options options)
    : key_(std::move(key)), integrand_(std::move(integrand)), options_(options) {
  if (!integrand_) fail(Errc::InvalidArgument, "prefix cache needs an integrand");
  if (key_.series.size() > 63) fail(Errc::InvalidArgument, "series id longer than 63 bytes");
  points_[key_.lower_limit()] = 0.0;
  if (!dir.empty()) {
    std::filesystem::create_directories(dir);
    path_ = dir / key_.file_name();
    load();
  }
}

void PrefixCache::load() {
  FileLock lock(path_);
  if (!std::filesystem::exists(path_) || std::filesystem::file_size(path_) == 0) {
    std::ofstream out(path_, std::ios::binary | std::ios::trunc);
    const std::string header = encode_header(key_);
    out.write(header.data(), static_cast<std::streamsize>(header.size()));
    if (!out) fail(Errc::Io, "cannot write " + path_.string());
    persisted_T_ = key_.lower_limit();
    return;
  }
  CacheFile file = read_cache_file(path_);
  if (!same_key(file.key, key_)) {
    fail(Errc::CacheVersionMismatch,
         path_.string() + ": header describes " + file.key.describe() + ", expected " + key_.describe());
  }
  persisted_T_ = key_.lower_limit();
  for (const auto& r : file.records) {
    points_[r.T] = r.value;
    persisted_T_ = r.T;
  }
}

void PrefixCache::persist() {
  if (path_.empty()) return;
  FileLock lock(path_);
  double on_disk = key_.lower_limit();
  double on_disk_value = 0.0;
  {
    CacheFile file = read_cache_file(path_);
    if (!file.records.empty()) {
      on_disk = file.records.back().T;
      on_disk_value = file.records.back().value;
    }
  }
  std::string buf;
  double last_v = on_disk_value;
  for (auto it = points_.upper_bound(on_disk); it != points_.end(); ++it) {
    if (!(it->second > last_v)) continue;
    put<double>(buf, it->first);
    put<double>(buf, it->second);
    last_v = it->second;
  }
  if (buf.empty()) return;
  std::ofstream out(path_, std::ios::binary | std::ios::app);
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!out) fail(Errc::Io, "cannot append to " + path_.string());
  persisted_T_ = points_.rbegin()->first;
}

double PrefixCache::prefix(double T, double tol, long long* new_evaluations) {
  if (new_evaluations) *new_evaluations = 0;
  if (!std::isfinite(T) || T < key_.lower_limit()) {
    std::ostringstream os;
    os << "prefix limit " << T << " below the cache lower limit " << key_.lower_limit();
    fail(Errc::Domain, os.str());
  }
  {
    std::shared_lock read(mutex_);
    auto it = points_.find(T);
    if (it != points_.end()) return it->second;
  }
  std::unique_lock write(mutex_);
  auto it = points_.upper_bound(T);
  auto next = it;
  --it;
  if (it->first == T) return it->second;
  const QuadratureResult r = integrate(*integrand_, it->first, T, tol, options_);
  total_evaluations_ += r.evaluations;
  if (new_evaluations) *new_evaluations = r.evaluations;
  const double value = it->second + r.value;
  const bool fits_below = value > it->second;
  const bool fits_above = next == points_.end() || value < next->second;
  if (fits_below && fits_above) {
    points_[T] = value;
    if (T > persisted_T_) persist();
  }
  return value;
}

double PrefixCache::segment(double a, double b, double tol) {
  if (a > b) fail(Errc::InvalidArgument, "segment limits out of order");
  if (a == b) return 0.0;
  const double pa = prefix(a, tol);
  return prefix(b, tol) - pa;
}

std::vector<Checkpoint> PrefixCache::checkpoints() const {
  std::shared_lock read(mutex_);
  std::vector<Checkpoint> out;
  for (const auto& [T, v] : points_) {
    if (T == key_.lower_limit()) continue;
    out.push_back({T, v});
  }
  return out;
}

}  // namespace zetalab::quad
