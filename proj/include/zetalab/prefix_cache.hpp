#pragma once

// Checkpointed prefix integrals  P(T) = integral_{lower}^{T} f(t) dt.
//
// A cache keeps an ordered set of (T, P(T)) checkpoints. A request for P(T)
// starts from the largest checkpoint at or below T and integrates only the
// gap, then records T as a new checkpoint. Checkpoints past the last persisted
// one are appended to an on-disk file so that long runs survive restarts.
//
// File layout (little-endian):
//   char[8]  magic "ZLPCACHE"
//   u32      version
//   u32      kind
//   f64      sigma (AbsZetaSq, Dirichlet) or 0
//   u32      l (S1Pow) or 0
//   u32      reserved
//   f64      grid_resolution
//   char[64] series id, NUL padded (Dirichlet) or empty
//   then records of { f64 T, f64 value } in strictly increasing T.

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <vector>

#include "zetalab/quadrature.hpp"

namespace zetalab::quad {

inline constexpr std::uint32_t kCacheVersion = 1;
inline constexpr std::size_t kCacheHeaderSize = 8 + 4 + 4 + 8 + 4 + 4 + 8 + 64;
inline constexpr std::size_t kCacheRecordSize = 16;

enum class CacheKind : std::uint32_t {
  AbsZetaSq = 1,      // |zeta(sigma + it)|^2 from 1
  AbsZetaHalfSq = 2,  // |zeta(1/2 + it)|^2 from 0, i.e. J(T)
  S1Pow = 3,          // |S_1(t)|^{2l} from 0
  Dirichlet = 4,      // |f(sigma0 + it)|^2 from 0
};

const char* cache_kind_name(CacheKind kind) noexcept;

struct CacheKey {
  CacheKind kind = CacheKind::AbsZetaHalfSq;
  double sigma = 0.0;
  std::uint32_t l = 0;
  std::string series;
  double grid_resolution = 8.0;

  double lower_limit() const noexcept { return kind == CacheKind::AbsZetaSq ? 1.0 : 0.0; }
  std::string file_name() const;
  std::string describe() const;
  bool operator<(const CacheKey& o) const;
};

struct Checkpoint {
  double T;
  double value;
};

struct CacheFile {
  CacheKey key;
  std::uint32_t version = 0;
  std::vector<Checkpoint> records;
};

/// Reads and validates a cache file. Throws CacheVersionMismatch on a version
/// the reader does not understand and CacheCorruption (with the byte offset)
/// on a damaged header or record stream.
CacheFile read_cache_file(const std::filesystem::path& path);

/// Advisory cross-process lock held through "<file>.lock".
class FileLock {
 public:
  explicit FileLock(const std::filesystem::path& target);
  ~FileLock();
  FileLock(const FileLock&) = delete;
  FileLock& operator=(const FileLock&) = delete;

 private:
  int fd_ = -1;
};

class PrefixCache {
 public:
  /// An empty directory keeps the cache in memory only.
  PrefixCache(CacheKey key, std::unique_ptr<Integrand> integrand, std::filesystem::path dir,
              Options options = {});

  const CacheKey& key() const noexcept { return key_; }
  Integrand& integrand() noexcept { return *integrand_; }

  /// P(T); new_evaluations receives the integrand calls spent on this request.
  double prefix(double T, double tol, long long* new_evaluations = nullptr);

  /// P(b) - P(a) through the cache.
  double segment(double a, double b, double tol);

  std::vector<Checkpoint> checkpoints() const;
  std::filesystem::path path() const { return path_; }
  long long total_evaluations() const noexcept { return total_evaluations_; }

 private:
  void load();
  void persist();

  CacheKey key_;
  std::unique_ptr<Integrand> integrand_;
  std::filesystem::path path_;
  Options options_;
  mutable std::shared_mutex mutex_;
  std::map<double, double> points_;
  double persisted_T_ = -1.0;
  long long total_evaluations_ = 0;
};

}  // namespace zetalab::quad
