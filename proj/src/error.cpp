#include "zetalab/error.hpp"

namespace zetalab {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::Domain: return "DomainError";
    case Errc::PoleAtOne: return "PoleAtOne";
    case Errc::AccuracyNotReached: return "AccuracyNotReached";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::CacheVersionMismatch: return "CacheVersionMismatch";
    case Errc::CacheCorruption: return "CacheCorruption";
    case Errc::BracketFailure: return "BracketFailure";
    case Errc::ZeroProximity: return "ZeroProximity";
    case Errc::ConstantUnavailable: return "ConstantUnavailable";
    case Errc::LimitExceeded: return "LimitExceeded";
    case Errc::ConstraintViolation: return "ConstraintViolation";
    case Errc::TailBoundUnavailable: return "TailBoundUnavailable";
    case Errc::Io: return "IoError";
  }
  return "Unknown";
}

}  // namespace zetalab
