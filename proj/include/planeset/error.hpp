#ifndef PLANESET_ERROR_HPP
#define PLANESET_ERROR_HPP

#include <stdexcept>
#include <string>

namespace planeset {

enum class Errc {
  NonFinite,
  InvalidTolerance,
  InvalidCircle,
  NotRightAngle,
  DegenerateTriple,
  InvalidRectangle,
  BadParameter,
  ConvexityViolation,
  NotConvex,
  WindowTooSmall,
  EmptySet,
  ResolutionTooLow,
  ParseError,
  ConfigError,
  IoError,
};

inline const char* to_string(Errc code) {
  switch (code) {
    case Errc::NonFinite: return "NonFinite";
    case Errc::InvalidTolerance: return "InvalidTolerance";
    case Errc::InvalidCircle: return "InvalidCircle";
    case Errc::NotRightAngle: return "NotRightAngle";
    case Errc::DegenerateTriple: return "DegenerateTriple";
    case Errc::InvalidRectangle: return "InvalidRectangle";
    case Errc::BadParameter: return "BadParameter";
    case Errc::ConvexityViolation: return "ConvexityViolation";
    case Errc::NotConvex: return "NotConvex";
    case Errc::WindowTooSmall: return "WindowTooSmall";
    case Errc::EmptySet: return "EmptySet";
    case Errc::ResolutionTooLow: return "ResolutionTooLow";
    case Errc::ParseError: return "ParseError";
    case Errc::ConfigError: return "ConfigError";
    case Errc::IoError: return "IoError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace planeset

#endif  // PLANESET_ERROR_HPP
