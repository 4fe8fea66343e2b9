#ifndef PLANESET_FORMAT_HPP
#define PLANESET_FORMAT_HPP

#include <charconv>
#include <string>
#include <system_error>

namespace planeset {

/// Shortest round-trip decimal form of a double.
inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  if (res.ec != std::errc()) return "nan";
  return std::string(buf, res.ptr);
}

}  // namespace planeset

#endif  // PLANESET_FORMAT_HPP
