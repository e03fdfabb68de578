#pragma once

// Shared internal utilities: always-on invariant checks and small helpers.
// Checks throw instead of assert() so they stay active in release builds;
// every exact-arithmetic routine in this library is cheap enough to verify
// its own postconditions.

#include <sstream>
#include <stdexcept>
#include <string>

namespace confdens {

class internal_error : public std::logic_error {
 public:
  explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

namespace detail {

[[noreturn]] inline void fail(const char* file, int line, const std::string& msg) {
  std::ostringstream os;
  os << file << ":" << line << ": invariant violated: " << msg;
  throw internal_error(os.str());
}

}  // namespace detail

#define CONFDENS_CHECK(cond, msg)                               \
  do {                                                          \
    if (!(cond)) ::confdens::detail::fail(__FILE__, __LINE__, (msg)); \
  } while (0)

}  // namespace confdens
