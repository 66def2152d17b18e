// SPDX-License-Identifier: MIT
#pragma once

#include <sstream>
#include <stdexcept>
#include <string>

namespace gdg {

[[noreturn]] inline void fail(const std::string& what) {
  throw std::runtime_error(what);
}

} // namespace gdg

// Precondition / invariant check that stays active in release builds.
// Admissibility violations and malformed inputs must never pass silently.
#define GDG_REQUIRE(cond, msg)                                        \
  do {                                                                \
    if (!(cond)) {                                                    \
      std::ostringstream gdg_oss_;                                    \
      gdg_oss_ << __FILE__ << ":" << __LINE__ << ": " << msg;         \
      ::gdg::fail(gdg_oss_.str());                                    \
    }                                                                 \
  } while (0)
