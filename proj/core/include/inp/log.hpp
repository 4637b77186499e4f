#pragma once

#include <sstream>
#include <string>

namespace inp {

enum class LogLevel { Quiet = 0, Info = 1, Debug = 2 };

/// Level from the INP_LOG environment variable ("info" or "debug"); quiet
/// by default. Read once per process.
LogLevel log_level();

void log_line(LogLevel level, const std::string& message);

#define INP_LOG_INFO(expr)                                 \
  do {                                                     \
    if (::inp::log_level() >= ::inp::LogLevel::Info) {     \
      std::ostringstream os_;                              \
      os_ << expr;                                         \
      ::inp::log_line(::inp::LogLevel::Info, os_.str());   \
    }                                                      \
  } while (0)

#define INP_LOG_DEBUG(expr)                                \
  do {                                                     \
    if (::inp::log_level() >= ::inp::LogLevel::Debug) {    \
      std::ostringstream os_;                              \
      os_ << expr;                                         \
      ::inp::log_line(::inp::LogLevel::Debug, os_.str());  \
    }                                                      \
  } while (0)

}  // namespace inp
