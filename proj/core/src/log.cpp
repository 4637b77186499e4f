#include "inp/log.hpp"

#include <cstdlib>
#include <iostream>
#include <string_view>

namespace inp {

LogLevel log_level() {
  static const LogLevel level = [] {
    const char* env = std::getenv("INP_LOG");
    if (!env) return LogLevel::Quiet;
    std::string_view v(env);
    if (v == "debug") return LogLevel::Debug;
    if (v == "info") return LogLevel::Info;
    return LogLevel::Quiet;
  }();
  return level;
}

void log_line(LogLevel level, const std::string& message) {
  std::cerr << (level == LogLevel::Debug ? "[debug] " : "[info] ") << message << "\n";
}

}  // namespace inp
