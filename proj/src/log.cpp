#include "sri/log.hpp"

#include <cstdlib>
#include <iostream>
#include <string>

namespace sri::log {

namespace {

Level parse_level() {
  const char* env = std::getenv("SRI_LOG");
  if (env == nullptr) return Level::kWarn;
  std::string v(env);
  if (v == "error") return Level::kError;
  if (v == "warn") return Level::kWarn;
  if (v == "info") return Level::kInfo;
  if (v == "debug") return Level::kDebug;
  return Level::kWarn;
}

const char* tag(Level level) {
  switch (level) {
    case Level::kError: return "error";
    case Level::kWarn: return "warn";
    case Level::kInfo: return "info";
    case Level::kDebug: return "debug";
  }
  return "?";
}

}  // namespace

Level threshold() {
  static const Level t = parse_level();
  return t;
}

bool enabled(Level level) { return static_cast<int>(level) <= static_cast<int>(threshold()); }

void write(Level level, std::string_view message) {
  if (!enabled(level)) return;
  std::cerr << "sri " << tag(level) << ": " << message << '\n';
}

}  // namespace sri::log
