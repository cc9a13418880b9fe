// Copyright 2026 the almeans authors
// SPDX-License-Identifier: Apache-2.0

#include "almeans/log.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace almeans {
namespace {

LogLevel parse_level() {
  const char* env = std::getenv("ALM_MEANS_LOG");
  if (env == nullptr) return LogLevel::kWarn;
  if (std::strcmp(env, "error") == 0) return LogLevel::kError;
  if (std::strcmp(env, "warn") == 0) return LogLevel::kWarn;
  if (std::strcmp(env, "info") == 0) return LogLevel::kInfo;
  if (std::strcmp(env, "debug") == 0) return LogLevel::kDebug;
  return LogLevel::kWarn;
}

const char* level_name(LogLevel level) {
  switch (level) {
    case LogLevel::kError: return "error";
    case LogLevel::kWarn: return "warn";
    case LogLevel::kInfo: return "info";
    case LogLevel::kDebug: return "debug";
  }
  return "?";
}

}  // namespace

LogLevel log_threshold() {
  static const LogLevel level = parse_level();
  return level;
}

void log_message(LogLevel level, const std::string& message) {
  if (static_cast<int>(level) > static_cast<int>(log_threshold())) return;
  std::fprintf(stderr, "almeans [%s] %s\n", level_name(level), message.c_str());
}

}  // namespace almeans
