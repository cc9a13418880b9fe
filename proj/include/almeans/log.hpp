// Copyright 2026 the almeans authors
// SPDX-License-Identifier: Apache-2.0

#ifndef ALMEANS_LOG_HPP_
#define ALMEANS_LOG_HPP_

#include <string>

namespace almeans {

enum class LogLevel { kError = 0, kWarn = 1, kInfo = 2, kDebug = 3 };

// Threshold comes from the ALM_MEANS_LOG environment variable
// (error|warn|info|debug), read once. Unset or unrecognized means warn.
LogLevel log_threshold();

// Writes "almeans [<level>] <message>\n" to stderr when enabled.
void log_message(LogLevel level, const std::string& message);

inline void log_warn(const std::string& m) { log_message(LogLevel::kWarn, m); }
inline void log_info(const std::string& m) { log_message(LogLevel::kInfo, m); }
inline void log_debug(const std::string& m) { log_message(LogLevel::kDebug, m); }

}  // namespace almeans

#endif  // ALMEANS_LOG_HPP_
