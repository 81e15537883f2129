#pragma once

#include <functional>
#include <string_view>

namespace owlmat {

enum class LogLevel { info, warning };

using LogHandler = std::function<void(LogLevel, std::string_view)>;

/// Replaces the process-wide handler; nullptr restores the default, which
/// writes warnings to stderr.
void set_log_handler(LogHandler handler);
void log(LogLevel level, std::string_view message);
inline void warn(std::string_view message) { log(LogLevel::warning, message); }

}  // namespace owlmat
