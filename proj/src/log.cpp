#include "owlmat/log.hpp"

#include <iostream>
#include <mutex>

namespace owlmat {

namespace {

std::mutex &handler_mutex() {
  static std::mutex m;
  return m;
}

void to_stderr(LogLevel level, std::string_view message) {
  if (level == LogLevel::warning) std::cerr << "warning: " << message << '\n';
}

LogHandler &handler() {
  static LogHandler h = to_stderr;
  return h;
}

}  // namespace

void set_log_handler(LogHandler h) {
  std::lock_guard lock(handler_mutex());
  handler() = h ? std::move(h) : LogHandler(to_stderr);
}

void log(LogLevel level, std::string_view message) {
  std::lock_guard lock(handler_mutex());
  if (handler()) handler()(level, message);
}

}  // namespace owlmat
