#pragma once

#include <string>

#include "owlmat/log.hpp"

namespace fixtures {

inline std::string data(const std::string &name) { return std::string(OWLMAT_DATA_DIR) + "/" + name; }

inline const std::string kClgo = "http://caligraph.org/ontology/";
inline const std::string kClgr = "http://caligraph.org/resource/";

inline std::string clgo(const std::string &local) { return kClgo + local; }
inline std::string clgr(const std::string &local) { return kClgr + local; }

// Silences library warnings for the lifetime of the object.
struct QuietLog {
  QuietLog() {
    owlmat::set_log_handler([](owlmat::LogLevel, std::string_view) {});
  }
  ~QuietLog() { owlmat::set_log_handler(nullptr); }
};

}  // namespace fixtures
