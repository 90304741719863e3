#pragma once

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>

namespace scf {

/// Log level from SCF_LOG: "off" (default), "info", "debug".
inline int log_level() {
  static const int level = [] {
    const char* env = std::getenv("SCF_LOG");
    if (env == nullptr) return 0;
    std::string v(env);
    if (v == "debug") return 2;
    if (v == "info") return 1;
    return 0;
  }();
  return level;
}

inline void log_info(const std::string& msg) {
  if (log_level() >= 1) std::cerr << "[scf] " << msg << "\n";
}

inline void log_debug(const std::string& msg) {
  if (log_level() >= 2) std::cerr << "[scf debug] " << msg << "\n";
}

}  // namespace scf
