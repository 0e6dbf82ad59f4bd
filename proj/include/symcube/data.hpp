#pragma once

// Location of the bundled data directory: $SYMCUBE_DATA if set, otherwise the
// path compiled in as SYMCUBE_DATA_DIR.

#include <symcube/error.hpp>

#include <cstdlib>
#include <filesystem>
#include <string>

#ifndef SYMCUBE_DATA_DIR
#define SYMCUBE_DATA_DIR "data"
#endif

namespace symcube {

inline std::filesystem::path data_dir() {
  if (const char* env = std::getenv("SYMCUBE_DATA"); env && *env) return env;
  return SYMCUBE_DATA_DIR;
}

inline std::filesystem::path data_path(const std::string& rel) {
  auto p = data_dir() / rel;
  if (!std::filesystem::exists(p)) throw Error(ErrorKind::io_error, "missing data file " + p.string());
  return p;
}

}  // namespace symcube
