#pragma once

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "nlgm/error.hpp"

namespace nlgm::cli {

inline std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw DataError("cannot open file: " + path);
  }
  return in;
}

// Writes to the given path, or stdout when the path is empty.
inline void emit(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw DataError("cannot write file: " + path);
  }
  out << content;
}

}  // namespace nlgm::cli
