#pragma once

#include <stdexcept>
#include <string>

namespace nlgm {

// Malformed or inconsistent input data: bad corpus record, dimension
// mismatch, out-of-range rating, missing id. The CLI maps this to exit
// code 2; misuse of the API itself throws std::invalid_argument instead.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace nlgm
