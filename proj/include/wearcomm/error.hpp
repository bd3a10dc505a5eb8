#pragma once

#include <stdexcept>
#include <string>

namespace wearcomm {

// Root of every exception the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller-supplied parameter violates a documented precondition.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace wearcomm
