#pragma once

#include <stdexcept>
#include <string>

namespace mgedge {

// Bad experiment or policy configuration (unknown policy name, invalid
// parameter, violated invariant). The CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Failure to read or write an output file. The CLI maps this to exit code 1.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mgedge
