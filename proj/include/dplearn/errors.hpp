#pragma once

#include <stdexcept>
#include <string>

namespace dplearn {

// Error taxonomy shared by the library and the CLI.
// CLI exit codes: 2 validation, 3 contract violation, 4 capacity guard.

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

class ContractError : public std::runtime_error {
 public:
  explicit ContractError(const std::string& msg) : std::runtime_error(msg) {}
};

class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace dplearn
