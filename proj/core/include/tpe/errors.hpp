#pragma once

#include <stdexcept>
#include <string>

namespace tpe {

// Invalid option values, malformed declarations, broken preconditions that
// originate from how the caller configured things.
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string &what) : std::runtime_error(what) {}
};

// Evaluation point outside the domain an object was built for.
class DomainError : public std::runtime_error {
public:
  explicit DomainError(const std::string &what) : std::runtime_error(what) {}
};

// Malformed or insufficient observation data.
class DataError : public std::runtime_error {
public:
  explicit DataError(const std::string &what) : std::runtime_error(what) {}
};

} // namespace tpe
