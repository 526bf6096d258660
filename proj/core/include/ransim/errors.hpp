#pragma once

#include <stdexcept>
#include <string>

namespace ransim {

// Invalid or inconsistent user-supplied configuration.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Caller broke an API precondition (wrong shapes, stale cache, ...).
class ContractViolation : public std::logic_error {
 public:
  explicit ContractViolation(const std::string& what) : std::logic_error(what) {}
};

#define RANSIM_REQUIRE(cond, msg)                 \
  do {                                            \
    if (!(cond)) throw ::ransim::ContractViolation(msg); \
  } while (0)

}  // namespace ransim
