#pragma once

#include <stdexcept>
#include <string>

namespace crossed {

// Domain-level rejection: the input is well-formed but mathematically invalid.
struct invalid_input : std::runtime_error {
  explicit invalid_input(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed file / schema violation.
struct parse_error : std::runtime_error {
  explicit parse_error(const std::string& msg) : std::runtime_error(msg) {}
};

// An exhaustive search would exceed its enforced budget; never sampled silently.
struct budget_error : std::runtime_error {
  explicit budget_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A postcondition the mathematics guarantees failed; indicates a bug, not a verdict.
struct internal_error : std::logic_error {
  explicit internal_error(const std::string& msg) : std::logic_error(msg) {}
};

// Always-on invariant check. These guard algebraic postconditions that must
// never be reconciled silently.
#define CROSSED_CHECK(cond, msg)                                   \
  do {                                                             \
    if (!(cond)) throw ::crossed::internal_error(std::string(msg)); \
  } while (0)

}  // namespace crossed
