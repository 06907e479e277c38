#pragma once

#include <stdexcept>
#include <string>

namespace packlab {

/// Malformed or inconsistent caller input (parse errors, mismatched groups, bad seeds).
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

/// A computation refused to run because it would exceed a configured size guard.
class SizeGuardError : public std::length_error {
 public:
  explicit SizeGuardError(const std::string& what) : std::length_error(what) {}
};

/// A certificate or self-check failed. The message names the failed clause.
class VerificationError : public std::runtime_error {
 public:
  explicit VerificationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace packlab
