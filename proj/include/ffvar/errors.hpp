// Error taxonomy shared across the library.
//
// GuardrailError  -- an enumeration or sampling request exceeds the
//                    configured work bound (CLI exit code 3).
// WindowError     -- arguments fall outside a formula's validity window
//                    or a documented support cap (CLI exit code 2).
// IdentityError   -- an exact identity that must hold failed to hold
//                    (CLI exit code 1).  This is always a bug or a
//                    genuine counterexample, never a tolerance issue.

#pragma once

#include <stdexcept>
#include <string>

namespace ffvar {

struct GuardrailError : std::runtime_error {
  explicit GuardrailError(const std::string& msg) : std::runtime_error(msg) {}
};

struct WindowError : std::runtime_error {
  explicit WindowError(const std::string& msg) : std::runtime_error(msg) {}
};

struct IdentityError : std::runtime_error {
  explicit IdentityError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace ffvar
