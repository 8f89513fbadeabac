#pragma once

#include "cdl/system.hpp"

#include <string>
#include <vector>

namespace cdl {

struct Diagnostic {
  std::string code;     // machine-readable, e.g. DUP_RULE_ID
  std::string subject;  // offending agent and/or rule, "alice/ra1"
  std::string message;

  std::string text() const { return code + " " + subject + ": " + message; }
  bool operator==(const Diagnostic&) const = default;
};

/// Empty iff every model invariant holds.
std::vector<Diagnostic> validate(const System& system);

}  // namespace cdl
