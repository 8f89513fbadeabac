#pragma once

#include "cdl/system.hpp"
#include "cdl/validate.hpp"

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cdl {

class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t line, std::size_t column, const std::string& what);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

/// Raised when a syntactically valid scenario breaks a model invariant.
class ScenarioError : public std::runtime_error {
public:
  explicit ScenarioError(std::vector<Diagnostic> diagnostics);

  const std::vector<Diagnostic>& diagnostics() const noexcept { return diagnostics_; }

private:
  std::vector<Diagnostic> diagnostics_;
};

/// Parses and validates. Common rules are replicated into every agent with
/// ids prefixed "ck_".
System parse_scenario(std::string_view text);

/// Parses (and replicates common rules) without running validate().
System parse_scenario_unchecked(std::string_view text);

std::string render_scenario(const System& system);

/// A single literal, e.g. `~edible(m1)` or `death_cap(M)@any`.
Literal parse_literal(std::string_view text);

/// Focus file: one fact per line (`mushroom(m1).`), `#` comments allowed.
std::vector<Literal> parse_facts(std::string_view text);

std::string read_file(const std::string& path);

}  // namespace cdl
