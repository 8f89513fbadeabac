#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace cdl {

/// Name of an agent. Lowercase letters, digits and underscore; never "any".
class AgentId {
public:
  AgentId() = default;
  explicit AgentId(std::string name) : name_(std::move(name)) {}

  const std::string& str() const noexcept { return name_; }
  bool empty() const noexcept { return name_.empty(); }

  auto operator<=>(const AgentId&) const = default;

private:
  std::string name_;
};

inline constexpr std::string_view kReservedAny = "any";
inline constexpr std::string_view kReservedLocal = "local";

bool is_name_token(std::string_view s);
bool is_variable_token(std::string_view s);
bool is_valid_agent_name(std::string_view s);

/// Where a literal is defined: the owning agent, a named foreign agent, or
/// any known agent (resolved when the query runs).
struct Source {
  enum class Kind { Local, Agent, Schematic };

  Kind kind = Kind::Local;
  AgentId agent;  // set only for Kind::Agent

  static Source local() { return {}; }
  static Source schematic() { return {Kind::Schematic, {}}; }
  static Source of(AgentId a) { return {Kind::Agent, std::move(a)}; }

  bool is_local() const noexcept { return kind == Kind::Local; }
  bool is_agent() const noexcept { return kind == Kind::Agent; }
  bool is_schematic() const noexcept { return kind == Kind::Schematic; }

  auto operator<=>(const Source&) const = default;
};

struct Literal {
  std::string predicate;
  std::vector<std::string> args;
  bool negated = false;
  Source source;

  bool ground() const;
  Literal complement() const;
  /// Same atom and sign, source reset to Local.
  Literal bare() const;
  Literal with_source(Source s) const;

  /// `~p(a,b)` without the source suffix.
  std::string atom_text() const;
  /// `~p(a,b)@bob` / `@any`; local literals print without suffix.
  std::string text() const;

  auto operator<=>(const Literal&) const = default;
};

/// A literal pinned to the agent that defines it: history entries and
/// support-set elements.
struct LocatedLiteral {
  Literal literal;  // always bare (source Local)
  AgentId agent;

  std::string text() const { return literal.atom_text() + "@" + agent.str(); }
  auto operator<=>(const LocatedLiteral&) const = default;
};

std::set<std::string> constants_of(const Literal& l);

}  // namespace cdl

template <>
struct std::hash<cdl::AgentId> {
  std::size_t operator()(const cdl::AgentId& a) const noexcept {
    return std::hash<std::string>{}(a.str());
  }
};
