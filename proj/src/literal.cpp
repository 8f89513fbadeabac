#include "cdl/literal.hpp"

#include <algorithm>
#include <cctype>

namespace cdl {

namespace {

bool is_tail_char(char c) {
  return std::islower(static_cast<unsigned char>(c)) || std::isdigit(static_cast<unsigned char>(c)) ||
         c == '_';
}

}  // namespace

bool is_name_token(std::string_view s) {
  if (s.empty()) return false;
  const auto first = static_cast<unsigned char>(s.front());
  if (!(std::islower(first) || std::isdigit(first) || s.front() == '_')) return false;
  return std::all_of(s.begin(), s.end(), is_tail_char);
}

bool is_variable_token(std::string_view s) {
  if (s.empty() || !std::isupper(static_cast<unsigned char>(s.front()))) return false;
  return std::all_of(s.begin() + 1, s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

bool is_valid_agent_name(std::string_view s) {
  return is_name_token(s) && s != kReservedAny && s != kReservedLocal;
}

bool Literal::ground() const {
  return std::none_of(args.begin(), args.end(), [](const std::string& a) { return is_variable_token(a); });
}

Literal Literal::complement() const {
  Literal c = *this;
  c.negated = !negated;
  return c;
}

Literal Literal::bare() const {
  Literal b = *this;
  b.source = Source::local();
  return b;
}

Literal Literal::with_source(Source s) const {
  Literal b = *this;
  b.source = std::move(s);
  return b;
}

std::string Literal::atom_text() const {
  std::string out;
  if (negated) out += '~';
  out += predicate;
  if (!args.empty()) {
    out += '(';
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (i) out += ',';
      out += args[i];
    }
    out += ')';
  }
  return out;
}

std::string Literal::text() const {
  std::string out = atom_text();
  switch (source.kind) {
    case Source::Kind::Local:
      break;
    case Source::Kind::Agent:
      out += '@' + source.agent.str();
      break;
    case Source::Kind::Schematic:
      out += "@any";
      break;
  }
  return out;
}

std::set<std::string> constants_of(const Literal& l) {
  std::set<std::string> out;
  for (const auto& a : l.args)
    if (!is_variable_token(a)) out.insert(a);
  return out;
}

}  // namespace cdl
