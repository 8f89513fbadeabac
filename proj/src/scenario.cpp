#include "cdl/scenario.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace cdl {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& what)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

namespace {

std::string join_diagnostics(const std::vector<Diagnostic>& ds) {
  std::string out;
  for (const auto& d : ds) {
    if (!out.empty()) out += "; ";
    out += d.text();
  }
  return out;
}

}  // namespace

ScenarioError::ScenarioError(std::vector<Diagnostic> diagnostics)
    : std::runtime_error(join_diagnostics(diagnostics)), diagnostics_(std::move(diagnostics)) {}

namespace {

enum class Tok { Word, Sym, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

class Lexer {
public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_blank();
      Token t;
      t.line = line_;
      t.column = col_;
      if (pos_ >= src_.size()) {
        out.push_back(t);
        return out;
      }
      const char c = src_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
        t.kind = Tok::Word;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
          t.text += advance();
      } else if (c == '<' && pos_ + 1 < src_.size() && (src_[pos_ + 1] == '-' || src_[pos_ + 1] == '=')) {
        t.kind = Tok::Sym;
        t.text += advance();
        t.text += advance();
      } else if (std::string_view("{}(),.:~@").find(c) != std::string_view::npos) {
        t.kind = Tok::Sym;
        t.text += advance();
      } else {
        throw ParseError(line_, col_, std::string("unexpected character '") + c + "'");
      }
      out.push_back(std::move(t));
    }
  }

private:
  char advance() {
    const char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_blank() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

class Parser {
public:
  explicit Parser(std::string_view src) : toks_(Lexer(src).run()) {}

  System parse_system() {
    System sys;
    while (!at_end()) {
      const Token& t = peek();
      if (is_word("system")) {
        next();
        expect_word("common");
        expect_sym("{");
        while (!is_sym("}")) sys.common_rules.push_back(parse_rule());
        next();
      } else if (is_word("agent")) {
        next();
        sys.agents.push_back(parse_agent());
      } else if (is_word("absent")) {
        next();
        for (auto& a : parse_name_list()) sys.absent.push_back(std::move(a));
      } else {
        fail(t, "expected 'system', 'agent' or 'absent', found '" + t.text + "'");
      }
    }
    return sys;
  }

  Literal parse_single_literal() {
    Literal l = parse_literal();
    if (is_sym(".")) next();
    if (!at_end()) fail(peek(), "trailing input after literal");
    return l;
  }

  std::vector<Literal> parse_fact_list() {
    std::vector<Literal> out;
    while (!at_end()) {
      Literal l = parse_literal();
      if (is_sym("<=") || is_sym("<-")) next();
      expect_sym(".");
      out.push_back(std::move(l));
    }
    return out;
  }

private:
  AgentSpec parse_agent() {
    AgentSpec spec;
    spec.id = AgentId(expect_name("agent name"));
    expect_sym("{");
    while (!is_sym("}")) {
      if (is_word("knows") && peek(1).text == ":") {
        next();
        next();
        spec.known = parse_name_list();
      } else if (is_word("trust") && peek(1).text == ":") {
        next();
        next();
        spec.preference = parse_name_list();
      } else {
        spec.rules.push_back(parse_rule());
      }
    }
    next();
    return spec;
  }

  std::vector<AgentId> parse_name_list() {
    std::vector<AgentId> out;
    if (is_sym(".")) {
      next();
      return out;
    }
    while (true) {
      out.emplace_back(expect_name("agent name"));
      if (is_sym(",")) {
        next();
        continue;
      }
      expect_sym(".");
      return out;
    }
  }

  Rule parse_rule() {
    const Token& kw = peek();
    Rule r;
    std::string arrow;
    if (is_word("strict")) {
      r.kind = RuleKind::StrictLocal;
      arrow = "<-";
    } else if (is_word("defeasible")) {
      r.kind = RuleKind::DefeasibleLocal;
      arrow = "<=";
    } else if (is_word("mapping")) {
      r.kind = RuleKind::Mapping;
      arrow = "<=";
    } else {
      fail(kw, "expected rule keyword (strict|defeasible|mapping), found '" + kw.text + "'");
    }
    next();
    r.id = expect_name("rule id");
    expect_sym(":");
    r.head = parse_literal();
    const Token& a = peek();
    if (a.text != arrow)
      fail(a, std::string(to_string(r.kind)) + " rule " + r.id + " must use '" + arrow + "'");
    next();
    if (!is_sym(".")) {
      while (true) {
        r.body.push_back(parse_literal());
        if (is_sym(",")) {
          next();
          continue;
        }
        break;
      }
    }
    expect_sym(".");
    return r;
  }

  Literal parse_literal() {
    Literal l;
    if (is_sym("~")) {
      next();
      l.negated = true;
    }
    const Token& p = peek();
    if (p.kind != Tok::Word || !is_name_token(p.text)) fail(p, "expected predicate name, found '" + p.text + "'");
    l.predicate = p.text;
    next();
    if (is_sym("(")) {
      next();
      if (!is_sym(")")) {
        while (true) {
          const Token& arg = peek();
          if (arg.kind != Tok::Word || !(is_name_token(arg.text) || is_variable_token(arg.text)))
            fail(arg, "expected constant or variable, found '" + arg.text + "'");
          l.args.push_back(arg.text);
          next();
          if (is_sym(",")) {
            next();
            continue;
          }
          break;
        }
      }
      expect_sym(")");
    }
    if (is_sym("@")) {
      next();
      const Token& s = peek();
      if (s.kind != Tok::Word || !is_name_token(s.text)) fail(s, "expected agent name after '@'");
      if (s.text == kReservedAny)
        l.source = Source::schematic();
      else if (s.text == kReservedLocal)
        l.source = Source::local();
      else
        l.source = Source::of(AgentId(s.text));
      next();
    }
    return l;
  }

  const Token& peek(std::size_t ahead = 0) const {
    const std::size_t i = std::min(pos_ + ahead, toks_.size() - 1);
    return toks_[i];
  }
  void next() {
    if (pos_ + 1 < toks_.size()) ++pos_;
  }
  bool at_end() const { return peek().kind == Tok::End; }
  bool is_word(std::string_view w) const { return peek().kind == Tok::Word && peek().text == w; }
  bool is_sym(std::string_view s) const { return peek().kind == Tok::Sym && peek().text == s; }

  [[noreturn]] void fail(const Token& t, const std::string& msg) const {
    throw ParseError(t.line, t.column, t.kind == Tok::End ? msg + " (at end of input)" : msg);
  }

  void expect_sym(std::string_view s) {
    if (!is_sym(s)) fail(peek(), "expected '" + std::string(s) + "', found '" + peek().text + "'");
    next();
  }
  void expect_word(std::string_view w) {
    if (!is_word(w)) fail(peek(), "expected '" + std::string(w) + "', found '" + peek().text + "'");
    next();
  }
  std::string expect_name(std::string_view what) {
    const Token& t = peek();
    if (t.kind != Tok::Word || !is_name_token(t.text))
      fail(t, "expected " + std::string(what) + ", found '" + t.text + "'");
    std::string out = t.text;
    next();
    return out;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

void replicate_common(System& sys) {
  for (auto& agent : sys.agents) {
    for (const auto& c : sys.common_rules) {
      Rule copy = c;
      copy.id = "ck_" + c.id;
      copy.inherited = true;
      agent.rules.push_back(std::move(copy));
    }
  }
}

}  // namespace

System parse_scenario_unchecked(std::string_view text) {
  System sys = Parser(text).parse_system();
  replicate_common(sys);
  return sys;
}

System parse_scenario(std::string_view text) {
  System sys = parse_scenario_unchecked(text);
  if (auto ds = validate(sys); !ds.empty()) throw ScenarioError(std::move(ds));
  return sys;
}

std::string render_scenario(const System& system) {
  std::ostringstream out;
  auto names = [](const std::vector<AgentId>& ids) {
    std::string s;
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (i) s += ", ";
      s += ids[i].str();
    }
    return s;
  };
  if (!system.common_rules.empty()) {
    out << "system common {\n";
    for (const auto& r : system.common_rules) out << "  " << r.text() << "\n";
    out << "}\n";
  }
  for (const auto& a : system.agents) {
    out << "agent " << a.id.str() << " {\n";
    out << "  knows: " << names(a.known) << ".\n";
    out << "  trust: " << names(a.preference) << ".\n";
    for (const auto& r : a.rules)
      if (!r.inherited) out << "  " << r.text() << "\n";
    out << "}\n";
  }
  if (!system.absent.empty()) out << "absent " << names(system.absent) << ".\n";
  return out.str();
}

Literal parse_literal(std::string_view text) { return Parser(text).parse_single_literal(); }

std::vector<Literal> parse_facts(std::string_view text) {
  // One fact per line; a missing trailing '.' is tolerated.
  std::string normalized;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    std::string body = line.substr(0, hash);
    const auto last = body.find_last_not_of(" \t\r");
    if (last == std::string::npos) {
      normalized += line + "\n";
      continue;
    }
    body.erase(last + 1);
    if (body.back() != '.') body += '.';
    normalized += body + (hash == std::string::npos ? "" : line.substr(hash)) + "\n";
  }
  return Parser(normalized).parse_fact_list();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace cdl
