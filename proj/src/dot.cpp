#include "cdl/argumentation.hpp"

#include <set>
#include <sstream>

namespace cdl {

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string html_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

class DotWriter {
public:
  DotWriter(const SupportRelation& sr, const Labeling* labeling) : sr_(sr), labeling_(labeling) {}

  std::string run() {
    std::vector<const Argument*> roots = maximal_arguments(sr_);
    // Supporters that appear in no drawn tree are drawn on their own.
    std::set<std::string> drawn;
    for (const auto* a : roots) mark(a->tree, drawn);
    for (std::size_t i = 0; i < roots.size(); ++i) {
      for (const auto& leaf : foreign_support(roots[i]->tree))
        for (const auto& s : sr_.arguments)
          if (s.owner == leaf.agent && s.conclusion() == leaf.literal && !drawn.count(s.key())) {
            roots.push_back(&s);
            mark(s.tree, drawn);
          }
    }
    std::map<AgentId, std::vector<const Argument*>> by_owner;
    for (const auto* a : roots) by_owner[a->owner].push_back(a);

    std::ostringstream body;
    std::size_t cluster = 0;
    for (const auto& [owner, args] : by_owner) {
      body << "  subgraph cluster_" << cluster++ << " {\n";
      body << "    label=" << quoted(owner.str()) << ";\n";
      for (const auto* a : args) emit(a->tree, body);
      body << "  }\n";
    }

    std::ostringstream out;
    out << "digraph " << quoted(sr_.ctx) << " {\n";
    out << "  rankdir=TB;\n";
    out << "  node [shape=ellipse, fontname=\"Helvetica\"];\n";
    out << body.str();
    for (const auto& e : edges_) out << "  " << e << ";\n";
    for (const auto& [leaf_id, leaf] : leaves_)
      for (const auto& s : sr_.arguments)
        if (s.owner == leaf.agent && s.conclusion() == leaf.literal)
          if (auto it = first_.find(s.key()); it != first_.end())
            out << "  " << leaf_id << " -> " << it->second << " [style=dashed];\n";
    out << "}\n";
    return out.str();
  }

private:
  static void mark(const ProofNode& n, std::set<std::string>& drawn) {
    if (n.foreign_leaf()) return;
    drawn.insert(n.key());
    for (const auto& c : n.children) mark(c, drawn);
  }

  std::string emit(const ProofNode& n, std::ostringstream& out) {
    const std::string id = "n" + std::to_string(next_++);
    if (n.foreign_leaf()) {
      out << "    " << id << " [shape=box, label=" << quoted(n.literal.atom_text() + "@" + n.agent.str()) << "];\n";
      leaves_.emplace_back(id, LocatedLiteral{n.literal, n.agent});
      return id;
    }
    first_.try_emplace(n.key(), id);
    const Label l = status(n);
    const std::string text = n.literal.atom_text();
    out << "    " << id << " [";
    if (l == Label::Rejected)
      out << "label=<<S>" << html_escape(text) << "</S>>";
    else
      out << "label=" << quoted(text);
    if (l == Label::Justified) out << ", peripheries=2";
    out << "];\n";
    if (n.fact()) {
      const std::string top = "n" + std::to_string(next_++);
      out << "    " << top << " [shape=plaintext, label=\"⊤\"];\n";
      edges_.push_back(id + " -> " + top);
    }
    for (const auto& c : n.children) edges_.push_back(id + " -> " + emit(c, out));
    return id;
  }

  Label status(const ProofNode& n) const {
    if (!labeling_) return Label::Undecided;
    auto it = labeling_->labels.find(n.key());
    return it == labeling_->labels.end() ? Label::Undecided : it->second;
  }

  const SupportRelation& sr_;
  const Labeling* labeling_;
  std::size_t next_ = 0;
  std::vector<std::string> edges_;
  std::vector<std::pair<std::string, LocatedLiteral>> leaves_;
  std::map<std::string, std::string> first_;
};

}  // namespace

std::string to_dot(const SupportRelation& sr, const Labeling* labeling) { return DotWriter(sr, labeling).run(); }

}  // namespace cdl
