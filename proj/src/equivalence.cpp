#include "cdl/fuzz.hpp"

#include <sstream>

namespace cdl {

std::size_t EquivalenceReport::mismatches() const {
  std::size_t n = 0;
  for (const auto& c : checks) n += !c.match;
  return n;
}

namespace {

std::string tv_text(const std::optional<TruthValue>& tv) { return tv ? std::string(to_string(*tv)) : "-"; }

}  // namespace

std::string EquivalenceReport::text() const {
  std::ostringstream out;
  for (const auto& c : checks) {
    out << c.query.starter.str() << " " << c.query.literal.atom_text();
    if (c.query.ask) out << " (ask " << c.query.ask->str() << ")";
    out << ": distributed=" << tv_text(c.distributed) << " oracle=" << tv_text(c.oracle);
    if (c.labeled) out << " labeled=" << tv_text(c.labeled);
    out << (c.match ? " match" : " MISMATCH");
    if (!c.error.empty()) out << " (" << c.error << ")";
    out << "\n";
    if (!c.match)
      for (const auto& r : c.trace) out << "  " << r.json() << "\n";
  }
  out << (checks.size() - mismatches()) << "/" << checks.size() << " match\n";
  return out.str();
}

QueryContext oracle_context(const InjectedQuery& q) {
  // The protocol numbers contexts per originator; a solo run always gets 1.
  const QueryContextId id = q.starter.str() + "/1";
  return {id, q.starter, make_focus_rules(id, q.focus)};
}

EquivalenceReport check_equivalence(const System& system, const std::vector<InjectedQuery>& queries,
                                    const EquivalenceOptions& options) {
  EquivalenceReport report;
  for (const auto& q : queries) {
    QueryCheck c;
    c.query = q;
    RunResult run_result;
    try {
      run_result = run(system, {q}, options.sim);
      if (const auto& a = run_result.outcomes.front().answer) c.distributed = a->tv;
    } catch (const std::exception& e) {
      c.error = e.what();
    }
    const QueryContext ctx = oracle_context(q);
    const AgentId where = q.ask.value_or(q.starter);
    try {
      c.oracle = oracle_answer(system, ctx, where, q.literal, options.oracle);
    } catch (const OracleBudgetExceeded& e) {
      c.error += (c.error.empty() ? "" : "; ") + std::string(e.what());
    }
    c.match = c.distributed && c.oracle && *c.distributed == *c.oracle;
    if (options.labels && c.oracle && acyclic_query(system, ctx, where, q.literal)) {
      const auto sr = build_support_relation(system, ctx);
      if (sr.diagnostics.empty()) {
        c.labeled = labeled_answer(sr, label(sr, system), system, ctx, where, q.literal);
        c.label_match = *c.labeled == *c.oracle;
      }
    }
    if (!c.match) c.trace = std::move(run_result.trace);
    report.checks.push_back(std::move(c));
  }
  return report;
}

}  // namespace cdl
