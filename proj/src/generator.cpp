#include "cdl/fuzz.hpp"
#include "cdl/validate.hpp"

#include <algorithm>
#include <stdexcept>

namespace cdl {

namespace {

class Generator {
public:
  Generator(std::mt19937_64& rng, const GenConfig& config) : rng_(rng), config_(config) {}

  GeneratedCase run(std::size_t query_count) {
    GeneratedCase out;
    System& sys = out.system;
    const std::size_t n = config_.agents ? *config_.agents : pick(1, config_.max_agents);
    for (std::size_t i = 0; i < n; ++i) sys.agents.push_back({AgentId("a" + std::to_string(i)), {}, {}, {}});

    for (auto& a : sys.agents) {
      std::vector<AgentId> others;
      for (const auto& b : sys.agents)
        if (b.id != a.id && chance(0.7)) others.push_back(b.id);
      a.known = others;
      std::shuffle(others.begin(), others.end(), rng_);
      a.preference = others;
      std::sort(a.known.begin(), a.known.end());
    }

    const std::size_t rule_cap = config_.rules ? *config_.rules : config_.max_rules;
    if (config_.common_rules && rule_cap > 0 && chance(0.3)) {
      Rule r = local_rule("c1", 0.5);
      r.kind = chance(0.5) ? RuleKind::StrictLocal : RuleKind::DefeasibleLocal;
      sys.common_rules.push_back(r);
    }

    for (auto& a : sys.agents) {
      const std::size_t m = config_.rules ? *config_.rules : pick(0, config_.max_rules);
      for (std::size_t k = 0; k < m; ++k) {
        const std::string id = "r" + std::to_string(k + 1);
        if (!a.known.empty() && chance(0.4))
          a.rules.push_back(mapping_rule(id, a));
        else
          a.rules.push_back(local_rule(id, config_.fact));
      }
      for (const auto& c : sys.common_rules) {
        Rule copy = c;
        copy.id = "ck_" + c.id;
        copy.inherited = true;
        a.rules.push_back(std::move(copy));
      }
    }

    // Focus facts feed existing rule bodies; an empty theory gets none.
    std::vector<Literal> feeds;
    for (const auto& a : sys.agents)
      for (const auto& r : a.rules)
        for (const auto& b : r.body)
          if (std::find(feeds.begin(), feeds.end(), b.bare()) == feeds.end()) feeds.push_back(b.bare());

    for (std::size_t q = 0; q < query_count; ++q) {
      InjectedQuery iq;
      iq.starter = sys.agents[pick(0, n - 1)].id;
      iq.literal = literal();
      const std::size_t focus = feeds.empty() ? 0 : pick(0, config_.max_focus);
      for (std::size_t f = 0; f < focus; ++f) {
        const Literal& l = feeds[pick(0, feeds.size() - 1)];
        if (std::find(iq.focus.begin(), iq.focus.end(), l) == iq.focus.end()) iq.focus.push_back(l);
      }
      if (n > 1 && chance(0.2)) iq.ask = sys.agents[pick(0, n - 1)].id;
      out.queries.push_back(std::move(iq));
    }

    if (auto ds = validate(sys); !ds.empty())
      throw std::logic_error("generated an invalid system: " + ds.front().code + " " + ds.front().message);
    return out;
  }

private:
  std::size_t pick(std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_); }
  bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }

  Literal literal() {
    Literal l;
    l.predicate = "p" + std::to_string(pick(0, config_.predicates - 1));
    l.args = {"c" + std::to_string(pick(0, config_.constants - 1))};
    l.negated = chance(0.3);
    return l;
  }

  Rule local_rule(const std::string& id, double fact) {
    Rule r;
    r.id = id;
    r.kind = chance(config_.strict) ? RuleKind::StrictLocal : RuleKind::DefeasibleLocal;
    r.head = literal();
    if (!chance(fact))
      for (std::size_t b = pick(1, 2); b > 0; --b) r.body.push_back(literal());
    return r;
  }

  Rule mapping_rule(const std::string& id, const AgentSpec& owner) {
    Rule r;
    r.id = id;
    r.kind = RuleKind::Mapping;
    r.head = literal();
    const std::size_t size = pick(1, 2);
    const std::size_t foreign = pick(0, size - 1);
    for (std::size_t b = 0; b < size; ++b) {
      Literal l = literal();
      if (b == foreign) {
        if (chance(config_.schematic))
          l.source = Source::schematic();
        else
          l.source = Source::of(owner.known[pick(0, owner.known.size() - 1)]);
      } else if (chance(0.3)) {
        l.source = chance(config_.schematic) ? Source::schematic()
                                              : Source::of(owner.known[pick(0, owner.known.size() - 1)]);
      }
      r.body.push_back(std::move(l));
    }
    return r;
  }

  std::mt19937_64& rng_;
  const GenConfig& config_;
};

}  // namespace

GeneratedCase generate_case(std::mt19937_64& rng, const GenConfig& config, std::size_t queries) {
  return Generator(rng, config).run(queries);
}

}  // namespace cdl
