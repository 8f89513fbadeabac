#pragma once

#include "cdl/argumentation.hpp"
#include "cdl/simnet.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace cdl {

// ---- equivalence -----------------------------------------------------------

struct QueryCheck {
  InjectedQuery query;
  std::optional<TruthValue> distributed;  // missing if the run failed
  std::optional<TruthValue> oracle;       // missing if the oracle gave up
  std::optional<TruthValue> labeled;      // only for acyclic queries
  bool match = false;
  bool label_match = true;
  std::string error;
  std::vector<TraceRecord> trace;  // kept for mismatches only
};

struct EquivalenceReport {
  std::vector<QueryCheck> checks;
  std::size_t mismatches() const;
  std::string text() const;
};

struct EquivalenceOptions {
  SimConfig sim;
  bool labels = false;  // also compare the labelling on acyclic queries
  OracleOptions oracle;
};

/// The context the oracle sees for an injected query.
QueryContext oracle_context(const InjectedQuery& q);

EquivalenceReport check_equivalence(const System& system, const std::vector<InjectedQuery>& queries,
                                    const EquivalenceOptions& options = {});

// ---- random systems --------------------------------------------------------

struct GenConfig {
  std::size_t max_agents = 5;
  std::size_t max_rules = 10;  // per agent
  std::size_t predicates = 3;
  std::size_t constants = 3;
  double schematic = 0.3;      // chance a mapping member is schematic
  double strict = 0.15;        // chance a local rule is strict
  double fact = 0.3;           // chance a local rule has an empty body
  bool common_rules = true;
  std::size_t max_focus = 2;
  /// Exact sizes instead of upper bounds.
  std::optional<std::size_t> agents;
  std::optional<std::size_t> rules;
};

struct GeneratedCase {
  System system;
  std::vector<InjectedQuery> queries;
};

GeneratedCase generate_case(std::mt19937_64& rng, const GenConfig& config, std::size_t queries = 1);

// ---- campaign ---------------------------------------------------------------

struct CampaignConfig {
  std::uint64_t seed = 1;
  std::size_t count = 200;
  std::size_t queries_per_system = 1;
  GenConfig gen;
  SchedulePolicy policy = SchedulePolicy::Random;
  bool labels = true;
  bool minimize = true;
};

struct Counterexample {
  std::size_t iteration = 0;
  std::string scenario;  // minimized, in scenario syntax
  InjectedQuery query;
  std::optional<TruthValue> distributed;
  std::optional<TruthValue> oracle;
  std::string error;

  bool operator==(const Counterexample& o) const;
};

struct CampaignReport {
  std::size_t systems = 0;
  std::size_t queries = 0;
  std::size_t mismatches = 0;
  std::size_t failures = 0;  // runs that hit max_steps or the oracle budget
  std::size_t label_checked = 0;
  std::size_t label_mismatches = 0;
  std::vector<Counterexample> counterexamples;

  bool operator==(const CampaignReport&) const = default;
  std::string text() const;
};

/// Seed of iteration `i`, independent of how iterations are scheduled.
std::uint64_t iteration_seed(std::uint64_t seed, std::size_t i);

CampaignReport run_campaign_serial(const CampaignConfig& config);
/// Same report as the serial campaign; iterations are spread over OpenMP
/// threads and merged in iteration order.
CampaignReport run_campaign_parallel(const CampaignConfig& config);

/// Greedily drops rules while `query` still shows a mismatch.
System minimize_counterexample(const System& system, const InjectedQuery& query, const EquivalenceOptions& options);

}  // namespace cdl
