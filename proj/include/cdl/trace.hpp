#pragma once

#include "cdl/messages.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cdl {

/// One delivered message.
struct TraceRecord {
  std::uint64_t seed = 0;
  std::size_t step = 0;
  AgentId from;
  AgentId to;
  bool is_query = true;
  QueryContextId ctx;
  Literal literal;
  std::optional<TruthValue> tv;
  std::optional<SupportSet> bs;
  std::optional<SupportSet> ss;

  static TraceRecord of(std::uint64_t seed, std::size_t step, const Envelope& e);
  /// Single-line JSON, fields in a fixed order.
  std::string json() const;
};

std::string trace_jsonl(const std::vector<TraceRecord>& trace);

/// {"query":..,"tv":..,"steps":n,"messages":m}
std::string summary_json(const std::string& query, std::optional<TruthValue> tv, std::size_t steps,
                         std::size_t messages);

}  // namespace cdl
