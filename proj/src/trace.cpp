#include "cdl/trace.hpp"

#include "json.hpp"

namespace cdl {

namespace {

using ojson = nlohmann::ordered_json;

ojson set_json(const std::optional<SupportSet>& s) {
  if (!s) return nullptr;
  ojson arr = ojson::array();
  for (const auto& e : *s) arr.push_back(e.text());
  return arr;
}

}  // namespace

TraceRecord TraceRecord::of(std::uint64_t seed, std::size_t step, const Envelope& e) {
  TraceRecord r;
  r.seed = seed;
  r.step = step;
  r.from = e.from;
  r.to = e.to;
  if (const auto* q = std::get_if<QueryMsg>(&e.msg)) {
    r.ctx = q->ctx;
    r.literal = q->literal;
  } else {
    const auto& a = std::get<AnswerMsg>(e.msg);
    r.is_query = false;
    r.ctx = a.ctx;
    r.literal = a.literal;
    r.tv = a.tv;
    r.bs = a.bs;
    r.ss = a.ss;
  }
  return r;
}

std::string TraceRecord::json() const {
  ojson j;
  j["seed"] = seed;
  j["step"] = step;
  j["from"] = from.str();
  j["to"] = to.str();
  j["kind"] = is_query ? "query" : "answer";
  j["ctx"] = ctx;
  j["literal"] = literal.atom_text();
  j["tv"] = tv ? ojson(std::string(to_string(*tv))) : ojson(nullptr);
  j["bs"] = set_json(bs);
  j["ss"] = set_json(ss);
  return j.dump();
}

std::string trace_jsonl(const std::vector<TraceRecord>& trace) {
  std::string out;
  for (const auto& r : trace) {
    out += r.json();
    out += '\n';
  }
  return out;
}

std::string summary_json(const std::string& query, std::optional<TruthValue> tv, std::size_t steps,
                         std::size_t messages) {
  ojson j;
  j["query"] = query;
  j["tv"] = tv ? ojson(std::string(to_string(*tv))) : ojson(nullptr);
  j["steps"] = steps;
  j["messages"] = messages;
  return j.dump();
}

}  // namespace cdl
