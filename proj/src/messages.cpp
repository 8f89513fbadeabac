#include "cdl/messages.hpp"

#include <algorithm>

namespace cdl {

bool History::contains(const LocatedLiteral& e) const {
  return std::find(visited.begin(), visited.end(), e) != visited.end();
}

History History::extended(LocatedLiteral e) const {
  History h = *this;
  h.visited.push_back(std::move(e));
  return h;
}

std::vector<LocatedLiteral> History::key() const {
  std::vector<LocatedLiteral> k = visited;
  std::sort(k.begin(), k.end());
  k.erase(std::unique(k.begin(), k.end()), k.end());
  return k;
}

AnswerMsg vocabulary_miss_from(const AgentId& sender, const QueryMsg& q) {
  AnswerMsg a;
  a.ctx = q.ctx;
  a.literal = q.literal;
  a.tv = TruthValue::Undefined;
  a.sender = sender;
  a.reply_to = q.corr;
  return a;
}

}  // namespace cdl
