#include "sackg/entity.hpp"

#include "sackg/errors.hpp"
#include "sackg/text.hpp"

namespace sackg {

Entity::Entity(std::string_view surface_text) : surface(text::trim(surface_text)) {
  if (surface.empty()) {
    throw InvalidEntityError("entity surface is empty after trimming");
  }
  normalized = text::normalize(surface);
}

std::string_view to_string(NodeStatus s) {
  switch (s) {
    case NodeStatus::Growing:
      return "growing";
    case NodeStatus::Pruned:
      return "pruned";
    case NodeStatus::Expanded:
      return "expanded";
  }
  return "growing";
}

NodeStatus node_status_from_string(std::string_view s) {
  if (s == "growing") return NodeStatus::Growing;
  if (s == "pruned") return NodeStatus::Pruned;
  if (s == "expanded") return NodeStatus::Expanded;
  throw ParseError("unknown node status: " + std::string(s));
}

std::string dedup_key(std::string_view head, std::string_view relation, std::string_view tail) {
  std::string key;
  key.reserve(head.size() + relation.size() + tail.size() + 2);
  key += text::normalize(head);
  key += '\x1f';
  key += text::normalize(relation);
  key += '\x1f';
  key += text::normalize(tail);
  return key;
}

std::string dedup_key(const Triple& t) {
  return dedup_key(t.head.surface, t.relation, t.tail.surface);
}

}  // namespace sackg
