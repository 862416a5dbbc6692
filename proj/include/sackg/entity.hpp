#pragma once

#include <string>
#include <string_view>

namespace sackg {

// A graph entity. `normalized` is the canonical form (trimmed,
// whitespace-collapsed, case-folded) and is what every identity comparison
// in the system uses; `surface` keeps the original spelling.
struct Entity {
  std::string surface;
  std::string normalized;

  Entity() = default;
  explicit Entity(std::string_view surface_text);

  bool operator==(const Entity& other) const { return normalized == other.normalized; }
};

enum class NodeStatus { Growing, Pruned, Expanded };

std::string_view to_string(NodeStatus s);
NodeStatus node_status_from_string(std::string_view s);

// A (head, relation, tail) fact plus provenance: which frontier entity
// induced it, at which level, on which generation round.
struct Triple {
  Entity head;
  std::string relation;
  Entity tail;
  int level = 1;
  Entity source_entity;
  int round = 0;
};

// Identity of a triple: normalized head, relation and tail joined with a
// separator that cannot occur in normalized text.
std::string dedup_key(std::string_view head, std::string_view relation, std::string_view tail);
std::string dedup_key(const Triple& t);

}  // namespace sackg
