#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sackg/entity.hpp"

namespace sackg {

// Per-entity bookkeeping inside a KgTree. `first_tail_level` is the level at
// which the entity first appeared as a tail; unset for entities only ever
// seen as roots or heads. Frontier membership is derived from it.
struct NodeInfo {
  Entity entity;
  NodeStatus status = NodeStatus::Growing;
  std::optional<int> first_tail_level;
  bool is_root = false;
  bool expanded_empty = false;
  std::string note;
};

// The multi-level graph under construction. Triples are deduplicated
// globally by normalized (head, relation, tail); the first occurrence wins.
// Mutation is single-writer; concurrent reads are safe once writes stop.
class KgTree {
 public:
  // Stores t if its dedup key is new; registers head and tail in the node
  // table. Returns false (tree unchanged) for a duplicate key. Throws
  // MalformedTripleError for an empty relation, level < 1 or round < 0.
  bool insert_triple(const Triple& t);

  // Growing entities whose first appearance as a tail was exactly `level`,
  // in node insertion order.
  std::vector<Entity> frontier(int level) const;

  // Legal transitions: growing->expanded, growing->pruned, and no-op
  // same->same. Everything else throws IllegalTransitionError; an unknown
  // entity throws UnknownEntityError.
  void mark_status(const Entity& e, NodeStatus s);

  // Registers e as a root node (growing, no tail level). Duplicates are
  // ignored.
  void add_root(const Entity& e);

  void mark_expanded(const Entity& e);
  // Expansion finished with nothing to insert; the entity is still marked
  // expanded so it is never retried. `reason` is diagnostic only.
  void mark_expanded_empty(const Entity& e, std::string reason);

  bool has_node(std::string_view normalized) const;
  std::optional<NodeStatus> status_of(std::string_view normalized) const;
  bool is_expanded_empty(std::string_view normalized) const;
  const NodeInfo* node(std::string_view normalized) const;

  const std::vector<Triple>& triples() const { return triples_; }
  const std::vector<Entity>& roots() const { return roots_; }
  // Node identities in insertion order.
  const std::vector<std::string>& node_order() const { return node_order_; }

  std::size_t size() const { return triples_.size(); }
  std::size_t node_count() const { return nodes_.size(); }
  int max_level_reached() const { return max_level_reached_; }

 private:
  NodeInfo& ensure_node(const Entity& e);

  std::vector<Triple> triples_;
  std::unordered_map<std::string, std::size_t> by_key_;
  std::unordered_map<std::string, NodeInfo> nodes_;
  std::vector<std::string> node_order_;
  std::vector<Entity> roots_;
  int max_level_reached_ = 0;
};

}  // namespace sackg
