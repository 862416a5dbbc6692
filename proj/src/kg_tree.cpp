#include "sackg/kg_tree.hpp"

#include <algorithm>

#include "sackg/errors.hpp"
#include "sackg/text.hpp"

namespace sackg {

NodeInfo& KgTree::ensure_node(const Entity& e) {
  auto it = nodes_.find(e.normalized);
  if (it == nodes_.end()) {
    NodeInfo info;
    info.entity = e;
    it = nodes_.emplace(e.normalized, std::move(info)).first;
    node_order_.push_back(e.normalized);
  }
  return it->second;
}

bool KgTree::insert_triple(const Triple& t) {
  if (text::trim(t.relation).empty()) {
    throw MalformedTripleError("triple relation is empty");
  }
  if (t.level < 1) {
    throw MalformedTripleError("triple level must be >= 1, got " + std::to_string(t.level));
  }
  if (t.round < 0) {
    throw MalformedTripleError("triple round must be >= 0, got " + std::to_string(t.round));
  }

  std::string key = dedup_key(t);
  if (by_key_.count(key) > 0) return false;

  by_key_.emplace(std::move(key), triples_.size());
  triples_.push_back(t);
  max_level_reached_ = std::max(max_level_reached_, t.level);

  bool head_is_new = nodes_.find(t.head.normalized) == nodes_.end();
  NodeInfo& head = ensure_node(t.head);
  if (head_is_new && t.head.normalized == t.source_entity.normalized) {
    head.status = NodeStatus::Expanded;
  }

  NodeInfo& tail = ensure_node(t.tail);
  if (!tail.first_tail_level.has_value()) {
    tail.first_tail_level = t.level;
  }
  return true;
}

std::vector<Entity> KgTree::frontier(int level) const {
  std::vector<Entity> out;
  for (const std::string& norm : node_order_) {
    const NodeInfo& info = nodes_.at(norm);
    if (info.status == NodeStatus::Growing && info.first_tail_level.has_value() &&
        *info.first_tail_level == level) {
      out.push_back(info.entity);
    }
  }
  return out;
}

void KgTree::mark_status(const Entity& e, NodeStatus s) {
  auto it = nodes_.find(e.normalized);
  if (it == nodes_.end()) {
    throw UnknownEntityError("entity not in tree: " + e.surface);
  }
  NodeStatus current = it->second.status;
  if (current == s) return;
  bool legal = current == NodeStatus::Growing &&
               (s == NodeStatus::Expanded || s == NodeStatus::Pruned);
  if (!legal) {
    throw IllegalTransitionError("illegal status transition " + std::string(to_string(current)) +
                                 " -> " + std::string(to_string(s)) + " for " + e.surface);
  }
  it->second.status = s;
}

void KgTree::add_root(const Entity& e) {
  if (nodes_.count(e.normalized) > 0) return;
  NodeInfo& info = ensure_node(e);
  info.is_root = true;
  roots_.push_back(e);
}

void KgTree::mark_expanded(const Entity& e) {
  mark_status(e, NodeStatus::Expanded);
}

void KgTree::mark_expanded_empty(const Entity& e, std::string reason) {
  mark_status(e, NodeStatus::Expanded);
  auto& info = nodes_.at(e.normalized);
  info.expanded_empty = true;
  info.note = std::move(reason);
}

bool KgTree::has_node(std::string_view normalized) const {
  return nodes_.count(std::string(normalized)) > 0;
}

std::optional<NodeStatus> KgTree::status_of(std::string_view normalized) const {
  auto it = nodes_.find(std::string(normalized));
  if (it == nodes_.end()) return std::nullopt;
  return it->second.status;
}

bool KgTree::is_expanded_empty(std::string_view normalized) const {
  auto it = nodes_.find(std::string(normalized));
  return it != nodes_.end() && it->second.expanded_empty;
}

const NodeInfo* KgTree::node(std::string_view normalized) const {
  auto it = nodes_.find(std::string(normalized));
  return it == nodes_.end() ? nullptr : &it->second;
}

}  // namespace sackg
