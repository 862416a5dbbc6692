#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "sackg/kg_tree.hpp"

namespace sackg {

// One line of a snapshot file. Statuses are the final node statuses at the
// time the snapshot was written.
struct SnapshotRecord {
  std::string head;
  std::string relation;
  std::string tail;
  int level = 1;
  std::string source_entity;
  int round = 0;
  std::string head_status;
  std::string tail_status;
};

// Line-delimited JSON, one triple per line, fields in fixed order:
// head, relation, tail, level, source_entity, round, head_status, tail_status.
void write_snapshot(const KgTree& tree, std::ostream& out);
void write_snapshot(const KgTree& tree, const std::filesystem::path& path);

std::vector<SnapshotRecord> read_snapshot(std::istream& in);
std::vector<SnapshotRecord> read_snapshot(const std::filesystem::path& path);

}  // namespace sackg
