#include "sackg/snapshot.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "sackg/errors.hpp"

namespace sackg {

void write_snapshot(const KgTree& tree, std::ostream& out) {
  for (const Triple& t : tree.triples()) {
    nlohmann::ordered_json rec;
    rec["head"] = t.head.surface;
    rec["relation"] = t.relation;
    rec["tail"] = t.tail.surface;
    rec["level"] = t.level;
    rec["source_entity"] = t.source_entity.surface;
    rec["round"] = t.round;
    rec["head_status"] = to_string(tree.node(t.head.normalized)->status);
    rec["tail_status"] = to_string(tree.node(t.tail.normalized)->status);
    out << rec.dump() << '\n';
  }
}

void write_snapshot(const KgTree& tree, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open snapshot for writing: " + path.string());
  write_snapshot(tree, out);
  if (!out) throw IoError("failed writing snapshot: " + path.string());
}

std::vector<SnapshotRecord> read_snapshot(std::istream& in) {
  std::vector<SnapshotRecord> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json rec;
    try {
      rec = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError("snapshot line " + std::to_string(line_no) + ": " + e.what());
    }
    try {
      SnapshotRecord r;
      r.head = rec.at("head").get<std::string>();
      r.relation = rec.at("relation").get<std::string>();
      r.tail = rec.at("tail").get<std::string>();
      r.level = rec.at("level").get<int>();
      r.source_entity = rec.at("source_entity").get<std::string>();
      r.round = rec.at("round").get<int>();
      r.head_status = rec.at("head_status").get<std::string>();
      r.tail_status = rec.at("tail_status").get<std::string>();
      node_status_from_string(r.head_status);
      node_status_from_string(r.tail_status);
      out.push_back(std::move(r));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError("snapshot line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

std::vector<SnapshotRecord> read_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open snapshot: " + path.string());
  return read_snapshot(in);
}

}  // namespace sackg
