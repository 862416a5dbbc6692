#include "sackg/exporter.hpp"

#include <map>
#include <ostream>

#include "sackg/entity.hpp"
#include "sackg/errors.hpp"
#include "sackg/text.hpp"

namespace sackg {

namespace {

struct ExportNode {
  std::string surface;
  std::string status;
  int level = 0;  // first level seen as a tail; 0 for root-only heads
};

// Nodes in first-appearance order, keyed by normalized surface.
std::pair<std::vector<std::string>, std::map<std::string, ExportNode>> collect_nodes(
    const std::vector<SnapshotRecord>& records) {
  std::vector<std::string> order;
  std::map<std::string, ExportNode> nodes;
  auto touch = [&](const std::string& surface, const std::string& status, int tail_level) {
    std::string key = text::normalize(surface);
    auto it = nodes.find(key);
    if (it == nodes.end()) {
      nodes[key] = {surface, status, tail_level};
      order.push_back(key);
    } else if (it->second.level == 0 && tail_level > 0) {
      it->second.level = tail_level;
    }
  };
  for (const SnapshotRecord& rec : records) {
    touch(rec.head, rec.head_status, 0);
    touch(rec.tail, rec.tail_status, rec.level);
  }
  return {std::move(order), std::move(nodes)};
}

std::string dot_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

}  // namespace

ExportFormat export_format_from_string(const std::string& s) {
  if (s == "dot") return ExportFormat::Dot;
  if (s == "graphml") return ExportFormat::GraphMl;
  if (s == "tsv") return ExportFormat::Tsv;
  throw UnknownFormatError("unknown export format: \"" + s + "\" (expected dot, graphml or tsv)");
}

void export_dot(const std::vector<SnapshotRecord>& records, std::ostream& out) {
  auto [order, nodes] = collect_nodes(records);
  out << "digraph kg {\n";
  out << "  rankdir=LR;\n";
  for (const std::string& key : order) {
    const ExportNode& node = nodes[key];
    out << "  \"" << dot_escape(key) << "\" [label=\"" << dot_escape(node.surface) << "\"";
    if (node.status == "pruned") out << " style=dashed color=gray";
    out << "];\n";
  }
  for (const SnapshotRecord& rec : records) {
    out << "  \"" << dot_escape(text::normalize(rec.head)) << "\" -> \""
        << dot_escape(text::normalize(rec.tail)) << "\" [label=\"" << dot_escape(rec.relation)
        << "\"];\n";
  }
  out << "}\n";
}

void export_graphml(const std::vector<SnapshotRecord>& records, std::ostream& out) {
  auto [order, nodes] = collect_nodes(records);
  std::map<std::string, std::size_t> ids;
  for (std::size_t i = 0; i < order.size(); ++i) ids[order[i]] = i;

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n";
  out << "  <key id=\"d0\" for=\"node\" attr.name=\"surface\" attr.type=\"string\"/>\n";
  out << "  <key id=\"d1\" for=\"node\" attr.name=\"status\" attr.type=\"string\"/>\n";
  out << "  <key id=\"d2\" for=\"node\" attr.name=\"level\" attr.type=\"int\"/>\n";
  out << "  <key id=\"d3\" for=\"edge\" attr.name=\"relation\" attr.type=\"string\"/>\n";
  out << "  <graph id=\"G\" edgedefault=\"directed\">\n";
  for (const std::string& key : order) {
    const ExportNode& node = nodes[key];
    out << "    <node id=\"n" << ids[key] << "\">";
    out << "<data key=\"d0\">" << xml_escape(node.surface) << "</data>";
    out << "<data key=\"d1\">" << xml_escape(node.status) << "</data>";
    out << "<data key=\"d2\">" << node.level << "</data>";
    out << "</node>\n";
  }
  for (std::size_t i = 0; i < records.size(); ++i) {
    const SnapshotRecord& rec = records[i];
    out << "    <edge id=\"e" << i << "\" source=\"n" << ids[text::normalize(rec.head)]
        << "\" target=\"n" << ids[text::normalize(rec.tail)] << "\">";
    out << "<data key=\"d3\">" << xml_escape(rec.relation) << "</data>";
    out << "</edge>\n";
  }
  out << "  </graph>\n";
  out << "</graphml>\n";
}

void export_tsv(const std::vector<SnapshotRecord>& records, std::ostream& out) {
  for (const SnapshotRecord& rec : records) {
    out << rec.head << '\t' << rec.relation << '\t' << rec.tail << '\n';
  }
}

void export_records(const std::vector<SnapshotRecord>& records, ExportFormat format,
                    std::ostream& out) {
  switch (format) {
    case ExportFormat::Dot:
      export_dot(records, out);
      break;
    case ExportFormat::GraphMl:
      export_graphml(records, out);
      break;
    case ExportFormat::Tsv:
      export_tsv(records, out);
      break;
  }
}

}  // namespace sackg
