#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "sackg/snapshot.hpp"

namespace sackg {

enum class ExportFormat { Dot, GraphMl, Tsv };

// Throws UnknownFormatError for anything but "dot", "graphml", "tsv".
ExportFormat export_format_from_string(const std::string& s);

// DOT: one labeled edge per triple; pruned nodes render dashed.
void export_dot(const std::vector<SnapshotRecord>& records, std::ostream& out);

// GraphML: nodes carry surface, status and level; edges carry the relation.
void export_graphml(const std::vector<SnapshotRecord>& records, std::ostream& out);

// TSV: head<TAB>relation<TAB>tail, the open-KG input format.
void export_tsv(const std::vector<SnapshotRecord>& records, std::ostream& out);

void export_records(const std::vector<SnapshotRecord>& records, ExportFormat format,
                    std::ostream& out);

}  // namespace sackg
