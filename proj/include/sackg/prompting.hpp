#pragma once

#include <string>
#include <vector>

#include "sackg/entity.hpp"
#include "sackg/open_kg.hpp"

namespace sackg {

// A candidate triple as three raw strings, before verification.
struct RawTriple {
  std::string head;
  std::string relation;
  std::string tail;

  bool operator==(const RawTriple&) const = default;
};

struct MalformedLine {
  int line_no = 0;
  std::string raw;
};

struct ParsedOutput {
  std::vector<RawTriple> triples;
  std::vector<MalformedLine> malformed_lines;
};

// The three-segment generation input: retrieved text, instruction, example
// triples. Empty text or examples drop the corresponding segment.
struct PromptBundle {
  std::string text;
  std::string instruction;
  std::vector<RawTriple> examples;
  Entity entity;
};

// The template must contain both {entity} and {min_triples}.
std::string default_instruction_template();
std::string render_instruction(const std::string& instruction_template, const Entity& e,
                               int min_triples);

std::string render_triple(const RawTriple& t);

// Segments in order text, instruction, examples, separated by blank lines.
std::string build_prompt(const PromptBundle& b);

// Accepts `h | r | t` with optional surrounding parentheses and flexible
// whitespace, one triple per line. Anything else lands in malformed_lines;
// blank lines are skipped. Never throws.
ParsedOutput parse_triples(const std::string& raw);

std::vector<RawTriple> to_raw_triples(const std::vector<KgRecord>& records);

}  // namespace sackg
