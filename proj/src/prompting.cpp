#include "sackg/prompting.hpp"

#include <sstream>

#include "sackg/errors.hpp"
#include "sackg/text.hpp"

namespace sackg {

std::string default_instruction_template() {
  return "Extract knowledge triples about {entity} from the text above. "
         "Generate at least {min_triples} triples. Every triple must have {entity} "
         "as the head entity. Write one triple per line in the format "
         "(head | relation | tail), following the format of the example triples.";
}

std::string render_instruction(const std::string& instruction_template, const Entity& e,
                               int min_triples) {
  if (instruction_template.find("{entity}") == std::string::npos ||
      instruction_template.find("{min_triples}") == std::string::npos) {
    throw ConfigError("instruction template must contain {entity} and {min_triples}");
  }
  std::string out = text::replace_all(instruction_template, "{entity}", e.surface);
  return text::replace_all(std::move(out), "{min_triples}", std::to_string(min_triples));
}

std::string render_triple(const RawTriple& t) {
  return "(" + t.head + " | " + t.relation + " | " + t.tail + ")";
}

std::string build_prompt(const PromptBundle& b) {
  std::string out;
  if (!b.text.empty()) {
    out += b.text;
    out += "\n\n";
  }
  out += b.instruction;
  if (!b.examples.empty()) {
    out += "\n";
    for (const RawTriple& t : b.examples) {
      out += "\n";
      out += render_triple(t);
    }
  }
  return out;
}

ParsedOutput parse_triples(const std::string& raw) {
  ParsedOutput out;
  std::istringstream lines(raw);
  std::string line;
  int line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    std::string trimmed = text::trim(line);
    if (trimmed.empty()) continue;

    std::string body = trimmed;
    if (body.size() >= 2 && body.front() == '(' && body.back() == ')') {
      body = text::trim(body.substr(1, body.size() - 2));
    }

    std::size_t bar1 = body.find('|');
    std::size_t bar2 = bar1 == std::string::npos ? std::string::npos : body.find('|', bar1 + 1);
    std::size_t bar3 = bar2 == std::string::npos ? std::string::npos : body.find('|', bar2 + 1);
    if (bar1 == std::string::npos || bar2 == std::string::npos || bar3 != std::string::npos) {
      out.malformed_lines.push_back({line_no, line});
      continue;
    }
    RawTriple t;
    t.head = text::trim(body.substr(0, bar1));
    t.relation = text::trim(body.substr(bar1 + 1, bar2 - bar1 - 1));
    t.tail = text::trim(body.substr(bar2 + 1));
    if (t.head.empty() || t.relation.empty() || t.tail.empty()) {
      out.malformed_lines.push_back({line_no, line});
      continue;
    }
    out.triples.push_back(std::move(t));
  }
  return out;
}

std::vector<RawTriple> to_raw_triples(const std::vector<KgRecord>& records) {
  std::vector<RawTriple> out;
  out.reserve(records.size());
  for (const KgRecord& rec : records) {
    out.push_back({rec.head, rec.relation, rec.tail});
  }
  return out;
}

}  // namespace sackg
