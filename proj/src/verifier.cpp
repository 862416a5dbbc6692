#include "sackg/verifier.hpp"

#include <array>
#include <fstream>
#include <iostream>
#include <map>
#include <set>

#include "json.hpp"
#include "sackg/errors.hpp"
#include "sackg/text.hpp"

namespace sackg {

namespace {

constexpr std::array<ErrorType, 5> kErrorRowOrder = {
    ErrorType::GeneralConflict,    ErrorType::QuantityTooSmall, ErrorType::HeadEntityError,
    ErrorType::FormatError,        ErrorType::HeadTailContradiction,
};

std::optional<double> rule_number(const RawTriple& t) {
  return text::first_number(t.tail);
}

}  // namespace

std::string_view to_string(ErrorType t) {
  switch (t) {
    case ErrorType::GeneralConflict:
      return "general_conflict";
    case ErrorType::QuantityTooSmall:
      return "quantity_too_small";
    case ErrorType::HeadEntityError:
      return "head_entity_error";
    case ErrorType::FormatError:
      return "format_error";
    case ErrorType::HeadTailContradiction:
      return "head_tail_contradiction";
  }
  return "general_conflict";
}

RuleSet load_rules(const std::filesystem::path& path) {
  if (path.empty()) return {};
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "warning: rules file not found, using empty rule set: " << path.string()
              << "\n";
    return {};
  }
  RuleSet rules;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    nlohmann::json rec;
    try {
      rec = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(path.string() + " line " + std::to_string(line_no) + ": " + e.what());
    }
    auto fail = [&](const std::string& msg) -> ParseError {
      return ParseError(path.string() + " line " + std::to_string(line_no) + ": " + msg);
    };
    Rule rule;
    std::string kind = rec.value("kind", "");
    if (kind == "range") {
      rule.kind = Rule::Kind::Range;
      if (!rec.contains("relation")) throw fail("range rule needs a relation");
      rule.relation = text::normalize(rec.at("relation").get<std::string>());
      if (rec.contains("min")) rule.min = rec.at("min").get<double>();
      if (rec.contains("max")) rule.max = rec.at("max").get<double>();
      if (rule.min > rule.max) throw fail("range rule has min > max");
    } else if (kind == "order") {
      rule.kind = Rule::Kind::Order;
      if (!rec.contains("earlier_relation") || !rec.contains("later_relation")) {
        throw fail("order rule needs earlier_relation and later_relation");
      }
      rule.earlier_relation = text::normalize(rec.at("earlier_relation").get<std::string>());
      rule.later_relation = text::normalize(rec.at("later_relation").get<std::string>());
      if (rule.earlier_relation == rule.later_relation) {
        throw fail("order rule relations must be distinct");
      }
    } else if (kind == "functional") {
      rule.kind = Rule::Kind::Functional;
      if (!rec.contains("relation")) throw fail("functional rule needs a relation");
      rule.relation = text::normalize(rec.at("relation").get<std::string>());
    } else {
      throw fail("unknown rule kind: \"" + kind + "\"");
    }
    rules.push_back(std::move(rule));
  }
  return rules;
}

bool VerificationReport::has_batch_flag() const {
  for (const FlaggedItem& item : flagged) {
    if (item.target == FlaggedItem::Target::BatchItem) return true;
  }
  return false;
}

std::size_t VerificationReport::item_flag_count() const {
  std::size_t n = 0;
  for (const FlaggedItem& item : flagged) {
    if (item.target != FlaggedItem::Target::BatchItem) ++n;
  }
  return n;
}

VerificationReport detect_errors(const ParsedOutput& parsed, const Entity& entity,
                                 const RuleSet& rules, int min_triples) {
  VerificationReport report;
  const auto n = parsed.triples.size();
  std::vector<std::optional<ErrorType>> flags(n);

  // Quantity check: batch-level.
  if (static_cast<int>(n) < min_triples) {
    FlaggedItem item;
    item.target = FlaggedItem::Target::BatchItem;
    item.error = ErrorType::QuantityTooSmall;
    report.flagged.push_back(std::move(item));
  }

  // Format check: malformed lines, head mismatches, head == tail.
  for (const MalformedLine& line : parsed.malformed_lines) {
    FlaggedItem item;
    item.target = FlaggedItem::Target::LineItem;
    item.line = line;
    item.error = ErrorType::FormatError;
    report.flagged.push_back(std::move(item));
  }
  for (std::size_t i = 0; i < n; ++i) {
    const RawTriple& t = parsed.triples[i];
    std::string head_norm = text::normalize(t.head);
    if (head_norm != entity.normalized) {
      flags[i] = ErrorType::HeadEntityError;
    } else if (head_norm == text::normalize(t.tail)) {
      flags[i] = ErrorType::HeadTailContradiction;
    }
  }

  // Conflict check: rules over the whole batch; first-detected error wins.
  auto flag_conflict = [&](std::size_t i) {
    if (!flags[i].has_value()) flags[i] = ErrorType::GeneralConflict;
  };
  for (const Rule& rule : rules) {
    switch (rule.kind) {
      case Rule::Kind::Range: {
        for (std::size_t i = 0; i < n; ++i) {
          if (text::normalize(parsed.triples[i].relation) != rule.relation) continue;
          auto value = rule_number(parsed.triples[i]);
          if (value.has_value() && (*value < rule.min || *value > rule.max)) flag_conflict(i);
        }
        break;
      }
      case Rule::Kind::Order: {
        for (std::size_t i = 0; i < n; ++i) {
          if (text::normalize(parsed.triples[i].relation) != rule.earlier_relation) continue;
          auto earlier = rule_number(parsed.triples[i]);
          if (!earlier.has_value()) continue;
          for (std::size_t j = 0; j < n; ++j) {
            if (text::normalize(parsed.triples[j].relation) != rule.later_relation) continue;
            if (text::normalize(parsed.triples[j].head) != text::normalize(parsed.triples[i].head))
              continue;
            auto later = rule_number(parsed.triples[j]);
            if (later.has_value() && *earlier > *later) {
              flag_conflict(i);
              flag_conflict(j);
            }
          }
        }
        break;
      }
      case Rule::Kind::Functional: {
        std::map<std::string, std::vector<std::size_t>> by_head;
        std::map<std::string, std::set<std::string>> tails_by_head;
        for (std::size_t i = 0; i < n; ++i) {
          if (text::normalize(parsed.triples[i].relation) != rule.relation) continue;
          std::string head = text::normalize(parsed.triples[i].head);
          by_head[head].push_back(i);
          tails_by_head[head].insert(text::normalize(parsed.triples[i].tail));
        }
        for (const auto& [head, indices] : by_head) {
          if (tails_by_head[head].size() > 1) {
            for (std::size_t i : indices) flag_conflict(i);
          }
        }
        break;
      }
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (flags[i].has_value()) {
      FlaggedItem item;
      item.target = FlaggedItem::Target::TripleItem;
      item.triple = parsed.triples[i];
      item.error = *flags[i];
      report.flagged.push_back(std::move(item));
    } else {
      report.accepted.push_back(parsed.triples[i]);
    }
  }
  return report;
}

std::string correction_prompt(ErrorType t, const Entity& entity) {
  switch (t) {
    case ErrorType::GeneralConflict:
      return "Please generate it again strictly according to the requirements.";
    case ErrorType::QuantityTooSmall:
      return "Please generate it again strictly according to the requirements, and pay "
             "attention to generating sufficient triples.";
    case ErrorType::HeadEntityError:
      return "Please generate it again strictly according to the requirements, and note that "
             "the head entity must be " +
             entity.surface;
    case ErrorType::FormatError:
      return "Please generate it again strictly according to the format requirements, paying "
             "attention to the format of the example triples.";
    case ErrorType::HeadTailContradiction:
      return "Please generate it again strictly according to the format and requirements, and "
             "note that the head and tail entities are generally inconsistent.";
  }
  return "";
}

VerificationReport decide(VerificationReport report, const Entity& entity,
                          int elimination_threshold) {
  Decision decision;
  bool regenerate = report.has_batch_flag() ||
                    report.item_flag_count() > static_cast<std::size_t>(elimination_threshold);
  if (regenerate) {
    decision.action = Action::Regenerate;
    std::set<ErrorType> seen;
    for (const FlaggedItem& item : report.flagged) seen.insert(item.error);
    std::string prompt;
    for (ErrorType type : kErrorRowOrder) {
      if (seen.count(type) == 0) continue;
      if (!prompt.empty()) prompt += ' ';
      prompt += correction_prompt(type, entity);
    }
    decision.correction_prompt = std::move(prompt);
  } else if (!report.flagged.empty()) {
    decision.action = Action::EliminateFlagged;
  } else {
    decision.action = Action::AcceptAll;
  }
  report.decision = decision;
  return report;
}

VerifyOutcome verify_loop_detailed(const GenerateFn& generate, const PromptBundle& bundle,
                                   const RuleSet& rules, const VerifyLimits& limits, int level) {
  VerifyOutcome outcome;
  std::string prompt = build_prompt(bundle);
  std::vector<RawTriple> accepted;
  int final_round = 0;

  for (int round = 0; round <= limits.max_regeneration_rounds; ++round) {
    outcome.prompts.push_back(prompt);
    ++outcome.llm_calls;
    std::string raw = generate(prompt);
    ParsedOutput parsed = parse_triples(raw);
    outcome.generated_total += static_cast<int>(parsed.triples.size());

    VerificationReport report =
        decide(detect_errors(parsed, bundle.entity, rules, limits.min_triples), bundle.entity,
               limits.elimination_threshold);
    outcome.flagged_total += static_cast<int>(report.flagged.size());

    accepted = report.accepted;
    final_round = round;
    if (report.decision->action == Action::Regenerate && round < limits.max_regeneration_rounds) {
      prompt += "\n\n" + report.decision->correction_prompt;
      continue;
    }
    break;
  }

  outcome.rounds_used = final_round;
  for (const RawTriple& t : accepted) {
    Triple triple;
    triple.head = Entity(t.head);
    triple.relation = t.relation;
    triple.tail = Entity(t.tail);
    triple.level = level;
    triple.source_entity = bundle.entity;
    triple.round = final_round;
    outcome.accepted.push_back(std::move(triple));
  }
  return outcome;
}

std::vector<Triple> verify_loop(const GenerateFn& generate, const PromptBundle& bundle,
                                const RuleSet& rules, const VerifyLimits& limits, int level) {
  return verify_loop_detailed(generate, bundle, rules, limits, level).accepted;
}

}  // namespace sackg
