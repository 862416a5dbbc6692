#pragma once

#include <filesystem>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "sackg/entity.hpp"
#include "sackg/prompting.hpp"

namespace sackg {

// The five error categories, declared in correction-table row order so that
// concatenated correction prompts keep a stable ordering.
enum class ErrorType {
  GeneralConflict,
  QuantityTooSmall,
  HeadEntityError,
  FormatError,
  HeadTailContradiction,
};

std::string_view to_string(ErrorType t);

// Declarative consistency rules evaluated over a generated batch.
//   Range: a relation's numeric tail must lie in [min, max].
//   Order: for the same head, the earlier relation's numeric tail must not
//          exceed the later relation's.
//   Functional: a relation admits at most one distinct tail per head.
// Tails with no parseable number are skipped by the numeric kinds.
struct Rule {
  enum class Kind { Range, Order, Functional };

  Kind kind = Kind::Functional;
  std::string relation;          // Range, Functional
  std::string earlier_relation;  // Order
  std::string later_relation;    // Order
  double min = -std::numeric_limits<double>::infinity();
  double max = std::numeric_limits<double>::infinity();
};

using RuleSet = std::vector<Rule>;

// Line-delimited JSON records, e.g.
//   {"kind": "range", "relation": "age", "min": 0, "max": 150}
//   {"kind": "order", "earlier_relation": "birth time", "later_relation": "death time"}
//   {"kind": "functional", "relation": "capital"}
// A missing file yields an empty rule set (with a warning on stderr).
RuleSet load_rules(const std::filesystem::path& path);

// One flagged item: a parsed triple, a malformed raw line, or the batch as
// a whole (quantity check).
struct FlaggedItem {
  enum class Target { TripleItem, LineItem, BatchItem };

  Target target = Target::TripleItem;
  RawTriple triple;      // TripleItem
  MalformedLine line;    // LineItem
  ErrorType error = ErrorType::GeneralConflict;
};

enum class Action { AcceptAll, EliminateFlagged, Regenerate };

struct Decision {
  Action action = Action::AcceptAll;
  std::string correction_prompt;  // non-empty only for Regenerate
};

struct VerificationReport {
  std::vector<RawTriple> accepted;
  std::vector<FlaggedItem> flagged;
  std::optional<Decision> decision;

  bool has_batch_flag() const;
  std::size_t item_flag_count() const;
};

// Checks run in order quantity -> format -> conflict; a triple carries its
// first-detected error only.
VerificationReport detect_errors(const ParsedOutput& parsed, const Entity& entity,
                                 const RuleSet& rules, int min_triples);

// The correction text for an error type; the head-entity text names the
// required head.
std::string correction_prompt(ErrorType t, const Entity& entity);

// Fills in the decision: regenerate when the batch-level quantity flag
// fired or more than `elimination_threshold` items are flagged; otherwise
// eliminate the flagged items (or accept everything when nothing is
// flagged).
VerificationReport decide(VerificationReport report, const Entity& entity,
                          int elimination_threshold = 3);

struct VerifyLimits {
  int min_triples = 3;
  int elimination_threshold = 3;
  int max_regeneration_rounds = 2;
};

struct VerifyOutcome {
  std::vector<Triple> accepted;
  int rounds_used = 0;
  int llm_calls = 0;
  int generated_total = 0;
  int flagged_total = 0;
  std::vector<std::string> prompts;  // prompt sent each round
};

using GenerateFn = std::function<std::string(const std::string&)>;

// generate -> parse -> detect -> decide, reprompting with appended
// correction text on Regenerate, up to max_regeneration_rounds extra
// rounds; on exhaustion the final round's unflagged subset is kept.
// Accepted triples carry `round` and the given level/source entity.
VerifyOutcome verify_loop_detailed(const GenerateFn& generate, const PromptBundle& bundle,
                                   const RuleSet& rules, const VerifyLimits& limits,
                                   int level = 1);

std::vector<Triple> verify_loop(const GenerateFn& generate, const PromptBundle& bundle,
                                const RuleSet& rules, const VerifyLimits& limits, int level = 1);

}  // namespace sackg
