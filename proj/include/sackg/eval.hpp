#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sackg/open_kg.hpp"
#include "sackg/prompting.hpp"
#include "sackg/snapshot.hpp"

namespace sackg {

// One judge's call on one triple.
struct Judgment {
  std::string head;
  std::string relation;
  std::string tail;
  bool correct = false;
  bool domain_related = false;
  std::string judge_id;
};

// Line-delimited JSON records
// {"head":..., "relation":..., "tail":..., "correct":..., "domain_related":..., "judge_id":...}.
// Duplicate (triple key, judge_id) pairs are rejected.
std::vector<Judgment> load_judgments(const std::filesystem::path& path);

std::vector<Judgment> filter_by_judge(const std::vector<Judgment>& judgments,
                                      const std::string& judge_id);
std::vector<std::string> judge_ids(const std::vector<Judgment>& judgments);

struct MetricCounts {
  std::size_t generated = 0;
  std::size_t judged_correct = 0;
  std::size_t correct_domain_related = 0;
  std::size_t in_open_kg = 0;
  std::size_t texts = 0;
};

struct MetricReport {
  double precision = 0.0;
  double number_of_recalls = 0.0;
  std::optional<double> domain_specificity;
  MetricCounts counts;
};

// Fraction of generated triples judged correct. Every generated triple must
// be covered by the judgments; unjudged keys raise MissingJudgmentError.
double precision(const std::vector<Judgment>& judgments,
                 const std::vector<SnapshotRecord>& generated);

// Arithmetic mean of verified-triple counts per domain text.
double number_of_recalls(const std::vector<int>& per_text_counts);

// |{generated, correct, domain-related} - {in open KG}| / |generated|;
// defined as 0 (with the zero recorded in counts) when nothing was
// generated.
double domain_specificity(const std::vector<Judgment>& judgments,
                          const std::vector<SnapshotRecord>& generated, const OpenKg& kg);

// Per-source-entity verified triple counts, in first-appearance order.
std::vector<int> per_source_counts(const std::vector<SnapshotRecord>& generated);

MetricReport evaluate(const std::vector<Judgment>& judgments,
                      const std::vector<SnapshotRecord>& generated, const OpenKg* kg);

struct AgreementReport {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double kappa = 0.0;
  std::size_t keys = 0;
};

// judge_a scored against judge_b (ground truth) on the `correct` flag. Both
// judges must cover exactly the same triple keys.
AgreementReport agreement(const std::vector<Judgment>& judge_a,
                          const std::vector<Judgment>& judge_b);

// Cohen's kappa from a 2x2 contingency table (both_positive, a_only,
// b_only, both_negative).
double cohen_kappa(std::size_t both_pos, std::size_t a_only, std::size_t b_only,
                   std::size_t both_neg);

// Prompt for an external judge over one triple and its source text; answers
// are parsed strictly as two yes/no lines.
std::string build_judge_prompt(const std::string& source_text, const RawTriple& triple);

struct JudgeAnswer {
  bool correct = false;
  bool domain_related = false;
};

std::optional<JudgeAnswer> parse_judge_answer(const std::string& raw);

}  // namespace sackg
