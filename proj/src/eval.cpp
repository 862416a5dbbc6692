#include "sackg/eval.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"
#include "sackg/entity.hpp"
#include "sackg/errors.hpp"
#include "sackg/text.hpp"

namespace sackg {

std::vector<Judgment> load_judgments(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open judgments file: " + path.string());
  std::vector<Judgment> out;
  std::unordered_set<std::string> seen;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    try {
      auto rec = nlohmann::json::parse(line);
      Judgment j;
      j.head = rec.at("head").get<std::string>();
      j.relation = rec.at("relation").get<std::string>();
      j.tail = rec.at("tail").get<std::string>();
      j.correct = rec.at("correct").get<bool>();
      j.domain_related = rec.at("domain_related").get<bool>();
      j.judge_id = rec.at("judge_id").get<std::string>();
      std::string key = dedup_key(j.head, j.relation, j.tail) + '\x1f' + j.judge_id;
      if (!seen.insert(key).second) {
        throw ParseError(path.string() + " line " + std::to_string(line_no) +
                         ": duplicate judgment for the same triple and judge");
      }
      out.push_back(std::move(j));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(path.string() + " line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

std::vector<Judgment> filter_by_judge(const std::vector<Judgment>& judgments,
                                      const std::string& judge_id) {
  std::vector<Judgment> out;
  for (const Judgment& j : judgments) {
    if (j.judge_id == judge_id) out.push_back(j);
  }
  return out;
}

std::vector<std::string> judge_ids(const std::vector<Judgment>& judgments) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const Judgment& j : judgments) {
    if (seen.insert(j.judge_id).second) out.push_back(j.judge_id);
  }
  return out;
}

namespace {

std::unordered_map<std::string, const Judgment*> judgment_index(
    const std::vector<Judgment>& judgments) {
  std::unordered_map<std::string, const Judgment*> index;
  for (const Judgment& j : judgments) {
    index[dedup_key(j.head, j.relation, j.tail)] = &j;
  }
  return index;
}

const Judgment* find_judgment(const std::unordered_map<std::string, const Judgment*>& index,
                              const SnapshotRecord& rec) {
  auto it = index.find(dedup_key(rec.head, rec.relation, rec.tail));
  return it == index.end() ? nullptr : it->second;
}

}  // namespace

double precision(const std::vector<Judgment>& judgments,
                 const std::vector<SnapshotRecord>& generated) {
  if (generated.empty()) return 0.0;
  auto index = judgment_index(judgments);
  std::vector<std::string> missing;
  std::size_t correct = 0;
  for (const SnapshotRecord& rec : generated) {
    const Judgment* j = find_judgment(index, rec);
    if (j == nullptr) {
      missing.push_back("(" + rec.head + " | " + rec.relation + " | " + rec.tail + ")");
      continue;
    }
    if (j->correct) ++correct;
  }
  if (!missing.empty()) {
    std::ostringstream msg;
    msg << missing.size() << " generated triple(s) lack a judgment:";
    for (const std::string& key : missing) msg << " " << key;
    throw MissingJudgmentError(msg.str());
  }
  return static_cast<double>(correct) / static_cast<double>(generated.size());
}

double number_of_recalls(const std::vector<int>& per_text_counts) {
  if (per_text_counts.empty()) {
    throw EmptyInputError("number_of_recalls needs at least one per-text count");
  }
  double sum = 0.0;
  for (int count : per_text_counts) sum += count;
  return sum / static_cast<double>(per_text_counts.size());
}

double domain_specificity(const std::vector<Judgment>& judgments,
                          const std::vector<SnapshotRecord>& generated, const OpenKg& kg) {
  if (generated.empty()) return 0.0;
  auto index = judgment_index(judgments);
  std::size_t specific = 0;
  for (const SnapshotRecord& rec : generated) {
    const Judgment* j = find_judgment(index, rec);
    if (j == nullptr || !j->correct || !j->domain_related) continue;
    if (kg.contains_triple(rec.head, rec.relation, rec.tail)) continue;
    ++specific;
  }
  return static_cast<double>(specific) / static_cast<double>(generated.size());
}

std::vector<int> per_source_counts(const std::vector<SnapshotRecord>& generated) {
  std::vector<std::string> order;
  std::map<std::string, int> counts;
  for (const SnapshotRecord& rec : generated) {
    std::string key = text::normalize(rec.source_entity);
    if (counts.emplace(key, 0).second) order.push_back(key);
    ++counts[key];
  }
  std::vector<int> out;
  out.reserve(order.size());
  for (const std::string& key : order) out.push_back(counts[key]);
  return out;
}

MetricReport evaluate(const std::vector<Judgment>& judgments,
                      const std::vector<SnapshotRecord>& generated, const OpenKg* kg) {
  MetricReport report;
  report.counts.generated = generated.size();
  report.precision = precision(judgments, generated);

  auto counts = per_source_counts(generated);
  report.counts.texts = counts.size();
  report.number_of_recalls = counts.empty() ? 0.0 : number_of_recalls(counts);

  auto index = judgment_index(judgments);
  for (const SnapshotRecord& rec : generated) {
    const Judgment* j = find_judgment(index, rec);
    if (j == nullptr) continue;
    if (j->correct) ++report.counts.judged_correct;
    if (j->correct && j->domain_related) {
      ++report.counts.correct_domain_related;
      if (kg != nullptr && kg->contains_triple(rec.head, rec.relation, rec.tail)) {
        ++report.counts.in_open_kg;
      }
    }
  }
  if (kg != nullptr) {
    report.domain_specificity = domain_specificity(judgments, generated, *kg);
  }
  return report;
}

double cohen_kappa(std::size_t both_pos, std::size_t a_only, std::size_t b_only,
                   std::size_t both_neg) {
  double n = static_cast<double>(both_pos + a_only + b_only + both_neg);
  if (n == 0.0) throw EmptyInputError("cohen_kappa needs a non-empty contingency table");
  double po = (static_cast<double>(both_pos) + static_cast<double>(both_neg)) / n;
  double a_pos = static_cast<double>(both_pos + a_only) / n;
  double b_pos = static_cast<double>(both_pos + b_only) / n;
  double pe = a_pos * b_pos + (1.0 - a_pos) * (1.0 - b_pos);
  if (std::abs(1.0 - pe) < 1e-12) {
    // Degenerate marginals force po == pe == 1: total agreement.
    return 1.0;
  }
  return (po - pe) / (1.0 - pe);
}

AgreementReport agreement(const std::vector<Judgment>& judge_a,
                          const std::vector<Judgment>& judge_b) {
  auto index_a = judgment_index(judge_a);
  auto index_b = judgment_index(judge_b);
  if (index_a.size() != index_b.size()) {
    throw KeyMismatchError("judges cover different numbers of triples: " +
                           std::to_string(index_a.size()) + " vs " +
                           std::to_string(index_b.size()));
  }
  std::size_t both_pos = 0, a_only = 0, b_only = 0, both_neg = 0;
  for (const auto& [key, ja] : index_a) {
    auto it = index_b.find(key);
    if (it == index_b.end()) {
      throw KeyMismatchError("triple judged by a but not by b: (" + ja->head + " | " +
                             ja->relation + " | " + ja->tail + ")");
    }
    const Judgment* jb = it->second;
    if (ja->correct && jb->correct) ++both_pos;
    else if (ja->correct) ++a_only;
    else if (jb->correct) ++b_only;
    else ++both_neg;
  }

  AgreementReport report;
  report.keys = index_a.size();
  double tp = static_cast<double>(both_pos);
  double fp = static_cast<double>(a_only);
  double fn = static_cast<double>(b_only);
  report.precision = (tp + fp) > 0 ? tp / (tp + fp) : 0.0;
  report.recall = (tp + fn) > 0 ? tp / (tp + fn) : 0.0;
  report.f1 = (report.precision + report.recall) > 0
                  ? 2.0 * report.precision * report.recall / (report.precision + report.recall)
                  : 0.0;
  report.kappa = cohen_kappa(both_pos, a_only, b_only, both_neg);
  return report;
}

std::string build_judge_prompt(const std::string& source_text, const RawTriple& triple) {
  std::string out;
  out += "Text:\n";
  out += source_text;
  out += "\n\nTriple: ";
  out += render_triple(triple);
  out += "\n\nJudge the triple against the text. Answer with exactly two lines:\n";
  out += "correct: yes or no\n";
  out += "domain_related: yes or no";
  return out;
}

std::optional<JudgeAnswer> parse_judge_answer(const std::string& raw) {
  std::optional<bool> correct;
  std::optional<bool> domain_related;
  std::istringstream lines(raw);
  std::string line;
  while (std::getline(lines, line)) {
    std::string folded = text::fold_case(text::trim(line));
    auto read_flag = [&](std::string_view prefix) -> std::optional<bool> {
      if (folded.rfind(prefix, 0) != 0) return std::nullopt;
      std::string value = text::trim(folded.substr(prefix.size()));
      if (value == "yes") return true;
      if (value == "no") return false;
      return std::nullopt;
    };
    if (auto v = read_flag("correct:")) correct = v;
    if (auto v = read_flag("domain_related:")) domain_related = v;
  }
  if (!correct.has_value() || !domain_related.has_value()) return std::nullopt;
  return JudgeAnswer{*correct, *domain_related};
}

}  // namespace sackg
