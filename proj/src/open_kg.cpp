#include "sackg/open_kg.hpp"

#include <fstream>

#include "sackg/errors.hpp"
#include "sackg/random.hpp"
#include "sackg/text.hpp"

namespace sackg {

namespace {
constexpr std::size_t kMaxExamples = 10;
}

OpenKg OpenKg::load_tsv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open open-KG file: " + path.string());

  OpenKg kg;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::size_t tab1 = line.find('\t');
    std::size_t tab2 = tab1 == std::string::npos ? std::string::npos : line.find('\t', tab1 + 1);
    std::size_t tab3 = tab2 == std::string::npos ? std::string::npos : line.find('\t', tab2 + 1);
    if (tab1 == std::string::npos || tab2 == std::string::npos || tab3 != std::string::npos) {
      throw ParseError(path.string() + " line " + std::to_string(line_no) +
                       ": expected exactly 3 tab-separated columns");
    }
    std::string head = text::trim(line.substr(0, tab1));
    std::string relation = text::trim(line.substr(tab1 + 1, tab2 - tab1 - 1));
    std::string tail = text::trim(line.substr(tab2 + 1));
    if (head.empty() || relation.empty() || tail.empty()) {
      throw ParseError(path.string() + " line " + std::to_string(line_no) +
                       ": empty head, relation or tail");
    }
    kg.add_record(head, relation, tail);
  }
  kg.finish_vocab();
  return kg;
}

OpenKg OpenKg::from_records(const std::vector<std::array<std::string, 3>>& records) {
  OpenKg kg;
  for (const auto& [head, relation, tail] : records) {
    kg.add_record(head, relation, tail);
  }
  kg.finish_vocab();
  return kg;
}

void OpenKg::add_record(const std::string& head, const std::string& relation,
                        const std::string& tail) {
  KgRecord rec;
  rec.head = head;
  rec.relation = relation;
  rec.tail = tail;
  rec.head_norm = text::normalize(head);
  rec.tail_norm = text::normalize(tail);

  std::size_t idx = records_.size();
  by_head_[rec.head_norm].push_back(idx);
  if (head_vocab_.insert(rec.head_norm).second) heads_in_order_.push_back(head);
  if (tail_vocab_.insert(rec.tail_norm).second) tails_in_order_.push_back(tail);
  triple_keys_.insert(dedup_key(head, relation, tail));
  records_.push_back(std::move(rec));
}

void OpenKg::finish_vocab() {
  tails_only_in_order_.clear();
  for (const std::string& tail : tails_in_order_) {
    if (head_vocab_.count(text::normalize(tail)) == 0) {
      tails_only_in_order_.push_back(tail);
    }
  }
}

std::vector<std::string> OpenKg::tokenize_subentities(const Entity& e) const {
  bool has_separator = false;
  for (char c : e.normalized) {
    if (c == ' ' || c == '-') {
      has_separator = true;
      break;
    }
  }
  std::vector<std::string> out;
  if (has_separator) {
    std::string part;
    for (char c : e.normalized) {
      if (c == ' ' || c == '-') {
        if (!part.empty()) out.push_back(part);
        part.clear();
      } else {
        part.push_back(c);
      }
    }
    if (!part.empty()) out.push_back(part);
    return out;
  }

  // Greedy longest-prefix scan against the head vocabulary.
  const std::string& s = e.normalized;
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t matched = 0;
    for (std::size_t len = s.size() - pos; len >= 1; --len) {
      if (head_vocab_.count(s.substr(pos, len)) > 0) {
        matched = len;
        break;
      }
    }
    if (matched > 0) {
      out.push_back(s.substr(pos, matched));
      pos += matched;
    } else {
      ++pos;
    }
  }
  return out;
}

std::vector<KgRecord> OpenKg::retrieve_examples(const Entity& e, std::uint64_t rng_seed) const {
  if (records_.empty()) throw EmptyKgError("open KG has no records");

  // Case (i): the entity itself heads records.
  auto direct = by_head_.find(e.normalized);
  if (direct != by_head_.end()) {
    std::vector<KgRecord> out;
    for (std::size_t idx : direct->second) {
      if (out.size() == kMaxExamples) break;
      out.push_back(records_[idx]);
    }
    return out;
  }

  // Case (ii): round-robin over subentity record lists.
  std::vector<const std::vector<std::size_t>*> lists;
  std::unordered_set<std::string> seen;
  for (const std::string& sub : tokenize_subentities(e)) {
    if (!seen.insert(sub).second) continue;
    auto it = by_head_.find(sub);
    if (it != by_head_.end()) lists.push_back(&it->second);
  }
  if (!lists.empty()) {
    std::vector<KgRecord> out;
    for (std::size_t round = 0; out.size() < kMaxExamples; ++round) {
      bool any = false;
      for (const auto* list : lists) {
        if (round >= list->size()) continue;
        any = true;
        out.push_back(records_[(*list)[round]]);
        if (out.size() == kMaxExamples) break;
      }
      if (!any) break;
    }
    return out;
  }

  // Case (iii): seeded uniform sample, exactly 10 when the KG is big enough.
  std::size_t k = std::min(kMaxExamples, records_.size());
  std::vector<KgRecord> out;
  for (std::size_t idx : rng::sample_without_replacement(records_.size(), k, rng_seed)) {
    out.push_back(records_[idx]);
  }
  return out;
}

bool OpenKg::contains_triple(std::string_view head, std::string_view relation,
                             std::string_view tail) const {
  return triple_keys_.count(dedup_key(head, relation, tail)) > 0;
}

bool OpenKg::is_head(std::string_view normalized) const {
  return head_vocab_.count(std::string(normalized)) > 0;
}

}  // namespace sackg
