#include "sackg/corpus.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "sackg/errors.hpp"
#include "sackg/text.hpp"

namespace sackg {

namespace {

const std::array<std::string_view, 5> kAbbreviations = {"dr.", "mr.", "e.g.", "i.e.", "vs."};

// Full-width sentence terminators, in UTF-8.
const std::array<std::string_view, 3> kWideTerminators = {"\xE3\x80\x82", "\xEF\xBC\x81",
                                                          "\xEF\xBC\x9F"};

bool ends_with_abbreviation(std::string_view segment) {
  std::string folded = text::fold_case(segment);
  for (std::string_view abbr : kAbbreviations) {
    if (folded.size() < abbr.size()) continue;
    if (folded.compare(folded.size() - abbr.size(), abbr.size(), abbr) != 0) continue;
    std::size_t before = folded.size() - abbr.size();
    if (before == 0 || !std::isalnum(static_cast<unsigned char>(folded[before - 1]))) {
      return true;
    }
  }
  return false;
}

// Length of the sentence terminator starting at i, or 0.
std::size_t terminator_length(std::string_view s, std::size_t i) {
  char c = s[i];
  if (c == '.' || c == '!' || c == '?') return 1;
  for (std::string_view wide : kWideTerminators) {
    if (s.compare(i, wide.size(), wide) == 0) return wide.size();
  }
  return 0;
}

std::string strip_token_punct(std::string_view token) {
  static constexpr std::string_view kPunct = ".,!?;:()[]{}\"'`";
  std::size_t b = 0;
  std::size_t e = token.size();
  while (b < e && kPunct.find(token[b]) != std::string_view::npos) ++b;
  while (e > b && kPunct.find(token[e - 1]) != std::string_view::npos) --e;
  return std::string(token.substr(b, e - b));
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open corpus file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool is_jsonl_path(const std::filesystem::path& path) {
  auto ext = path.extension().string();
  return ext == ".jsonl" || ext == ".ndjson";
}

}  // namespace

std::vector<std::string> segment_sentences(std::string_view raw) {
  std::vector<std::string> out;
  std::size_t start = 0;
  std::size_t i = 0;
  auto flush = [&](std::size_t end) {
    std::string sentence = text::trim(raw.substr(start, end - start));
    if (!sentence.empty()) out.push_back(std::move(sentence));
    start = end;
  };
  while (i < raw.size()) {
    std::size_t tlen = terminator_length(raw, i);
    if (tlen == 0) {
      ++i;
      continue;
    }
    std::size_t after = i + tlen;
    bool boundary = after >= raw.size() || text::is_space(raw[after]);
    if (boundary && raw[i] == '.' && ends_with_abbreviation(raw.substr(start, after - start))) {
      boundary = false;
    }
    i = after;
    if (boundary) flush(after);
  }
  flush(raw.size());
  return out;
}

CorpusIndex::CorpusIndex(const std::vector<std::string>& raw_texts) {
  for (const std::string& raw : raw_texts) add_text(raw);
}

CorpusIndex CorpusIndex::load_files(const std::vector<std::filesystem::path>& paths) {
  std::vector<std::string> texts;
  for (const auto& path : paths) {
    std::string raw = read_file(path);
    if (!is_jsonl_path(path)) {
      texts.push_back(std::move(raw));
      continue;
    }
    std::istringstream lines(raw);
    std::string line;
    int line_no = 0;
    while (std::getline(lines, line)) {
      ++line_no;
      if (text::trim(line).empty()) continue;
      try {
        auto rec = nlohmann::json::parse(line);
        texts.push_back(rec.at("text").get<std::string>());
      } catch (const nlohmann::json::exception& e) {
        throw ParseError(path.string() + " line " + std::to_string(line_no) + ": " + e.what());
      }
    }
  }
  return CorpusIndex(texts);
}

void CorpusIndex::add_text(std::string_view raw) {
  for (std::string& sentence : segment_sentences(raw)) {
    sentences_.push_back(std::move(sentence));
    std::size_t idx = sentences_.size() - 1;
    normalized_.push_back(text::normalize(sentences_[idx]));
    token_counts_.push_back(text::count_tokens(sentences_[idx]));
    index_sentence(idx);
  }
}

void CorpusIndex::index_sentence(std::size_t idx) {
  std::map<std::string, std::size_t> counts;
  for (const std::string& raw_token : text::tokens(normalized_[idx])) {
    std::string token = strip_token_punct(raw_token);
    if (!token.empty()) ++counts[token];
  }
  for (auto& [token, count] : counts) {
    inverted_[token].emplace_back(idx, count);
  }
}

std::vector<std::pair<std::size_t, std::size_t>> CorpusIndex::lookup_token(
    std::string_view token) const {
  auto it = inverted_.find(text::normalize(token));
  if (it == inverted_.end()) return {};
  return it->second;
}

std::vector<std::string> CorpusIndex::retrieve_context_sentences(const Entity& e,
                                                                 std::size_t max_tokens) const {
  // Ranked by (-count, position): stable sort on descending count keeps
  // document order for ties.
  std::vector<std::pair<std::size_t, std::size_t>> hits;  // (index, count)
  for (std::size_t i = 0; i < normalized_.size(); ++i) {
    std::size_t count = text::count_occurrences(normalized_[i], e.normalized);
    if (count > 0) hits.emplace_back(i, count);
  }
  if (hits.empty()) {
    throw NoContextError("no corpus sentence contains entity: " + e.surface);
  }
  std::stable_sort(hits.begin(), hits.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });

  std::vector<std::string> out;
  std::size_t used = 0;
  for (const auto& [idx, count] : hits) {
    if (used + token_counts_[idx] > max_tokens) break;
    used += token_counts_[idx];
    out.push_back(sentences_[idx]);
  }
  return out;
}

std::string CorpusIndex::retrieve_context(const Entity& e, std::size_t max_tokens) const {
  std::string out;
  for (const std::string& sentence : retrieve_context_sentences(e, max_tokens)) {
    if (!out.empty()) out += ' ';
    out += sentence;
  }
  return out;
}

}  // namespace sackg
