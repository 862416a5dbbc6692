#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "sackg/entity.hpp"

namespace sackg {

// Sentence segmentation: splits on ., !, ? and their full-width forms when
// followed by whitespace or end of text. A small abbreviation whitelist
// ("Dr.", "Mr.", "e.g.", "i.e.", "vs.") suppresses splits.
std::vector<std::string> segment_sentences(std::string_view raw);

// Immutable sentence store with an inverted token index. Built once from
// raw text; all queries are const and safe to run concurrently.
class CorpusIndex {
 public:
  CorpusIndex() = default;
  explicit CorpusIndex(const std::vector<std::string>& raw_texts);

  // Plain-text files, or line-delimited JSON records with a "text" field
  // for paths ending in .jsonl/.ndjson. Later paths append after earlier
  // ones.
  static CorpusIndex load_files(const std::vector<std::filesystem::path>& paths);

  const std::vector<std::string>& sentences() const { return sentences_; }

  // (sentence index, occurrence count) pairs for a normalized token.
  std::vector<std::pair<std::size_t, std::size_t>> lookup_token(std::string_view token) const;
  const std::map<std::string, std::vector<std::pair<std::size_t, std::size_t>>>& inverted()
      const {
    return inverted_;
  }

  // Sentences containing e, ranked by descending occurrence count of
  // e.normalized (substring match on the normalized sentence), ties broken
  // by document order, cut to the longest prefix whose whitespace token
  // total fits max_tokens. Throws NoContextError when no sentence contains
  // the entity at all.
  std::vector<std::string> retrieve_context_sentences(const Entity& e,
                                                      std::size_t max_tokens) const;

  // The sentences above joined with single spaces.
  std::string retrieve_context(const Entity& e, std::size_t max_tokens) const;

 private:
  void add_text(std::string_view raw);
  void index_sentence(std::size_t idx);

  std::vector<std::string> sentences_;
  std::vector<std::string> normalized_;
  std::vector<std::size_t> token_counts_;
  std::map<std::string, std::vector<std::pair<std::size_t, std::size_t>>> inverted_;
};

}  // namespace sackg
