#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "sackg/entity.hpp"

namespace sackg {

struct KgRecord {
  std::string head;
  std::string relation;
  std::string tail;
  std::string head_norm;
  std::string tail_norm;
};

// An encyclopedic triple store loaded from file, used for example
// retrieval, pruner training pairs and the specificity metric's exclusion
// set. Immutable after load.
class OpenKg {
 public:
  // Tab-separated, three columns head<TAB>relation<TAB>tail, one triple per
  // line; lines starting with '#' and blank lines are ignored.
  static OpenKg load_tsv(const std::filesystem::path& path);
  static OpenKg from_records(const std::vector<std::array<std::string, 3>>& records);

  bool empty() const { return records_.empty(); }
  std::size_t size() const { return records_.size(); }
  const std::vector<KgRecord>& records() const { return records_; }

  // Example retrieval, at most 10 records:
  //   (i)  entity is a head in the KG -> its records in file order;
  //   (ii) otherwise, subentity records interleaved round-robin;
  //   (iii) otherwise, a seeded uniform sample (exactly 10 when possible).
  std::vector<KgRecord> retrieve_examples(const Entity& e, std::uint64_t rng_seed) const;

  // Splits on whitespace/hyphen when separators are present; otherwise a
  // greedy longest-prefix decomposition of e.normalized against the head
  // vocabulary. Unmatched residue characters are dropped.
  std::vector<std::string> tokenize_subentities(const Entity& e) const;

  // Membership under the same normalization as KgTree dedup keys.
  bool contains_triple(std::string_view head, std::string_view relation,
                       std::string_view tail) const;

  bool is_head(std::string_view normalized) const;
  std::size_t head_vocab_size() const { return heads_in_order_.size(); }
  // First-appearance surfaces, in file order.
  const std::vector<std::string>& head_surfaces_in_order() const { return heads_in_order_; }
  const std::vector<std::string>& tail_only_surfaces_in_order() const {
    return tails_only_in_order_;
  }

 private:
  void add_record(const std::string& head, const std::string& relation, const std::string& tail);
  void finish_vocab();

  std::vector<KgRecord> records_;
  std::unordered_map<std::string, std::vector<std::size_t>> by_head_;
  std::unordered_set<std::string> head_vocab_;
  std::unordered_set<std::string> tail_vocab_;
  std::unordered_set<std::string> triple_keys_;
  std::vector<std::string> heads_in_order_;
  std::vector<std::string> tails_in_order_;
  std::vector<std::string> tails_only_in_order_;
};

}  // namespace sackg
