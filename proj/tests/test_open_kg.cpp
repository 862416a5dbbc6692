#include <array>
#include <numeric>
#include <random>

#include "doctest.h"
#include "sackg/errors.hpp"
#include "sackg/open_kg.hpp"
#include "test_util.hpp"

using namespace sackg;

namespace {

// Reference sampler: the documented partial Fisher-Yates draw, written out
// independently of the library.
std::vector<std::size_t> reference_sample(std::size_t pool, std::size_t k, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  std::vector<std::size_t> indices(pool);
  std::iota(indices.begin(), indices.end(), 0);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t j = i + static_cast<std::size_t>(engine() % (pool - i));
    std::swap(indices[i], indices[j]);
    out.push_back(indices[i]);
  }
  return out;
}

OpenKg micropropagation_kg() {
  std::vector<std::array<std::string, 3>> records;
  for (int i = 0; i < 6; ++i) {
    records.push_back({"micro", "relation " + std::to_string(i), "m-tail " + std::to_string(i)});
  }
  for (int i = 0; i < 6; ++i) {
    records.push_back(
        {"propagation", "relation " + std::to_string(i), "p-tail " + std::to_string(i)});
  }
  records.push_back({"rice", "type", "cereal"});
  return OpenKg::from_records(records);
}

}  // namespace

TEST_SUITE("open_kg") {

TEST_CASE("load_tsv reads records and skips comments") {
  OpenKg kg = OpenKg::load_tsv(testutil::fixture("toy_open_kg.tsv"));
  CHECK(kg.size() == 25);
  CHECK(kg.is_head("rice"));
  CHECK(kg.is_head("glutinous rice"));
  CHECK_FALSE(kg.is_head("cereal grain"));
}

TEST_CASE("load_tsv rejects malformed lines") {
  testutil::TempDir dir;
  testutil::write_file(dir.file("two_cols.tsv"), "rice\ttype\n");
  CHECK_THROWS_AS(OpenKg::load_tsv(dir.file("two_cols.tsv")), ParseError);
  testutil::write_file(dir.file("four_cols.tsv"), "a\tb\tc\td\n");
  CHECK_THROWS_AS(OpenKg::load_tsv(dir.file("four_cols.tsv")), ParseError);
  CHECK_THROWS_AS(OpenKg::load_tsv(dir.file("missing.tsv")), IoError);
}

TEST_CASE("case (i): heads with many records are capped at 10 in file order") {
  std::vector<std::array<std::string, 3>> records;
  for (int i = 0; i < 14; ++i) {
    records.push_back({"rice", "relation " + std::to_string(i), "tail " + std::to_string(i)});
  }
  OpenKg kg = OpenKg::from_records(records);
  auto out = kg.retrieve_examples(Entity("rice"), 1);
  REQUIRE(out.size() == 10);
  for (int i = 0; i < 10; ++i) {
    CHECK(out[i].relation == "relation " + std::to_string(i));
    CHECK(out[i].head_norm == "rice");
  }
}

TEST_CASE("case (ii): micropropagation interleaves subentity records") {
  OpenKg kg = micropropagation_kg();
  auto out = kg.retrieve_examples(Entity("micropropagation"), 1);
  REQUIRE(out.size() == 10);
  for (int i = 0; i < 10; ++i) {
    if (i % 2 == 0) {
      CHECK(out[i].head == "micro");
      CHECK(out[i].relation == "relation " + std::to_string(i / 2));
    } else {
      CHECK(out[i].head == "propagation");
      CHECK(out[i].relation == "relation " + std::to_string(i / 2));
    }
  }
}

TEST_CASE("case (iii): unmatched entities get a seeded sample of exactly 10") {
  std::vector<std::array<std::string, 3>> records;
  for (int i = 0; i < 100; ++i) {
    records.push_back(
        {"head " + std::to_string(i), "relation " + std::to_string(i), "tail " + std::to_string(i)});
  }
  OpenKg kg = OpenKg::from_records(records);
  auto first = kg.retrieve_examples(Entity("zzqx"), 42);
  auto second = kg.retrieve_examples(Entity("zzqx"), 42);
  REQUIRE(first.size() == 10);
  REQUIRE(second.size() == 10);
  for (std::size_t i = 0; i < 10; ++i) {
    CHECK(first[i].head == second[i].head);
    CHECK(first[i].relation == second[i].relation);
  }
  auto expected = reference_sample(100, 10, 42);
  for (std::size_t i = 0; i < 10; ++i) {
    CHECK(first[i].head == "head " + std::to_string(expected[i]));
  }
  auto other_seed = kg.retrieve_examples(Entity("zzqx"), 43);
  bool identical = true;
  for (std::size_t i = 0; i < 10; ++i) {
    if (other_seed[i].head != first[i].head) identical = false;
  }
  CHECK_FALSE(identical);
}

TEST_CASE("case (iii) on a tiny KG returns everything") {
  OpenKg kg = OpenKg::from_records({{"a", "r", "b"}, {"c", "r", "d"}});
  auto out = kg.retrieve_examples(Entity("zzqx"), 7);
  CHECK(out.size() == 2);
}

TEST_CASE("empty KG is rejected") {
  OpenKg kg = OpenKg::from_records({});
  CHECK_THROWS_AS(kg.retrieve_examples(Entity("rice"), 1), EmptyKgError);
}

TEST_CASE("tokenize_subentities via vocabulary decomposition") {
  OpenKg kg = micropropagation_kg();
  auto parts = kg.tokenize_subentities(Entity("micropropagation"));
  REQUIRE(parts.size() == 2);
  CHECK(parts[0] == "micro");
  CHECK(parts[1] == "propagation");
}

TEST_CASE("tokenize_subentities splits separators independent of vocabulary") {
  OpenKg kg = micropropagation_kg();
  auto parts = kg.tokenize_subentities(Entity("rice blast disease"));
  REQUIRE(parts.size() == 3);
  CHECK(parts[0] == "rice");
  CHECK(parts[1] == "blast");
  CHECK(parts[2] == "disease");
  auto hyphenated = kg.tokenize_subentities(Entity("drought-resistant"));
  REQUIRE(hyphenated.size() == 2);
  CHECK(hyphenated[0] == "drought");
  CHECK(hyphenated[1] == "resistant");
}

TEST_CASE("tokenize_subentities drops unmatched residues") {
  OpenKg kg = micropropagation_kg();
  auto parts = kg.tokenize_subentities(Entity("microx"));
  REQUIRE(parts.size() == 1);
  CHECK(parts[0] == "micro");
  CHECK(kg.tokenize_subentities(Entity("zzqx")).empty());
}

TEST_CASE("contains_triple uses dedup-key normalization") {
  OpenKg kg = OpenKg::load_tsv(testutil::fixture("toy_open_kg.tsv"));
  CHECK(kg.contains_triple("rice", "type", "cereal grain"));
  CHECK(kg.contains_triple("RICE", "Type", "Cereal  Grain"));
  CHECK_FALSE(kg.contains_triple("rice", "type", "fruit"));
}

TEST_CASE("retrieval is deterministic for identical inputs") {
  OpenKg kg = OpenKg::load_tsv(testutil::fixture("toy_open_kg.tsv"));
  for (const char* name : {"rice", "rice blast disease", "amylopectin"}) {
    auto a = kg.retrieve_examples(Entity(name), 5);
    auto b = kg.retrieve_examples(Entity(name), 5);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].head == b[i].head);
      CHECK(a[i].relation == b[i].relation);
      CHECK(a[i].tail == b[i].tail);
    }
  }
}

TEST_CASE("case (i) purity: every returned record is headed by the entity") {
  OpenKg kg = OpenKg::load_tsv(testutil::fixture("toy_open_kg.tsv"));
  for (const auto& rec : kg.retrieve_examples(Entity("rice"), 0)) {
    CHECK(rec.head_norm == "rice");
  }
}

}  // TEST_SUITE
