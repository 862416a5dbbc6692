#include <atomic>
#include <memory>
#include <set>
#include <sstream>

#include "doctest.h"
#include "sackg/builder.hpp"
#include "sackg/errors.hpp"
#include "sackg/snapshot.hpp"
#include "test_util.hpp"

using namespace sackg;

namespace {

// Counts completions and remembers prompts; useful to assert call budgets.
class CountingClient : public LlmClient {
 public:
  explicit CountingClient(Transcript transcript) : inner_(std::move(transcript)) {}
  std::string complete(const std::string& prompt, const GenerationParams& params) override {
    ++calls_;
    return inner_.complete(prompt, params);
  }
  int calls() const { return calls_; }

 private:
  MockLlmClient inner_;
  std::atomic<int> calls_{0};
};

struct Harness {
  CorpusIndex corpus;
  OpenKg open_kg;
  std::unique_ptr<CountingClient> llm;
  HeuristicPruner pruner;
  RuleSet rules;
  BuildDeps deps;

  Harness(const std::vector<std::string>& corpus_sentences, Transcript transcript)
      : corpus(make_corpus(corpus_sentences)),
        open_kg(OpenKg::from_records({{"seed entity", "relation", "seed tail"}})),
        llm(std::make_unique<CountingClient>(std::move(transcript))) {
    deps.corpus = &corpus;
    deps.open_kg = &open_kg;
    deps.llm = llm.get();
    deps.pruner = &pruner;
    deps.rules = &rules;
    deps.instruction_template = default_instruction_template();
  }

  static CorpusIndex make_corpus(const std::vector<std::string>& sentences) {
    std::string joined;
    for (const std::string& s : sentences) {
      joined += s;
      joined += ' ';
    }
    return CorpusIndex({joined});
  }
};

std::string matcher_for(const std::string& entity) {
  return "triples about " + entity + " from the text";
}

std::string snapshot_string(const KgTree& tree) {
  std::ostringstream out;
  write_snapshot(tree, out);
  return out.str();
}

// Transcript for a complete binary tree: every listed entity proposes two
// fresh growing tails plus one pruned measurement.
Transcript binary_tree_transcript(const std::vector<std::string>& entities) {
  Transcript t;
  for (const std::string& e : entities) {
    std::string response = "(" + e + " | left | " + e + "L)\n(" + e + " | right | " + e +
                           "R)\n(" + e + " | size | 99 kg)";
    t.entries.push_back({matcher_for(e), response});
  }
  return t;
}

std::vector<std::string> sentences_for(const std::vector<std::string>& entities) {
  std::vector<std::string> out;
  for (const std::string& e : entities) {
    out.push_back("Everyone talks about " + e + " around here.");
  }
  return out;
}

}  // namespace

TEST_SUITE("builder") {

TEST_CASE("expand_entity runs the full per-entity pipeline") {
  Transcript t;
  t.entries.push_back(
      {matcher_for("rice"),
       "(rice | has variety | glutinous rice)\n"
       "(rice | grown in | paddy field)\n"
       "(rice | optimal growth temperature | 20-25 degrees Celsius)\n"
       "(rice | cultivated on | 33 acres)\n"
       "(rice | eaten in | Asia)"});
  Harness h({"People grow rice."}, std::move(t));

  KgTree tree;
  tree.add_root(Entity("rice"));
  auto accepted = expand_entity(tree, Entity("rice"), 1, {}, h.deps);
  CHECK(accepted.size() == 5);
  CHECK(tree.size() == 5);
  CHECK(*tree.status_of("rice") == NodeStatus::Expanded);
  // Two measurement tails pruned, three growing.
  auto frontier = tree.frontier(1);
  REQUIRE(frontier.size() == 3);
  CHECK(frontier[0].normalized == "glutinous rice");
  CHECK(frontier[1].normalized == "paddy field");
  CHECK(frontier[2].normalized == "asia");
  CHECK(*tree.status_of("20-25 degrees celsius") == NodeStatus::Pruned);
  CHECK(*tree.status_of("33 acres") == NodeStatus::Pruned);
}

TEST_CASE("entities without corpus context are expanded empty with no call") {
  Harness h({"Only wheat is described here."}, Transcript{});
  KgTree tree;
  tree.add_root(Entity("rice"));
  auto accepted = expand_entity(tree, Entity("rice"), 1, {}, h.deps);
  CHECK(accepted.empty());
  CHECK(h.llm->calls() == 0);
  CHECK(*tree.status_of("rice") == NodeStatus::Expanded);
  CHECK(tree.is_expanded_empty("rice"));
}

TEST_CASE("llm failures are isolated as expanded-empty") {
  // The entity has context but no scripted response.
  Harness h({"So much rice here."}, Transcript{});
  std::vector<std::string> logs;
  h.deps.log = [&](const std::string& line) { logs.push_back(line); };
  KgTree tree;
  tree.add_root(Entity("rice"));
  auto accepted = expand_entity(tree, Entity("rice"), 1, {}, h.deps);
  CHECK(accepted.empty());
  CHECK(h.llm->calls() == 1);
  CHECK(tree.is_expanded_empty("rice"));
  REQUIRE_FALSE(logs.empty());
  CHECK(logs[0].find("rice") != std::string::npos);
}

TEST_CASE("already-expanded tails are not re-added to any frontier") {
  Transcript t;
  t.entries.push_back({matcher_for("rice"),
                       "(rice | related to | paddy)\n(rice | eaten in | Asia)\n"
                       "(rice | labeled | crop)"});
  t.entries.push_back({matcher_for("paddy"),
                       "(paddy | used for | rice)\n(paddy | has | levee)\n"
                       "(paddy | holds | water)"});
  Harness h({"Some rice text.", "Some paddy text."}, std::move(t));

  BuildConfig cfg;
  cfg.max_levels = 5;
  auto result = build({Entity("rice")}, cfg, h.deps);
  const KgTree& tree = result.tree;
  // (paddy | used for | rice) inserted fine, but rice never re-expanded.
  CHECK(tree.size() == 6);
  int rice_expansions = 0;
  for (const auto& name : result.stats.expansion_order) {
    if (name == "rice") ++rice_expansions;
  }
  CHECK(rice_expansions == 1);
}

TEST_CASE("build enumerates levels breadth-first") {
  // Root a; a -> aL,aR; then four level-3 expansions: 1 + 2 + 4 = 7.
  std::vector<std::string> entities = {"a", "aL", "aR", "aLL", "aLR", "aRL", "aRR"};
  Harness h(sentences_for(entities), binary_tree_transcript(entities));
  BuildConfig cfg;
  cfg.max_levels = 3;
  auto result = build({Entity("a")}, cfg, h.deps);
  CHECK(result.stats.expansion_order.size() == 7);
  REQUIRE(result.stats.levels.size() == 3);
  CHECK(result.stats.levels[0].expanded == 1);
  CHECK(result.stats.levels[1].expanded == 2);
  CHECK(result.stats.levels[2].expanded == 4);
  CHECK(result.tree.max_level_reached() == 3);
  // Every expansion produced 3 triples.
  CHECK(result.tree.size() == 21);
}

TEST_CASE("max_levels of one expands only the roots") {
  std::vector<std::string> entities = {"a", "aL", "aR"};
  Harness h(sentences_for(entities), binary_tree_transcript(entities));
  BuildConfig cfg;
  cfg.max_levels = 1;
  auto result = build({Entity("a")}, cfg, h.deps);
  CHECK(result.stats.expansion_order == std::vector<std::string>{"a"});
  CHECK(result.tree.max_level_reached() == 1);
}

TEST_CASE("build stops when every tail is pruned") {
  Transcript t;
  t.entries.push_back({matcher_for("rice"),
                       "(rice | weighs | 10 kg)\n(rice | costs | 5 %)\n"
                       "(rice | takes | 3 days)"});
  Harness h({"All about rice."}, std::move(t));
  BuildConfig cfg;
  cfg.max_levels = 4;
  auto result = build({Entity("rice")}, cfg, h.deps);
  CHECK(result.tree.max_level_reached() == 1);
  CHECK(result.stats.levels.size() == 1);
  CHECK(result.stats.levels[0].tails_pruned == 3);
}

TEST_CASE("node cap halts expansion at the level boundary") {
  std::vector<std::string> entities = {"a",   "aL",  "aR",  "aLL", "aLR", "aRL", "aRR",
                                       "aLLL", "aLLR"};
  Harness h(sentences_for(entities), binary_tree_transcript(entities));
  BuildConfig cfg;
  cfg.max_levels = 10;
  cfg.max_nodes = 5;
  auto result = build({Entity("a")}, cfg, h.deps);
  // Level 1 creates 4 nodes (< 5), level 2 pushes past the cap, level 3
  // never starts.
  CHECK(result.stats.levels.size() == 2);
  CHECK(result.stats.stopped_by_node_cap);
  std::set<std::string> expanded(result.stats.expansion_order.begin(),
                                 result.stats.expansion_order.end());
  CHECK(expanded.size() == result.stats.expansion_order.size());
}

TEST_CASE("sample_roots draws reproducibly from the head vocabulary") {
  std::vector<std::array<std::string, 3>> records;
  for (int i = 0; i < 5; ++i) {
    records.push_back({"head " + std::to_string(i), "r", "tail " + std::to_string(i)});
  }
  OpenKg kg = OpenKg::from_records(records);

  auto a = sample_roots(kg, 3, 7);
  auto b = sample_roots(kg, 3, 7);
  REQUIRE(a.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(a[i].normalized == b[i].normalized);

  auto all = sample_roots(kg, 5, 7);
  std::set<std::string> names;
  for (const Entity& e : all) names.insert(e.normalized);
  CHECK(names.size() == 5);

  CHECK_THROWS_AS(sample_roots(kg, 6, 7), InsufficientPoolError);
}

TEST_CASE("two runs over the same fixture are byte-identical") {
  auto run_once = [](int parallelism) {
    std::vector<std::string> entities = {"a", "aL", "aR", "aLL", "aLR", "aRL", "aRR"};
    Harness h(sentences_for(entities), binary_tree_transcript(entities));
    BuildConfig cfg;
    cfg.max_levels = 3;
    cfg.parallelism = parallelism;
    auto result = build({Entity("a")}, cfg, h.deps);
    return snapshot_string(result.tree);
  };
  std::string serial = run_once(1);
  CHECK(run_once(1) == serial);
  CHECK(run_once(4) == serial);
  CHECK(run_once(3) == serial);
}

}  // TEST_SUITE
