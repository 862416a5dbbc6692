#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "sackg/corpus.hpp"
#include "sackg/entity.hpp"
#include "sackg/kg_tree.hpp"
#include "sackg/llm_client.hpp"
#include "sackg/open_kg.hpp"
#include "sackg/pruner.hpp"
#include "sackg/verifier.hpp"

namespace sackg {

struct BuildConfig {
  int max_levels = 3;
  std::size_t max_nodes = 1000000;
  int parallelism = 1;
  int min_triples = 3;
  int elimination_threshold = 3;
  int regeneration_rounds = 2;
  std::size_t retrieval_cap_tokens = 2000;
  std::size_t prompt_text_cap_tokens = 500;
  std::uint64_t rng_seed = 0;
  std::size_t root_sample_size = 120;
};

struct BuildDeps {
  const CorpusIndex* corpus = nullptr;
  const OpenKg* open_kg = nullptr;
  LlmClient* llm = nullptr;
  Pruner* pruner = nullptr;
  const RuleSet* rules = nullptr;
  GenerationParams params;
  std::string instruction_template;
  std::function<void(const std::string&)> log;                // optional
  std::function<void(const KgTree&, int level)> on_level_end;  // optional checkpoint hook
};

struct LevelStats {
  int level = 0;
  int expanded = 0;
  int empty_expansions = 0;
  int llm_calls = 0;
  int generated = 0;
  int flagged = 0;
  int accepted = 0;
  int inserted = 0;
  int tails_growing = 0;
  int tails_pruned = 0;
};

struct BuildStats {
  std::vector<LevelStats> levels;
  std::vector<std::string> expansion_order;  // normalized identities
  bool stopped_by_node_cap = false;
};

struct BuildResult {
  KgTree tree;
  BuildStats stats;
};

// Everything expand_entity produces before the tree is touched. Generation
// is side-effect-free on the tree so entities can be processed in parallel
// and merged deterministically in frontier order.
struct ExpansionResult {
  Entity entity;
  int level = 1;
  std::vector<Triple> accepted;
  bool no_context = false;
  bool llm_failed = false;
  std::string diagnostic;
  int llm_calls = 0;
  int generated = 0;
  int flagged = 0;
};

ExpansionResult generate_expansion(const Entity& e, int level, const BuildConfig& cfg,
                                   const BuildDeps& deps);

// Inserts the accepted triples, classifies newly registered tails, and
// marks the source entity expanded (expanded-empty when nothing was kept).
void apply_expansion(KgTree& tree, const ExpansionResult& result, const BuildDeps& deps,
                     LevelStats& stats);

// Full per-entity pipeline: retrieve -> prompt -> generate -> verify ->
// insert -> prune. Returns the accepted triples.
std::vector<Triple> expand_entity(KgTree& tree, const Entity& e, int level,
                                  const BuildConfig& cfg, const BuildDeps& deps);

// Level-by-level construction. Roots form the level-1 expansion set; the
// level-L frontier (growing entities first seen as tails at level L) is
// expanded at level L+1. Stops on empty frontier, max_levels, or the node
// cap. Per-entity failures are isolated.
BuildResult build(const std::vector<Entity>& roots, const BuildConfig& cfg,
                  const BuildDeps& deps);

// Seeded uniform sample from the open KG's head vocabulary.
std::vector<Entity> sample_roots(const OpenKg& kg, std::size_t n, std::uint64_t rng_seed);

}  // namespace sackg
