#include "sackg/builder.hpp"

#include <algorithm>
#include <future>
#include <sstream>

#include "sackg/errors.hpp"
#include "sackg/prompting.hpp"
#include "sackg/random.hpp"
#include "sackg/text.hpp"

namespace sackg {

namespace {

std::string join_sentences(const std::vector<std::string>& sentences, std::size_t max_tokens) {
  std::string out;
  std::size_t used = 0;
  for (const std::string& sentence : sentences) {
    std::size_t n = text::count_tokens(sentence);
    if (used + n > max_tokens) break;
    used += n;
    if (!out.empty()) out += ' ';
    out += sentence;
  }
  return out;
}

}  // namespace

ExpansionResult generate_expansion(const Entity& e, int level, const BuildConfig& cfg,
                                   const BuildDeps& deps) {
  ExpansionResult result;
  result.entity = e;
  result.level = level;

  std::vector<std::string> context;
  try {
    context = deps.corpus->retrieve_context_sentences(e, cfg.retrieval_cap_tokens);
  } catch (const NoContextError&) {
    result.no_context = true;
    result.diagnostic = "no corpus context";
    return result;
  }

  PromptBundle bundle;
  bundle.text = join_sentences(context, cfg.prompt_text_cap_tokens);
  bundle.entity = e;
  bundle.instruction = render_instruction(deps.instruction_template, e, cfg.min_triples);
  bundle.examples = to_raw_triples(deps.open_kg->retrieve_examples(e, cfg.rng_seed));

  VerifyLimits limits;
  limits.min_triples = cfg.min_triples;
  limits.elimination_threshold = cfg.elimination_threshold;
  limits.max_regeneration_rounds = cfg.regeneration_rounds;

  GenerateFn generate = [&](const std::string& prompt) {
    return deps.llm->complete(prompt, deps.params);
  };

  try {
    VerifyOutcome outcome = verify_loop_detailed(generate, bundle, *deps.rules, limits, level);
    result.accepted = std::move(outcome.accepted);
    result.llm_calls = outcome.llm_calls;
    result.generated = outcome.generated_total;
    result.flagged = outcome.flagged_total;
  } catch (const Error& err) {
    result.llm_failed = true;
    result.diagnostic = err.what();
  }
  return result;
}

void apply_expansion(KgTree& tree, const ExpansionResult& result, const BuildDeps& deps,
                     LevelStats& stats) {
  ++stats.expanded;
  stats.llm_calls += result.llm_calls;
  stats.generated += result.generated;
  stats.flagged += result.flagged;
  stats.accepted += static_cast<int>(result.accepted.size());

  if (result.no_context || result.llm_failed) {
    tree.mark_expanded_empty(result.entity, result.diagnostic);
    ++stats.empty_expansions;
    if (result.llm_failed && deps.log) {
      deps.log("warning: generation failed for \"" + result.entity.surface +
               "\": " + result.diagnostic);
    }
    return;
  }

  bool inserted_any = false;
  for (const Triple& t : result.accepted) {
    bool tail_was_new = !tree.has_node(t.tail.normalized);
    if (!tree.insert_triple(t)) continue;
    inserted_any = true;
    ++stats.inserted;
    if (tail_was_new) {
      PrunerVerdict verdict = deps.pruner->classify(t.tail);
      if (verdict.label == PrunerLabel::Pruned) {
        tree.mark_status(t.tail, NodeStatus::Pruned);
        ++stats.tails_pruned;
      } else {
        ++stats.tails_growing;
      }
    }
  }

  if (inserted_any) {
    tree.mark_expanded(result.entity);
  } else {
    tree.mark_expanded_empty(result.entity, result.accepted.empty() ? "zero accepted triples"
                                                                    : "all triples duplicate");
    ++stats.empty_expansions;
  }
}

std::vector<Triple> expand_entity(KgTree& tree, const Entity& e, int level,
                                  const BuildConfig& cfg, const BuildDeps& deps) {
  ExpansionResult result = generate_expansion(e, level, cfg, deps);
  LevelStats scratch;
  apply_expansion(tree, result, deps, scratch);
  return result.accepted;
}

BuildResult build(const std::vector<Entity>& roots, const BuildConfig& cfg,
                  const BuildDeps& deps) {
  BuildResult out;
  KgTree& tree = out.tree;

  std::vector<Entity> frontier;
  for (const Entity& root : roots) {
    if (tree.has_node(root.normalized)) continue;
    tree.add_root(root);
    frontier.push_back(root);
  }

  for (int level = 1; level <= cfg.max_levels && !frontier.empty(); ++level) {
    if (tree.node_count() >= cfg.max_nodes) {
      out.stats.stopped_by_node_cap = true;
      break;
    }

    LevelStats stats;
    stats.level = level;

    // Generation runs concurrently; results merge in frontier order so the
    // final tree does not depend on parallelism.
    std::size_t batch = static_cast<std::size_t>(std::max(cfg.parallelism, 1));
    for (std::size_t begin = 0; begin < frontier.size(); begin += batch) {
      std::size_t end = std::min(begin + batch, frontier.size());
      std::vector<std::future<ExpansionResult>> wave;
      for (std::size_t i = begin; i < end; ++i) {
        const Entity& e = frontier[i];
        if (batch == 1) {
          std::promise<ExpansionResult> ready;
          ready.set_value(generate_expansion(e, level, cfg, deps));
          wave.push_back(ready.get_future());
        } else {
          wave.push_back(std::async(std::launch::async, [&cfg, &deps, e, level] {
            return generate_expansion(e, level, cfg, deps);
          }));
        }
      }
      for (auto& task : wave) {
        ExpansionResult result = task.get();
        out.stats.expansion_order.push_back(result.entity.normalized);
        apply_expansion(tree, result, deps, stats);
      }
    }

    out.stats.levels.push_back(stats);
    if (deps.log) {
      std::ostringstream line;
      line << "level=" << level << " expanded=" << stats.expanded
           << " empty=" << stats.empty_expansions << " llm_calls=" << stats.llm_calls
           << " generated=" << stats.generated << " flagged=" << stats.flagged
           << " accepted=" << stats.accepted << " inserted=" << stats.inserted
           << " tails_growing=" << stats.tails_growing << " tails_pruned=" << stats.tails_pruned;
      deps.log(line.str());
    }
    if (deps.on_level_end) deps.on_level_end(tree, level);

    frontier = tree.frontier(level);
  }
  return out;
}

std::vector<Entity> sample_roots(const OpenKg& kg, std::size_t n, std::uint64_t rng_seed) {
  const auto& pool = kg.head_surfaces_in_order();
  if (pool.size() < n) {
    throw InsufficientPoolError("open KG head vocabulary has " + std::to_string(pool.size()) +
                                " entities, need " + std::to_string(n) + " roots");
  }
  std::vector<Entity> out;
  out.reserve(n);
  for (std::size_t idx : rng::sample_without_replacement(pool.size(), n, rng_seed)) {
    out.emplace_back(pool[idx]);
  }
  return out;
}

}  // namespace sackg
