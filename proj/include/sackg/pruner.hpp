#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "sackg/entity.hpp"
#include "sackg/open_kg.hpp"

namespace sackg {

enum class PrunerLabel { Growing, Pruned };

std::string_view to_string(PrunerLabel label);
PrunerLabel pruner_label_from_string(std::string_view s);

enum class VerdictSource { Heuristic, Remote, Override };

struct PrunerVerdict {
  Entity entity;
  PrunerLabel label = PrunerLabel::Growing;
  VerdictSource source = VerdictSource::Heuristic;
};

// Decides whether a tail entity seeds the next level. Implementations must
// be deterministic for a fixed entity.
class Pruner {
 public:
  virtual ~Pruner() = default;
  virtual PrunerVerdict classify(const Entity& e) = 0;
};

struct HeuristicOptions {
  std::vector<std::string> units;
  std::vector<std::string> pruned_prefixes;
  int max_growing_tokens = 6;

  static HeuristicOptions defaults();
};

// Rule-based stand-in for a trained classifier. An entity is pruned when it
// is purely numeric/date, carries a number next to a unit word, exceeds the
// token budget, or starts with a non-entity phrase prefix ("lack of", ...).
class HeuristicPruner : public Pruner {
 public:
  explicit HeuristicPruner(HeuristicOptions options = HeuristicOptions::defaults());

  PrunerVerdict classify(const Entity& e) override;
  PrunerLabel heuristic_label(const Entity& e) const;

 private:
  HeuristicOptions options_;
};

// HTTP classifier: POST {"text": surface} -> {"label": "growing"|"pruned"}.
// Transport failures fall back to the heuristic (verdict source Heuristic)
// and are logged.
class RemotePruner : public Pruner {
 public:
  RemotePruner(std::string url, HeuristicOptions fallback_options = HeuristicOptions::defaults(),
               std::function<void(const std::string&)> log = nullptr);
  static RemotePruner from_env();

  PrunerVerdict classify(const Entity& e) override;

 private:
  std::string url_;
  HeuristicPruner fallback_;
  std::function<void(const std::string&)> log_;
};

struct TrainingPair {
  std::string text;
  PrunerLabel label = PrunerLabel::Growing;
};

// Balanced classifier training data from an open KG: n_per_class head
// surfaces labeled growing and n_per_class tail-only surfaces (tails that
// never appear as heads) labeled pruned, sampled without replacement.
std::vector<TrainingPair> extract_training_pairs(const OpenKg& kg, std::size_t n_per_class,
                                                 std::uint64_t rng_seed);

}  // namespace sackg
