#include "sackg/pruner.hpp"

#include <cctype>
#include <cstdlib>
#include <iostream>
#include <random>
#include <unordered_set>

#include "httplib.h"
#include "json.hpp"
#include "sackg/errors.hpp"
#include "sackg/random.hpp"
#include "sackg/text.hpp"

namespace sackg {

std::string_view to_string(PrunerLabel label) {
  return label == PrunerLabel::Growing ? "growing" : "pruned";
}

PrunerLabel pruner_label_from_string(std::string_view s) {
  if (s == "growing") return PrunerLabel::Growing;
  if (s == "pruned") return PrunerLabel::Pruned;
  throw ParseError("unknown pruner label: " + std::string(s));
}

HeuristicOptions HeuristicOptions::defaults() {
  HeuristicOptions o;
  o.units = {"degrees", "degree",  "celsius", "fahrenheit", "acres",  "acre",   "days",
             "day",     "hours",   "hour",    "minutes",    "minute", "seconds", "weeks",
             "week",    "months",  "month",   "years",      "year",   "%",       "percent",
             "kg",      "g",       "mg",      "tons",       "ton",    "cm",      "mm",
             "m",       "km",      "meters",  "metres",     "hectares", "liters", "litres",
             "ml",      "ppm"};
  o.pruned_prefixes = {"lack of ", "absence of "};
  o.max_growing_tokens = 6;
  return o;
}

HeuristicPruner::HeuristicPruner(HeuristicOptions options) : options_(std::move(options)) {}

namespace {

bool purely_numeric_or_date(const std::string& normalized) {
  bool saw_digit = false;
  for (char c : normalized) {
    if (std::isdigit(static_cast<unsigned char>(c))) {
      saw_digit = true;
      continue;
    }
    switch (c) {
      case '-':
      case '/':
      case '.':
      case ':':
      case ',':
      case ' ':
        continue;
      default:
        return false;
    }
  }
  return saw_digit;
}

bool token_has_unit_suffix(const std::string& token, const std::vector<std::string>& units) {
  // Glued forms like "50%" or "10kg": digits directly followed by a unit.
  std::size_t i = 0;
  while (i < token.size() && !std::isalpha(static_cast<unsigned char>(token[i])) &&
         token[i] != '%') {
    ++i;
  }
  if (i == 0 || i >= token.size()) return false;
  if (!text::contains_digit(token.substr(0, i))) return false;
  std::string suffix = token.substr(i);
  for (const std::string& unit : units) {
    if (suffix == unit) return true;
  }
  return false;
}

}  // namespace

PrunerLabel HeuristicPruner::heuristic_label(const Entity& e) const {
  const std::string& norm = e.normalized;

  for (const std::string& prefix : options_.pruned_prefixes) {
    if (norm.rfind(prefix, 0) == 0) return PrunerLabel::Pruned;
  }

  if (purely_numeric_or_date(norm)) return PrunerLabel::Pruned;

  std::vector<std::string> toks = text::tokens(norm);
  if (static_cast<int>(toks.size()) > options_.max_growing_tokens) return PrunerLabel::Pruned;

  auto is_unit = [&](const std::string& tok) {
    for (const std::string& unit : options_.units) {
      if (tok == unit) return true;
    }
    return false;
  };
  for (std::size_t i = 0; i < toks.size(); ++i) {
    if (token_has_unit_suffix(toks[i], options_.units)) return PrunerLabel::Pruned;
    if (i + 1 < toks.size() && text::contains_digit(toks[i]) && is_unit(toks[i + 1])) {
      return PrunerLabel::Pruned;
    }
  }
  return PrunerLabel::Growing;
}

PrunerVerdict HeuristicPruner::classify(const Entity& e) {
  return {e, heuristic_label(e), VerdictSource::Heuristic};
}

RemotePruner::RemotePruner(std::string url, HeuristicOptions fallback_options,
                           std::function<void(const std::string&)> log)
    : url_(std::move(url)),
      fallback_(std::move(fallback_options)),
      log_(log ? std::move(log) : [](const std::string& msg) { std::cerr << msg << "\n"; }) {
  if (url_.empty()) throw ConfigError("remote pruner URL is empty (set SACKG_PRUNER_URL)");
}

RemotePruner RemotePruner::from_env() {
  const char* url = std::getenv("SACKG_PRUNER_URL");
  return RemotePruner(url ? url : "");
}

PrunerVerdict RemotePruner::classify(const Entity& e) {
  try {
    httplib::Client client(url_);
    client.set_connection_timeout(10);
    client.set_read_timeout(30);
    nlohmann::json body;
    body["text"] = e.surface;
    auto res = client.Post("/classify", body.dump(), "application/json");
    if (!res) throw TransportError("pruner request failed: " + httplib::to_string(res.error()));
    if (res->status < 200 || res->status >= 300) {
      throw TransportError("pruner endpoint returned status " + std::to_string(res->status));
    }
    auto parsed = nlohmann::json::parse(res->body);
    PrunerLabel label = pruner_label_from_string(parsed.at("label").get<std::string>());
    return {e, label, VerdictSource::Remote};
  } catch (const Error& err) {
    log_("warning: remote pruner failed for \"" + e.surface + "\" (" + err.what() +
         "); falling back to heuristic");
    return {e, fallback_.heuristic_label(e), VerdictSource::Heuristic};
  } catch (const nlohmann::json::exception& err) {
    log_("warning: remote pruner returned malformed response for \"" + e.surface + "\" (" +
         err.what() + "); falling back to heuristic");
    return {e, fallback_.heuristic_label(e), VerdictSource::Heuristic};
  }
}

std::vector<TrainingPair> extract_training_pairs(const OpenKg& kg, std::size_t n_per_class,
                                                 std::uint64_t rng_seed) {
  if (n_per_class < 1) throw InsufficientPoolError("n_per_class must be >= 1");
  const auto& growing_pool = kg.head_surfaces_in_order();
  const auto& pruned_pool = kg.tail_only_surfaces_in_order();
  if (growing_pool.size() < n_per_class) {
    throw InsufficientPoolError("growing pool has " + std::to_string(growing_pool.size()) +
                                " entities, need " + std::to_string(n_per_class));
  }
  if (pruned_pool.size() < n_per_class) {
    throw InsufficientPoolError("pruned pool has " + std::to_string(pruned_pool.size()) +
                                " entities, need " + std::to_string(n_per_class));
  }

  std::mt19937_64 engine(rng_seed);
  std::vector<TrainingPair> out;
  out.reserve(2 * n_per_class);
  for (std::size_t idx : rng::sample_without_replacement(growing_pool.size(), n_per_class, engine)) {
    out.push_back({growing_pool[idx], PrunerLabel::Growing});
  }
  for (std::size_t idx : rng::sample_without_replacement(pruned_pool.size(), n_per_class, engine)) {
    out.push_back({pruned_pool[idx], PrunerLabel::Pruned});
  }
  return out;
}

}  // namespace sackg
