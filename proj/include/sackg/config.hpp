#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "sackg/builder.hpp"
#include "sackg/llm_client.hpp"
#include "sackg/pruner.hpp"

namespace sackg {

// Runtime configuration. Precedence: CLI flag > config file > built-in
// default. Defaults follow the documented operating point: temperature 0.1,
// quantity/elimination thresholds 3, retrieval cap 2000 tokens, prompt text
// cap 500 tokens, 120 sampled roots.
struct Config {
  BuildConfig build;
  GenerationParams params;
  int requests_per_minute = 0;
  std::string instruction_template;
  HeuristicOptions pruner_options;

  Config();

  // `key = value` lines; blank lines and lines starting with '#' are
  // ignored. Unknown keys raise ConfigError.
  void apply_file(const std::filesystem::path& path);
  void apply_key_value(const std::string& key, const std::string& value);

  void validate() const;
};

}  // namespace sackg
