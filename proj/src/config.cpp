#include "sackg/config.hpp"

#include <fstream>

#include "sackg/errors.hpp"
#include "sackg/prompting.hpp"
#include "sackg/text.hpp"

namespace sackg {

namespace {

long long parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    long long v = std::stoll(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config key \"" + key + "\" expects an integer, got \"" + value + "\"");
  }
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config key \"" + key + "\" expects a number, got \"" + value + "\"");
  }
}

std::vector<std::string> parse_list(const std::string& value) {
  std::vector<std::string> out;
  std::string item;
  for (char c : value) {
    if (c == ',') {
      std::string trimmed = text::trim(item);
      if (!trimmed.empty()) out.push_back(trimmed);
      item.clear();
    } else {
      item.push_back(c);
    }
  }
  std::string trimmed = text::trim(item);
  if (!trimmed.empty()) out.push_back(trimmed);
  return out;
}

}  // namespace

Config::Config() {
  instruction_template = default_instruction_template();
  pruner_options = HeuristicOptions::defaults();
}

void Config::apply_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file: " + path.string());
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string trimmed = text::trim(line);
    if (trimmed.empty() || trimmed[0] == '#') continue;
    std::size_t eq = trimmed.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path.string() + " line " + std::to_string(line_no) +
                        ": expected key = value");
    }
    std::string key = text::trim(trimmed.substr(0, eq));
    std::string value = text::trim(trimmed.substr(eq + 1));
    try {
      apply_key_value(key, value);
    } catch (const ConfigError& e) {
      throw ConfigError(path.string() + " line " + std::to_string(line_no) + ": " + e.what());
    }
  }
}

void Config::apply_key_value(const std::string& key, const std::string& value) {
  if (key == "max_levels") build.max_levels = static_cast<int>(parse_int(key, value));
  else if (key == "max_nodes") build.max_nodes = static_cast<std::size_t>(parse_int(key, value));
  else if (key == "parallelism") build.parallelism = static_cast<int>(parse_int(key, value));
  else if (key == "min_triples") build.min_triples = static_cast<int>(parse_int(key, value));
  else if (key == "elimination_threshold")
    build.elimination_threshold = static_cast<int>(parse_int(key, value));
  else if (key == "regeneration_rounds")
    build.regeneration_rounds = static_cast<int>(parse_int(key, value));
  else if (key == "retrieval_cap_tokens")
    build.retrieval_cap_tokens = static_cast<std::size_t>(parse_int(key, value));
  else if (key == "prompt_text_cap_tokens")
    build.prompt_text_cap_tokens = static_cast<std::size_t>(parse_int(key, value));
  else if (key == "rng_seed") build.rng_seed = static_cast<std::uint64_t>(parse_int(key, value));
  else if (key == "root_sample_size")
    build.root_sample_size = static_cast<std::size_t>(parse_int(key, value));
  else if (key == "temperature") params.temperature = parse_double(key, value);
  else if (key == "max_output_tokens")
    params.max_output_tokens = static_cast<int>(parse_int(key, value));
  else if (key == "model_id") params.model_id = value;
  else if (key == "requests_per_minute")
    requests_per_minute = static_cast<int>(parse_int(key, value));
  else if (key == "instruction_template") instruction_template = value;
  else if (key == "unit_lexicon") pruner_options.units = parse_list(value);
  else if (key == "pruned_prefixes") pruner_options.pruned_prefixes = parse_list(value);
  else if (key == "max_growing_tokens")
    pruner_options.max_growing_tokens = static_cast<int>(parse_int(key, value));
  else throw ConfigError("unknown config key: \"" + key + "\"");
}

void Config::validate() const {
  auto positive = [](long long v, const char* name) {
    if (v <= 0) throw ConfigError(std::string(name) + " must be positive");
  };
  positive(build.max_levels, "max_levels");
  positive(static_cast<long long>(build.max_nodes), "max_nodes");
  positive(build.parallelism, "parallelism");
  positive(build.min_triples, "min_triples");
  positive(build.elimination_threshold, "elimination_threshold");
  if (build.regeneration_rounds < 0) throw ConfigError("regeneration_rounds must be >= 0");
  positive(static_cast<long long>(build.retrieval_cap_tokens), "retrieval_cap_tokens");
  positive(static_cast<long long>(build.prompt_text_cap_tokens), "prompt_text_cap_tokens");
  positive(static_cast<long long>(build.root_sample_size), "root_sample_size");
  if (build.prompt_text_cap_tokens > build.retrieval_cap_tokens) {
    throw ConfigError("prompt_text_cap_tokens must not exceed retrieval_cap_tokens");
  }
  if (params.temperature < 0.0 || params.temperature > 2.0) {
    throw ConfigError("temperature must be in [0, 2]");
  }
  positive(params.max_output_tokens, "max_output_tokens");
  if (requests_per_minute < 0) throw ConfigError("requests_per_minute must be >= 0");
  if (instruction_template.find("{entity}") == std::string::npos ||
      instruction_template.find("{min_triples}") == std::string::npos) {
    throw ConfigError("instruction template must contain {entity} and {min_triples}");
  }
}

}  // namespace sackg
