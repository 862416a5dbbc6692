#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sackg/builder.hpp"
#include "sackg/config.hpp"
#include "sackg/errors.hpp"
#include "sackg/eval.hpp"
#include "sackg/exporter.hpp"
#include "sackg/snapshot.hpp"

namespace fs = std::filesystem;
using namespace sackg;

namespace {

void require_file(const std::string& path, const std::string& flag) {
  if (!fs::exists(path)) {
    throw ConfigError("file given via " + flag + " not found: " + path);
  }
}

void log_stderr(const std::string& line) { std::cerr << line << "\n"; }

struct BuildArgs {
  std::vector<std::string> corpus;
  std::string open_kg;
  std::string rules;
  std::string llm;
  std::string out;
  std::vector<std::string> roots;
  std::string config_path;
  std::vector<std::pair<std::string, std::string>> overrides;
};

int run_build(const BuildArgs& args) {
  Config cfg;
  if (!args.config_path.empty()) {
    require_file(args.config_path, "--config");
    cfg.apply_file(args.config_path);
  }
  for (const auto& [key, value] : args.overrides) cfg.apply_key_value(key, value);
  cfg.validate();

  for (const std::string& path : args.corpus) require_file(path, "--corpus");
  require_file(args.open_kg, "--open-kg");

  std::vector<fs::path> corpus_paths(args.corpus.begin(), args.corpus.end());
  CorpusIndex corpus = CorpusIndex::load_files(corpus_paths);
  OpenKg open_kg = OpenKg::load_tsv(args.open_kg);
  RuleSet rules = load_rules(args.rules);

  std::unique_ptr<LlmClient> llm;
  if (args.llm.rfind("mock:", 0) == 0) {
    std::string path = args.llm.substr(5);
    require_file(path, "--llm");
    llm = std::make_unique<MockLlmClient>(Transcript::load(path));
  } else if (args.llm == "remote") {
    RemoteConfig remote;
    if (const char* url = std::getenv("SACKG_LLM_URL")) remote.base_url = url;
    if (const char* key = std::getenv("SACKG_LLM_KEY")) remote.api_key = key;
    remote.requests_per_minute = cfg.requests_per_minute;
    llm = std::make_unique<RetryingLlmClient>(
        std::make_shared<RemoteLlmClient>(std::move(remote)));
  } else {
    throw ConfigError("--llm expects mock:<transcript-path> or remote, got \"" + args.llm + "\"");
  }

  std::unique_ptr<Pruner> pruner;
  if (const char* url = std::getenv("SACKG_PRUNER_URL")) {
    pruner = std::make_unique<RemotePruner>(url, cfg.pruner_options, log_stderr);
  } else {
    pruner = std::make_unique<HeuristicPruner>(cfg.pruner_options);
  }

  std::vector<Entity> roots;
  if (!args.roots.empty()) {
    for (const std::string& root : args.roots) roots.emplace_back(root);
  } else {
    roots = sample_roots(open_kg, cfg.build.root_sample_size, cfg.build.rng_seed);
  }

  BuildDeps deps;
  deps.corpus = &corpus;
  deps.open_kg = &open_kg;
  deps.llm = llm.get();
  deps.pruner = pruner.get();
  deps.rules = &rules;
  deps.params = cfg.params;
  deps.instruction_template = cfg.instruction_template;
  deps.log = log_stderr;
  deps.on_level_end = [&](const KgTree& tree, int) { write_snapshot(tree, fs::path(args.out)); };

  BuildResult result = build(roots, cfg.build, deps);
  write_snapshot(result.tree, fs::path(args.out));

  std::cerr << "build complete: " << result.tree.size() << " triples, "
            << result.tree.node_count() << " nodes, max level "
            << result.tree.max_level_reached() << ", snapshot written to " << args.out << "\n";
  return 0;
}

int run_export(const std::string& in, const std::string& format, const std::string& out) {
  ExportFormat fmt = export_format_from_string(format);
  require_file(in, "--in");
  auto records = read_snapshot(fs::path(in));
  std::ofstream stream(out, std::ios::binary | std::ios::trunc);
  if (!stream) throw IoError("cannot open output file: " + out);
  export_records(records, fmt, stream);
  std::cerr << "exported " << records.size() << " triples to " << out << "\n";
  return 0;
}

std::vector<Judgment> judgments_for_single_judge(const std::string& path,
                                                 const std::string& judge) {
  auto all = load_judgments(path);
  if (!judge.empty()) {
    auto filtered = filter_by_judge(all, judge);
    if (filtered.empty()) {
      throw ConfigError("no judgments from judge \"" + judge + "\" in " + path);
    }
    return filtered;
  }
  auto ids = judge_ids(all);
  if (ids.size() > 1) {
    std::string listing;
    for (const auto& id : ids) listing += " " + id;
    throw ConfigError("judgments file has multiple judges (" + listing +
                      " ); pick one with --judge");
  }
  return all;
}

int run_evaluate(const std::string& snapshot_path, const std::string& judgments_path,
                 const std::string& open_kg_path, const std::string& judge) {
  require_file(snapshot_path, "--snapshot");
  require_file(judgments_path, "--judgments");
  auto records = read_snapshot(fs::path(snapshot_path));
  auto judgments = judgments_for_single_judge(judgments_path, judge);

  std::optional<OpenKg> kg;
  if (!open_kg_path.empty()) {
    require_file(open_kg_path, "--open-kg");
    kg = OpenKg::load_tsv(open_kg_path);
  }

  MetricReport report = evaluate(judgments, records, kg.has_value() ? &*kg : nullptr);
  nlohmann::ordered_json out;
  out["precision"] = report.precision;
  out["number_of_recalls"] = report.number_of_recalls;
  if (report.domain_specificity.has_value()) {
    out["domain_specificity"] = *report.domain_specificity;
  } else {
    out["domain_specificity"] = nullptr;
  }
  out["counts"] = {{"generated", report.counts.generated},
                   {"judged_correct", report.counts.judged_correct},
                   {"correct_domain_related", report.counts.correct_domain_related},
                   {"in_open_kg", report.counts.in_open_kg},
                   {"texts", report.counts.texts}};
  std::cout << out.dump() << "\n";
  return 0;
}

int run_agreement(const std::string& a_path, const std::string& b_path) {
  require_file(a_path, "--a");
  require_file(b_path, "--b");
  AgreementReport report = agreement(load_judgments(a_path), load_judgments(b_path));
  nlohmann::ordered_json out;
  out["precision"] = report.precision;
  out["recall"] = report.recall;
  out["f1"] = report.f1;
  out["kappa"] = report.kappa;
  out["keys"] = report.keys;
  std::cout << out.dump() << "\n";
  return 0;
}

int run_prune_train_data(const std::string& open_kg_path, std::size_t n, std::uint64_t seed,
                         const std::string& out_path) {
  require_file(open_kg_path, "--open-kg");
  OpenKg kg = OpenKg::load_tsv(open_kg_path);
  auto pairs = extract_training_pairs(kg, n, seed);

  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path, std::ios::binary | std::ios::trunc);
    if (!file) throw IoError("cannot open output file: " + out_path);
    out = &file;
  }
  for (const TrainingPair& pair : pairs) {
    nlohmann::ordered_json rec;
    rec["text"] = pair.text;
    rec["label"] = to_string(pair.label);
    *out << rec.dump() << "\n";
  }
  if (!out_path.empty()) {
    std::cerr << "wrote " << pairs.size() << " training pairs to " << out_path << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-level domain knowledge graph construction and evaluation"};
  app.require_subcommand(1);

  BuildArgs build_args;
  auto* build_cmd =
      app.add_subcommand("build", "Construct a knowledge graph from domain corpora");
  build_cmd->add_option("--corpus", build_args.corpus, "Corpus file(s): plain text or .jsonl")
      ->required();
  build_cmd->add_option("--open-kg", build_args.open_kg, "Open KG TSV file")->required();
  build_cmd->add_option("--rules", build_args.rules, "Rule file (JSONL)");
  build_cmd->add_option("--llm", build_args.llm, "mock:<transcript-path> or remote")->required();
  build_cmd->add_option("--out", build_args.out, "Snapshot output path")->required();
  build_cmd->add_option("--root", build_args.roots,
                        "Root entity (repeatable; default samples from the open KG)");
  build_cmd->add_option("--config", build_args.config_path, "Config file (key = value lines)");

  std::map<std::string, std::string> flag_to_key = {
      {"--max-levels", "max_levels"},
      {"--max-nodes", "max_nodes"},
      {"--parallelism", "parallelism"},
      {"--min-triples", "min_triples"},
      {"--elimination-threshold", "elimination_threshold"},
      {"--regeneration-rounds", "regeneration_rounds"},
      {"--retrieval-cap-tokens", "retrieval_cap_tokens"},
      {"--prompt-text-cap-tokens", "prompt_text_cap_tokens"},
      {"--seed", "rng_seed"},
      {"--root-sample-size", "root_sample_size"},
      {"--temperature", "temperature"},
      {"--max-output-tokens", "max_output_tokens"},
      {"--model-id", "model_id"},
      {"--requests-per-minute", "requests_per_minute"},
  };
  std::map<std::string, std::string> override_values;
  for (const auto& [flag, key] : flag_to_key) {
    build_cmd->add_option_function<std::string>(
        flag,
        [&override_values, key = key](const std::string& value) { override_values[key] = value; },
        "Override config key " + key);
  }

  std::string export_in, export_format, export_out;
  auto* export_cmd = app.add_subcommand("export", "Convert a snapshot to dot, graphml or tsv");
  export_cmd->add_option("--in", export_in, "Snapshot path")->required();
  export_cmd->add_option("--format", export_format, "dot, graphml or tsv")->required();
  export_cmd->add_option("--out", export_out, "Output path")->required();

  std::string eval_snapshot, eval_judgments, eval_open_kg, eval_judge;
  auto* eval_cmd = app.add_subcommand("evaluate", "Compute metrics from a judgment file");
  eval_cmd->add_option("--snapshot", eval_snapshot, "Snapshot path")->required();
  eval_cmd->add_option("--judgments", eval_judgments, "Judgments path (JSONL)")->required();
  eval_cmd->add_option("--open-kg", eval_open_kg, "Open KG TSV, enables domain specificity");
  eval_cmd->add_option("--judge", eval_judge, "Judge id when the file has several");

  std::string agree_a, agree_b;
  auto* agree_cmd =
      app.add_subcommand("agreement", "Score judge A against judge B (ground truth)");
  agree_cmd->add_option("--a", agree_a, "Judgments of judge A")->required();
  agree_cmd->add_option("--b", agree_b, "Judgments of judge B (ground truth)")->required();

  std::string ptd_open_kg, ptd_out;
  std::size_t ptd_n = 0;
  std::uint64_t ptd_seed = 0;
  auto* ptd_cmd =
      app.add_subcommand("prune-train-data", "Emit balanced classifier training pairs");
  ptd_cmd->add_option("--open-kg", ptd_open_kg, "Open KG TSV file")->required();
  ptd_cmd->add_option("--n", ptd_n, "Pairs per class")->required();
  ptd_cmd->add_option("--seed", ptd_seed, "Sampling seed");
  ptd_cmd->add_option("--out", ptd_out, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (build_cmd->parsed()) {
      for (const auto& [key, value] : override_values) {
        build_args.overrides.emplace_back(key, value);
      }
      return run_build(build_args);
    }
    if (export_cmd->parsed()) return run_export(export_in, export_format, export_out);
    if (eval_cmd->parsed()) {
      return run_evaluate(eval_snapshot, eval_judgments, eval_open_kg, eval_judge);
    }
    if (agree_cmd->parsed()) return run_agreement(agree_a, agree_b);
    if (ptd_cmd->parsed()) return run_prune_train_data(ptd_open_kg, ptd_n, ptd_seed, ptd_out);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const UnknownFormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const InvalidEntityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
