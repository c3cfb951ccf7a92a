#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "cds/app/engine.hpp"
#include "cds/classifier/dataset.hpp"
#include "cds/decoding/strategy.hpp"
#include "cds/models/remote_model.hpp"

namespace cds {

inline constexpr std::string_view kConfigFormat = "cds-config/1";

// Invalid or unreadable configuration; the CLI maps it to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A model or classifier given either as a local file or a served endpoint.
struct ComponentSource {
  std::optional<std::filesystem::path> path;
  std::optional<Endpoint> endpoint;
  // Remote classifiers only.
  ClassifierMode mode = ClassifierMode::CT;
};

// A text generator for the dataset pipeline: a scripted response file or a
// local model continued greedily.
struct GeneratorSource {
  std::optional<std::filesystem::path> script;
  std::optional<ComponentSource> model;
  std::size_t max_tokens = 64;
};

struct RunConfig {
  StrategyConfig strategy;
  std::optional<ComponentSource> aligned;
  std::optional<ComponentSource> pretrained;
  std::optional<ComponentSource> classifier;
  RemoteOptions remote;
  EngineSettings engine;

  std::optional<std::filesystem::path> dataset;
  std::string dataset_name = "dataset";
  std::filesystem::path output_dir = "out";
  // 0 means one worker per hardware thread.
  std::size_t parallel = 0;
  std::size_t bootstrap_iterations = 1000;
  double context_charge = 0.0;

  std::optional<GeneratorSource> generator;
  std::optional<GeneratorSource> extractor;
  DatasetPrompts dataset_prompts;
};

// Parses a "cds-config/1" document. Relative paths resolve against
// `base_dir`; every referenced file must exist. Unknown keys are rejected.
// Throws ConfigError.
RunConfig parse_run_config(const nlohmann::json& doc, const std::filesystem::path& base_dir);
// JSON with // and /* */ comments allowed.
RunConfig load_run_config(const std::filesystem::path& path);

std::shared_ptr<const LanguageModel> load_language_model(const ComponentSource& source,
                                                         const RemoteOptions& options);
std::shared_ptr<const CriticalTokenClassifier> load_critical_classifier(const ComponentSource& source,
                                                                        const RemoteOptions& options);
std::unique_ptr<TextGenerator> load_generator(const GeneratorSource& source, const RemoteOptions& options);

// Loads only the roles `strategy` needs; the others stay null. Missing roles
// raise ConfigError.
CdsEngine build_engine(const RunConfig& config, Strategy strategy);

}  // namespace cds
