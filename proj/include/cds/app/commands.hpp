#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cds/classifier/classifier.hpp"
#include "cds/decoding/strategy.hpp"

namespace cds {

enum ExitCode : int { kExitOk = 0, kExitRuntime = 1, kExitInput = 2 };

// "all", or a comma-separated list of strategy names.
std::vector<Strategy> parse_strategy_list(std::string_view text);
// "a-b" ranges and comma-separated counts, each in 0..5.
std::vector<std::size_t> parse_shot_list(std::string_view text);

struct GenerateOptions {
  std::filesystem::path config;
  std::string prompt;
  std::optional<Strategy> strategy;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> shots;
  std::optional<std::filesystem::path> trace;
};

// Prints the response on `out`; diagnostics go to `err`.
int cmd_generate(const GenerateOptions& options, std::ostream& out, std::ostream& err);

struct EvalOptions {
  std::filesystem::path config;
  // Empty means the config's strategy.
  std::vector<Strategy> strategies;
  // Empty means the config's shot count; otherwise one run per count.
  std::vector<std::size_t> shots;
  std::optional<std::uint64_t> seed;
  std::optional<std::filesystem::path> out_dir;
  std::optional<std::size_t> parallel;
  bool trace = false;
};

// One run per (strategy, shots) pair. Writes <dataset>_<label>.items.jsonl
// and .summary.json per run and summary.csv with all rows.
int cmd_eval(const EvalOptions& options, std::ostream& out, std::ostream& err);

struct DatasetOptions {
  std::filesystem::path config;
  // JSONL rows {"text": str}.
  std::filesystem::path documents;
  std::filesystem::path out;
};

int cmd_dataset(const DatasetOptions& options, std::ostream& out, std::ostream& err);

struct ClassifierTrainOptions {
  std::filesystem::path train;
  std::filesystem::path out;
  ClassifierMode mode = ClassifierMode::CT;
  std::size_t window = 1;
  std::size_t epochs = 200;
  double learning_rate = 1.0;
  std::uint64_t seed = 0;
};

int cmd_classifier_train(const ClassifierTrainOptions& options, std::ostream& out, std::ostream& err);

struct ClassifierEvalOptions {
  std::filesystem::path classifier;
  std::filesystem::path test;
};

// Prints the All / Switch table.
int cmd_classifier_eval(const ClassifierEvalOptions& options, std::ostream& out, std::ostream& err);

}  // namespace cds
