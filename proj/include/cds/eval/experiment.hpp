#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cds/core/trace.hpp"
#include "cds/decoding/cost.hpp"
#include "cds/eval/recall.hpp"

namespace cds {

struct RunOutput {
  std::string response;
  std::optional<GenerationTrace> trace;
};

// Produces the response for record `index`. Called concurrently when the
// experiment runs in parallel.
using StrategyRunner = std::function<RunOutput(const QARecord& record, std::size_t index)>;

struct ExperimentConfig {
  std::string strategy;
  std::string dataset;
  // 0 means one worker per hardware thread.
  std::size_t parallel = 1;
  std::size_t bootstrap_iterations = 1000;
  std::uint64_t bootstrap_seed = 0;
  double context_charge = 0.0;
};

struct ItemResult {
  std::string question;
  std::string response;
  bool correct = false;
  std::optional<std::string> error;
  std::optional<CostReport> cost;
};

struct EvalReport {
  std::string strategy;
  std::string dataset;
  // Mean of per_item; errored items are excluded.
  double accuracy = 0.0;
  std::size_t n = 0;
  std::vector<bool> per_item;
  std::optional<double> bootstrap_stddev;
  std::size_t errors = 0;
  // Over all traced steps of all items.
  double critical_fraction = 0.0;
  // Sum of per-item cost totals.
  double cost_total = 0.0;
  // In dataset order, errored items included.
  std::vector<ItemResult> items;
};

// Throws std::invalid_argument for an empty dataset.
EvalReport run_experiment(std::span<const QARecord> dataset, const StrategyRunner& runner,
                          const ExperimentConfig& config);

void write_items_jsonl(std::ostream& out, const EvalReport& report);
nlohmann::json summary_json(const EvalReport& report);
// Header plus one row per report: strategy,dataset,accuracy,stddev,critical_fraction,cost_total
void write_summary_csv(std::ostream& out, std::span<const EvalReport> reports);

}  // namespace cds
