#pragma once

#include <iosfwd>

#include <nlohmann/json.hpp>

#include "cds/decoding/decoding.hpp"

namespace cds {

// Inference cost in units of one token forward pass (k = 1):
//   aligned    = aligned forward calls
//   classifier = classifier calls
//   pretrained = pretrained forward calls + context_charge
// With n tokens and a fraction r routed to the pretrained model this is
// n + n + (r n + t).
struct CostReport {
  double aligned_cost = 0.0;
  double classifier_cost = 0.0;
  double pretrained_cost = 0.0;
  double total = 0.0;
  double critical_fraction = 0.0;
};

CostReport cost_report(const GenerationTrace& trace, double context_charge);

nlohmann::json to_json(const CostReport& report);

// One JSON object per step, then {"summary": {...}} with counters, cost and
// termination.
void write_trace_jsonl(std::ostream& out, const GenerationResult& result, const Vocabulary& vocab,
                       double context_charge);

}  // namespace cds
