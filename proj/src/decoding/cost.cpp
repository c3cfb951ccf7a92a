#include "cds/decoding/cost.hpp"

#include <cmath>
#include <ostream>

namespace cds {

CostReport cost_report(const GenerationTrace& trace, double context_charge) {
  const auto& c = trace.counters;
  CostReport r;
  r.aligned_cost = static_cast<double>(c.aligned_calls);
  r.classifier_cost = static_cast<double>(c.classifier_calls);
  r.pretrained_cost = static_cast<double>(c.pretrained_calls) +
                      (c.pretrained_context_charges > 0 ? context_charge * c.pretrained_context_charges : 0.0);
  r.total = r.aligned_cost + r.classifier_cost + r.pretrained_cost;
  const std::size_t n = trace.steps.size();
  r.critical_fraction = n == 0 ? 0.0 : static_cast<double>(trace.yes_decisions()) / static_cast<double>(n);
  return r;
}

nlohmann::json to_json(const CostReport& report) {
  return {{"aligned_cost", report.aligned_cost},
          {"classifier_cost", report.classifier_cost},
          {"pretrained_cost", report.pretrained_cost},
          {"total", report.total},
          {"critical_fraction", report.critical_fraction}};
}

void write_trace_jsonl(std::ostream& out, const GenerationResult& result, const Vocabulary& vocab,
                       double context_charge) {
  for (const TraceStep& step : result.trace.steps) {
    nlohmann::json line = {{"position", step.position},
                           {"decision", to_string(step.decision)},
                           {"classified", step.classified},
                           {"source", to_string(step.source)},
                           {"token", vocab.token(step.accepted_token)},
                           {"token_id", step.accepted_token}};
    if (std::isnan(step.aligned_entropy)) {
      line["aligned_entropy"] = nullptr;
    } else {
      line["aligned_entropy"] = step.aligned_entropy;
    }
    out << line.dump() << '\n';
  }
  const auto& c = result.trace.counters;
  nlohmann::json counters = {{"aligned_tokens", c.aligned_tokens},
                             {"pretrained_tokens", c.pretrained_tokens},
                             {"mixture_tokens", c.mixture_tokens},
                             {"classifier_calls", c.classifier_calls},
                             {"pretrained_context_charges", c.pretrained_context_charges},
                             {"aligned_calls", c.aligned_calls},
                             {"pretrained_calls", c.pretrained_calls},
                             {"rng_draws", c.rng_draws}};
  nlohmann::json summary = {{"tokens", result.tokens.size()},
                            {"terminated_by", to_string(result.terminated_by)},
                            {"counters", counters},
                            {"cost", to_json(cost_report(result.trace, context_charge))}};
  out << nlohmann::json{{"summary", summary}}.dump() << '\n';
}

}  // namespace cds
