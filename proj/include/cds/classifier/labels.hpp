#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "cds/core/trace.hpp"

namespace cds {

// One dataset row: a question, the answer's tokens and one label per token.
struct CriticalTokenInstance {
  std::string question;
  std::vector<std::string> tokens;
  std::vector<DecisionLabel> labels;

  // Throws std::invalid_argument when |labels| != |tokens|.
  void validate() const;
  friend bool operator==(const CriticalTokenInstance&, const CriticalTokenInstance&) = default;
};

struct SpanAnnotation {
  std::vector<std::string> spans;
};

// Labels every whitespace token of `answer` whose character range overlaps
// an occurrence of any span (case-sensitive, all occurrences). Spans that do
// not occur are skipped and reported through `warnings` when given.
CriticalTokenInstance map_spans_to_labels(std::string_view question, std::string_view answer,
                                          const SpanAnnotation& spans,
                                          std::vector<std::string>* warnings = nullptr);

// JSONL rows: {"question": str, "tokens": [str...], "labels": [0|1...]}.
void write_instances_jsonl(std::ostream& out, const std::vector<CriticalTokenInstance>& instances);
// Throws std::invalid_argument naming the 1-based line of a malformed row.
std::vector<CriticalTokenInstance> read_instances_jsonl(std::istream& in);

}  // namespace cds
