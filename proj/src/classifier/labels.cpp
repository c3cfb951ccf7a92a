#include "cds/classifier/labels.hpp"

#include <istream>
#include <ostream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "cds/core/text.hpp"

namespace cds {

using nlohmann::json;

void CriticalTokenInstance::validate() const {
  if (labels.size() != tokens.size()) {
    throw std::invalid_argument("instance has " + std::to_string(tokens.size()) + " tokens but " +
                                std::to_string(labels.size()) + " labels");
  }
}

CriticalTokenInstance map_spans_to_labels(std::string_view question, std::string_view answer,
                                          const SpanAnnotation& spans, std::vector<std::string>* warnings) {
  const auto pieces = split_whitespace_with_offsets(answer);
  CriticalTokenInstance out;
  out.question = std::string(question);
  out.labels.assign(pieces.size(), DecisionLabel::No);
  for (const auto& p : pieces) out.tokens.push_back(p.text);

  for (const auto& span : spans.spans) {
    if (span.empty()) {
      if (warnings) warnings->push_back("empty span skipped");
      continue;
    }
    bool found = false;
    for (std::size_t at = answer.find(span); at != std::string_view::npos; at = answer.find(span, at + 1)) {
      found = true;
      const std::size_t end = at + span.size();
      for (std::size_t t = 0; t < pieces.size(); ++t) {
        if (pieces[t].begin < end && at < pieces[t].end) out.labels[t] = DecisionLabel::Yes;
      }
    }
    if (!found && warnings) warnings->push_back("span '" + span + "' not found in answer; skipped");
  }
  return out;
}

void write_instances_jsonl(std::ostream& out, const std::vector<CriticalTokenInstance>& instances) {
  for (const auto& inst : instances) {
    json labels = json::array();
    for (auto l : inst.labels) labels.push_back(l == DecisionLabel::Yes ? 1 : 0);
    out << json{{"question", inst.question}, {"tokens", inst.tokens}, {"labels", std::move(labels)}}.dump() << '\n';
  }
}

std::vector<CriticalTokenInstance> read_instances_jsonl(std::istream& in) {
  std::vector<CriticalTokenInstance> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (normalize_whitespace(line).empty()) continue;
    try {
      const auto doc = json::parse(line);
      CriticalTokenInstance inst;
      inst.question = doc.at("question").get<std::string>();
      inst.tokens = doc.at("tokens").get<std::vector<std::string>>();
      for (const auto& l : doc.at("labels")) {
        const int v = l.get<int>();
        if (v != 0 && v != 1) throw std::invalid_argument("labels must be 0 or 1");
        inst.labels.push_back(v == 1 ? DecisionLabel::Yes : DecisionLabel::No);
      }
      inst.validate();
      out.push_back(std::move(inst));
    } catch (const std::exception& e) {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace cds
