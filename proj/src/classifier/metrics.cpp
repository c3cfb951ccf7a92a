#include "cds/classifier/metrics.hpp"

#include <cstdio>
#include <stdexcept>

namespace cds {

void ConfusionCounts::add(DecisionLabel gold, DecisionLabel predicted) {
  const bool g = gold == DecisionLabel::Yes;
  const bool p = predicted == DecisionLabel::Yes;
  if (g && p) {
    ++true_yes;
  } else if (!g && p) {
    ++false_yes;
  } else if (!g && !p) {
    ++true_no;
  } else {
    ++false_no;
  }
}

double ConfusionCounts::yes_f1() const {
  if (true_yes == 0) return 0.0;
  const double tp = static_cast<double>(true_yes);
  return 2.0 * tp / (2.0 * tp + static_cast<double>(false_yes) + static_cast<double>(false_no));
}

double ConfusionCounts::accuracy() const {
  if (total() == 0) return 0.0;
  return static_cast<double>(true_yes + true_no) / static_cast<double>(total());
}

ClassifierMetrics score_predictions(std::span<const std::vector<DecisionLabel>> gold,
                                    std::span<const std::vector<DecisionLabel>> predicted) {
  if (gold.size() != predicted.size()) throw std::invalid_argument("score_predictions: instance count mismatch");
  ClassifierMetrics m;
  std::size_t gold_yes = 0;
  for (std::size_t k = 0; k < gold.size(); ++k) {
    if (gold[k].size() != predicted[k].size()) {
      throw std::invalid_argument("score_predictions: label count mismatch in instance " + std::to_string(k));
    }
    for (std::size_t i = 0; i < gold[k].size(); ++i) {
      const DecisionLabel g = gold[k][i];
      m.all.add(g, predicted[k][i]);
      if (g == DecisionLabel::Yes) ++gold_yes;
      const bool switch_position = g == DecisionLabel::Yes && (i == 0 || gold[k][i - 1] == DecisionLabel::No);
      if (switch_position) m.switch_subset.add(g, predicted[k][i]);
    }
  }
  m.all_yes_f1 = m.all.yes_f1();
  m.all_accuracy = m.all.accuracy();
  if (m.switch_subset.total() > 0) {
    m.switch_yes_f1 = m.switch_subset.yes_f1();
    m.switch_accuracy = m.switch_subset.accuracy();
  }
  if (m.all.total() > 0) m.yes_rate = static_cast<double>(gold_yes) / static_cast<double>(m.all.total());
  return m;
}

ClassifierMetrics evaluate_classifier(const CriticalTokenClassifier& classifier,
                                      std::span<const CriticalTokenInstance> test) {
  if (test.empty()) throw std::invalid_argument("evaluate_classifier: empty test set");
  std::vector<std::vector<DecisionLabel>> gold;
  std::vector<std::vector<DecisionLabel>> predicted;
  for (const auto& inst : test) {
    inst.validate();
    gold.push_back(inst.labels);
    auto& pred = predicted.emplace_back();
    std::span<const std::string> tokens(inst.tokens);
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      const std::size_t visible = classifier.mode() == ClassifierMode::CT ? i + 1 : i;
      pred.push_back(classifier.decide(inst.question, tokens.first(visible)));
    }
  }
  return score_predictions(gold, predicted);
}

std::string format_metrics_table(const ClassifierMetrics& m, std::string_view row_label) {
  auto pct = [](std::optional<double> v) {
    if (!v) return std::string("    -");
    char buf[16];
    std::snprintf(buf, sizeof buf, "%6.2f", *v * 100.0);
    return std::string(buf);
  };
  std::string out;
  out += "       |      All       |     Switch\n";
  out += "       | Yes F1   Acc.  | Yes F1   Acc.\n";
  char label[8];
  std::snprintf(label, sizeof label, "%-6.6s", std::string(row_label).c_str());
  out += std::string(label) + " | " + pct(m.all_yes_f1) + " " + pct(m.all_accuracy) + " | " + pct(m.switch_yes_f1) +
         " " + pct(m.switch_accuracy) + "\n";
  return out;
}

}  // namespace cds
