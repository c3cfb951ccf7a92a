#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>

#include "cds/classifier/classifier.hpp"
#include "cds/classifier/labels.hpp"

namespace cds {

struct ConfusionCounts {
  std::size_t true_yes = 0;
  std::size_t false_yes = 0;
  std::size_t true_no = 0;
  std::size_t false_no = 0;

  std::size_t total() const { return true_yes + false_yes + true_no + false_no; }
  void add(DecisionLabel gold, DecisionLabel predicted);
  // Yes-class F1; 0 when there is no true positive.
  double yes_f1() const;
  double accuracy() const;
};

// All metrics are fractions in [0, 1]. Switch metrics cover positions whose
// gold label is Yes and whose previous gold label is No (position 0 counts
// as preceded by No); they are absent when there is no such position.
struct ClassifierMetrics {
  ConfusionCounts all;
  ConfusionCounts switch_subset;
  double all_yes_f1 = 0.0;
  double all_accuracy = 0.0;
  std::optional<double> switch_yes_f1;
  std::optional<double> switch_accuracy;
  double yes_rate = 0.0;
};

// Metrics from gold and predicted label sequences (one pair per instance).
ClassifierMetrics score_predictions(std::span<const std::vector<DecisionLabel>> gold,
                                    std::span<const std::vector<DecisionLabel>> predicted);

// Queries the classifier at every position of every instance under its mode's
// protocol and scores the predictions. Throws on an empty test set.
ClassifierMetrics evaluate_classifier(const CriticalTokenClassifier& classifier,
                                      std::span<const CriticalTokenInstance> test);

// Percentages in the All / Switch layout.
std::string format_metrics_table(const ClassifierMetrics& metrics, std::string_view row_label);

}  // namespace cds
