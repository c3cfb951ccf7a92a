#pragma once

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cds/core/trace.hpp"

namespace cds {

// CT: judge the last (tentatively appended) token of the partial response.
// NT: predict whether the token that comes next will be critical.
enum class ClassifierMode { CT, NT };

std::string_view to_string(ClassifierMode mode);
ClassifierMode parse_classifier_mode(std::string_view text);
DecisionLabel parse_decision_label(std::string_view text);

// Routes a position to the knowledge model (Yes) or leaves it to the leading
// model (No). Implementations must be deterministic and const-thread-safe.
class CriticalTokenClassifier {
 public:
  virtual ~CriticalTokenClassifier() = default;

  virtual DecisionLabel decide(std::string_view question, std::span<const std::string> partial_response) const = 0;
  virtual ClassifierMode mode() const = 0;
};

class ConstantClassifier final : public CriticalTokenClassifier {
 public:
  explicit ConstantClassifier(DecisionLabel label, ClassifierMode mode = ClassifierMode::CT)
      : label_(label), mode_(mode) {}

  DecisionLabel decide(std::string_view, std::span<const std::string>) const override { return label_; }
  ClassifierMode mode() const override { return mode_; }

 private:
  DecisionLabel label_;
  ClassifierMode mode_;
};

// Wraps a callable; useful for oracle routers in experiments.
class FunctionClassifier final : public CriticalTokenClassifier {
 public:
  using Fn = std::function<DecisionLabel(std::string_view, std::span<const std::string>)>;

  explicit FunctionClassifier(Fn fn, ClassifierMode mode = ClassifierMode::CT) : fn_(std::move(fn)), mode_(mode) {}

  DecisionLabel decide(std::string_view question, std::span<const std::string> partial) const override {
    return fn_(question, partial);
  }
  ClassifierMode mode() const override { return mode_; }

 private:
  Fn fn_;
  ClassifierMode mode_;
};

// "Question: {question} Answer: {response}" with the response tokens joined
// by single spaces.
std::string build_classifier_prefix(std::string_view question, std::span<const std::string> partial_response);

}  // namespace cds
