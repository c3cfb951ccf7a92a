#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cds/classifier/labels.hpp"
#include "cds/models/language_model.hpp"

namespace cds {

// Prompt-in, text-out completion hook used by the dataset pipeline.
class TextGenerator {
 public:
  virtual ~TextGenerator() = default;
  virtual std::string complete(std::string_view prompt) const = 0;
};

// Canned responses keyed by exact prompt text.
class ScriptedGenerator final : public TextGenerator {
 public:
  explicit ScriptedGenerator(std::map<std::string, std::string, std::less<>> responses,
                             std::optional<std::string> fallback = std::nullopt)
      : responses_(std::move(responses)), fallback_(std::move(fallback)) {}

  // Throws std::out_of_range for unknown prompts without a fallback.
  std::string complete(std::string_view prompt) const override;

 private:
  std::map<std::string, std::string, std::less<>> responses_;
  std::optional<std::string> fallback_;
};

// Greedy continuation of the prompt by a language model, detokenized.
class ModelTextGenerator final : public TextGenerator {
 public:
  ModelTextGenerator(const LanguageModel& model, std::size_t max_tokens) : model_(&model), max_tokens_(max_tokens) {}
  std::string complete(std::string_view prompt) const override;

 private:
  const LanguageModel* model_;
  std::size_t max_tokens_;
};

// `{document}`, `{question}` and `{answer}` are substituted.
struct DatasetPrompts {
  std::string question =
      "Write five factual questions about the following article, one question per line.\n\n"
      "Article: {document}\n\nQuestions:";
  std::string answer = "Answer the following question.\n\nQuestion: {question}\nAnswer:";
  std::string extraction =
      "List the critical tokens of the answer below (numbers, dates, names of people and locations, "
      "and short phrases stating facts) as a JSON list of strings.\n\n"
      "Question: {question}\nAnswer: {answer}\n\nJSON:";
  std::size_t questions_per_document = 5;
};

struct DatasetResult {
  std::vector<CriticalTokenInstance> instances;
  std::size_t documents = 0;
  std::size_t skipped = 0;
  std::vector<std::string> warnings;
};

// Question lines from a generator response: numbering and bullets stripped,
// blank lines dropped, at most `limit` kept.
std::vector<std::string> parse_question_list(std::string_view text, std::size_t limit);

// Critical spans from an extractor response. Accepts a JSON array of strings
// or an object with a "critical_tokens" array, optionally surrounded by
// other text. nullopt when no such JSON can be parsed.
std::optional<SpanAnnotation> parse_span_json(std::string_view text);

// documents -> questions -> answers -> spans -> labels. Answers are never
// checked for correctness. Instances whose extraction cannot be parsed are
// skipped and counted. Output order follows input order.
DatasetResult generate_dataset(std::span<const std::string> documents, const TextGenerator& generator,
                               const TextGenerator& extractor, const DatasetPrompts& prompts = {});

}  // namespace cds
