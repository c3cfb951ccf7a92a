#include "cds/classifier/dataset.hpp"

#include <regex>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "cds/core/distribution.hpp"
#include "cds/core/text.hpp"

namespace cds {

using nlohmann::json;

std::string ScriptedGenerator::complete(std::string_view prompt) const {
  if (auto it = responses_.find(prompt); it != responses_.end()) return it->second;
  if (fallback_) return *fallback_;
  throw std::out_of_range("scripted generator: no response for prompt '" + std::string(prompt.substr(0, 80)) + "'");
}

std::string ModelTextGenerator::complete(std::string_view prompt) const {
  const auto& vocab = model_->vocabulary();
  WhitespaceTokenizer tokenizer(vocab);
  TokenSequence context = tokenizer.encode(prompt);
  const std::size_t start = context.size();
  for (std::size_t i = 0; i < max_tokens_; ++i) {
    const TokenId next = argmax(model_->next_distribution(context));
    if (vocab.is_stop(next)) break;
    context.push_back(next);
  }
  return tokenizer.decode(std::span<const TokenId>(context).subspan(start));
}

std::vector<std::string> parse_question_list(std::string_view text, std::size_t limit) {
  static const std::regex marker(R"(^\s*(?:(?:Q|Question)?\s*\d+\s*[.):]|[-*])\s*)");
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (out.size() < limit && std::getline(in, line)) {
    std::string cleaned = normalize_whitespace(std::regex_replace(line, marker, ""));
    if (!cleaned.empty()) out.push_back(std::move(cleaned));
  }
  return out;
}

namespace {

std::optional<SpanAnnotation> spans_from(const json& doc) {
  const json* list = &doc;
  if (doc.is_object()) {
    if (!doc.contains("critical_tokens")) return std::nullopt;
    list = &doc.at("critical_tokens");
  }
  if (!list->is_array()) return std::nullopt;
  SpanAnnotation out;
  for (const auto& item : *list) {
    if (!item.is_string()) return std::nullopt;
    out.spans.push_back(item.get<std::string>());
  }
  return out;
}

}  // namespace

std::optional<SpanAnnotation> parse_span_json(std::string_view text) {
  for (std::size_t start = text.find_first_of("[{"); start != std::string_view::npos;
       start = text.find_first_of("[{", start + 1)) {
    const char closer = text[start] == '[' ? ']' : '}';
    for (std::size_t end = text.rfind(closer); end != std::string_view::npos && end > start;
         end = end == 0 ? std::string_view::npos : text.rfind(closer, end - 1)) {
      const auto doc = json::parse(text.substr(start, end - start + 1), nullptr, false);
      if (doc.is_discarded()) continue;
      if (auto spans = spans_from(doc)) return spans;
      break;
    }
  }
  return std::nullopt;
}

DatasetResult generate_dataset(std::span<const std::string> documents, const TextGenerator& generator,
                               const TextGenerator& extractor, const DatasetPrompts& prompts) {
  DatasetResult result;
  result.documents = documents.size();
  for (std::size_t d = 0; d < documents.size(); ++d) {
    const std::string tag = "document " + std::to_string(d);
    const auto questions = parse_question_list(
        generator.complete(replace_all(prompts.question, "{document}", documents[d])), prompts.questions_per_document);
    if (questions.empty()) result.warnings.push_back(tag + ": generator produced no questions");

    for (const auto& question : questions) {
      const std::string answer = generator.complete(
          replace_all(replace_all(prompts.answer, "{document}", documents[d]), "{question}", question));
      const std::string extraction = extractor.complete(replace_all(
          replace_all(replace_all(prompts.extraction, "{document}", documents[d]), "{question}", question),
          "{answer}", answer));

      const auto spans = parse_span_json(extraction);
      if (!spans) {
        ++result.skipped;
        result.warnings.push_back(tag + ": unparseable extraction for question '" + question + "'; skipped");
        continue;
      }
      std::vector<std::string> span_warnings;
      auto instance = map_spans_to_labels(question, answer, *spans, &span_warnings);
      for (auto& w : span_warnings) result.warnings.push_back(tag + ": " + w);
      if (instance.tokens.empty()) {
        ++result.skipped;
        result.warnings.push_back(tag + ": empty answer for question '" + question + "'; skipped");
        continue;
      }
      result.instances.push_back(std::move(instance));
    }
  }
  return result;
}

}  // namespace cds
