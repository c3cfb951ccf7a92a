#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "cds/models/language_model.hpp"

namespace cds {

struct FewShotExample {
  std::string question;
  std::string answer;
};

// `{question}` and `{answer}` are substituted. Each shot renders one block,
// the live question renders the query block last.
struct FewShotTemplate {
  std::string shot = "Question: {question}\nAnswer: {answer}\n\n";
  std::string query = "Question: {question}\nAnswer:";
};

inline constexpr std::size_t kMaxShots = 5;

struct FewShotSpec {
  std::vector<FewShotExample> shots;
  FewShotTemplate format;

  // Throws std::invalid_argument when more than kMaxShots shots are given.
  void validate() const;
  // The spec restricted to its first `count` shots.
  FewShotSpec first(std::size_t count) const;
};

std::string render_fewshot_text(const FewShotSpec& spec, std::string_view question);
TokenSequence render_fewshot_prefix(const FewShotSpec& spec, std::string_view question,
                                    const WhitespaceTokenizer& tokenizer);

}  // namespace cds
