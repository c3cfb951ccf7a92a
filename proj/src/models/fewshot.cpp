#include "cds/models/fewshot.hpp"

#include <stdexcept>

#include "cds/core/text.hpp"

namespace cds {

void FewShotSpec::validate() const {
  if (shots.size() > kMaxShots) {
    throw std::invalid_argument("few-shot spec: " + std::to_string(shots.size()) + " shots given, at most " +
                                std::to_string(kMaxShots) + " allowed");
  }
}

FewShotSpec FewShotSpec::first(std::size_t count) const {
  if (count > shots.size()) {
    throw std::invalid_argument("few-shot spec: requested " + std::to_string(count) + " shots but only " +
                                std::to_string(shots.size()) + " are configured");
  }
  FewShotSpec out{{shots.begin(), shots.begin() + static_cast<std::ptrdiff_t>(count)}, format};
  return out;
}

std::string render_fewshot_text(const FewShotSpec& spec, std::string_view question) {
  spec.validate();
  std::string out;
  for (const auto& shot : spec.shots) {
    out += replace_all(replace_all(spec.format.shot, "{question}", shot.question), "{answer}", shot.answer);
  }
  out += replace_all(spec.format.query, "{question}", question);
  return out;
}

TokenSequence render_fewshot_prefix(const FewShotSpec& spec, std::string_view question,
                                    const WhitespaceTokenizer& tokenizer) {
  return tokenizer.encode(render_fewshot_text(spec, question));
}

}  // namespace cds
