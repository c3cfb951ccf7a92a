#include "cds/app/prompts.hpp"

namespace cds {

std::optional<std::string> system_prompt_preset(std::string_view name) {
  if (name == "llama2-qa") return std::string(kLlama2QaSystemPrompt);
  if (name == "llama2-factscore") return std::string(kLlama2FactScoreSystemPrompt);
  if (name == "mistral") return std::string();
  return std::nullopt;
}

std::vector<std::string> system_prompt_preset_names() { return {"llama2-qa", "llama2-factscore", "mistral"}; }

}  // namespace cds
