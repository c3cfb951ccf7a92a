#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cds {

inline constexpr std::string_view kLlama2QaSystemPrompt =
    "You are a helpful, respectful and honest assistant. Always answer as helpfully as possible.";

inline constexpr std::string_view kLlama2FactScoreSystemPrompt =
    "You are a helpful, respectful and honest assistant. Always answer as helpfully as possible, while being "
    "safe. Your answers should not include any harmful, unethical, racist, sexist, toxic, dangerous, or illegal "
    "content. Please ensure that your responses are socially unbiased and positive in nature.";

// "llama2-qa", "llama2-factscore" and "mistral" (empty prompt).
std::optional<std::string> system_prompt_preset(std::string_view name);
std::vector<std::string> system_prompt_preset_names();

}  // namespace cds
