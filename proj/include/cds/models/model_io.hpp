#pragma once

#include <filesystem>
#include <memory>
#include <string_view>

#include <nlohmann/json.hpp>

#include "cds/models/ngram_model.hpp"
#include "cds/models/table_model.hpp"

namespace cds {

inline constexpr std::string_view kModelFormat = "cds-model/1";

// Versioned model documents:
//   {"format": "cds-model/1", "kind": "table" | "ngram", "vocabulary": {...}, ...}
// Distributions are stored sparsely as {token: probability} objects and
// contexts as token strings (null marks begin-of-sequence padding).
nlohmann::json to_json(const TableModel& model);
nlohmann::json to_json(const NGramModel& model);

// Throws std::invalid_argument for malformed or wrong-version documents.
std::unique_ptr<LanguageModel> model_from_json(const nlohmann::json& doc);
std::unique_ptr<LanguageModel> load_model(const std::filesystem::path& path);
void save_json(const std::filesystem::path& path, const nlohmann::json& doc);

nlohmann::json vocabulary_to_json(const Vocabulary& vocab);
Vocabulary vocabulary_from_json(const nlohmann::json& doc);

}  // namespace cds
