#include "cds/eval/recall.hpp"

#include <fstream>
#include <istream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "cds/core/text.hpp"

namespace cds {

void QARecord::validate() const {
  if (gold_aliases.empty()) throw std::invalid_argument("QA record has no gold answers");
  for (const auto& alias : gold_aliases) {
    if (normalize_whitespace(alias).empty()) throw std::invalid_argument("QA record has a blank gold answer");
  }
}

bool answer_recall(std::string_view response, const QARecord& record) {
  const std::string haystack = ascii_lower(normalize_whitespace(response));
  for (const auto& alias : record.gold_aliases) {
    const std::string needle = ascii_lower(normalize_whitespace(alias));
    if (!needle.empty() && haystack.find(needle) != std::string::npos) return true;
  }
  return false;
}

std::vector<QARecord> read_qa_jsonl(std::istream& in) {
  std::vector<QARecord> records;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (normalize_whitespace(line).empty()) continue;
    try {
      const auto doc = nlohmann::json::parse(line);
      QARecord record;
      record.question = doc.at("question").get<std::string>();
      record.gold_aliases = doc.at("answers").get<std::vector<std::string>>();
      record.validate();
      records.push_back(std::move(record));
    } catch (const std::exception& e) {
      throw std::invalid_argument("line " + std::to_string(number) + ": " + e.what());
    }
  }
  return records;
}

std::vector<QARecord> load_qa_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open dataset " + path.string());
  return read_qa_jsonl(in);
}

}  // namespace cds
