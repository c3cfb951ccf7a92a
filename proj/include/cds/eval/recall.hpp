#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace cds {

struct QARecord {
  std::string question;
  std::vector<std::string> gold_aliases;

  // Throws std::invalid_argument when there is no alias or an alias is blank.
  void validate() const;
};

// True iff some alias occurs in the response, compared case-insensitively
// after collapsing whitespace. Punctuation is kept.
bool answer_recall(std::string_view response, const QARecord& record);

// {"question": str, "answers": [str, ...]} per line; blank lines are ignored.
// Errors are std::invalid_argument prefixed with "line N: ".
std::vector<QARecord> read_qa_jsonl(std::istream& in);
std::vector<QARecord> load_qa_jsonl(const std::filesystem::path& path);

}  // namespace cds
