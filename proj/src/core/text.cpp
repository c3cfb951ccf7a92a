#include "cds/core/text.hpp"

#include <cctype>

namespace cds {
namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

}  // namespace

std::vector<TextPiece> split_whitespace_with_offsets(std::string_view text) {
  std::vector<TextPiece> pieces;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    if (i == text.size()) break;
    const std::size_t begin = i;
    while (i < text.size() && !is_space(text[i])) ++i;
    pieces.push_back({std::string(text.substr(begin, i - begin)), begin, i});
  }
  return pieces;
}

std::vector<std::string> split_whitespace(std::string_view text) {
  std::vector<std::string> out;
  for (auto& piece : split_whitespace_with_offsets(text)) out.push_back(std::move(piece.text));
  return out;
}

std::string join(std::span<const std::string> pieces, std::string_view separator) {
  std::string out;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (i > 0) out += separator;
    out += pieces[i];
  }
  return out;
}

std::string replace_all(std::string text, std::string_view key, std::string_view value) {
  if (key.empty()) return text;
  std::size_t pos = 0;
  while ((pos = text.find(key, pos)) != std::string::npos) {
    text.replace(pos, key.size(), value);
    pos += value.size();
  }
  return text;
}

std::string normalize_whitespace(std::string_view text) {
  return join(split_whitespace(text));
}

std::string ascii_lower(std::string_view text) {
  std::string out(text);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace cds
