#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cds {

// A whitespace-delimited piece of a text with its character range [begin, end).
struct TextPiece {
  std::string text;
  std::size_t begin = 0;
  std::size_t end = 0;
};

std::vector<TextPiece> split_whitespace_with_offsets(std::string_view text);
std::vector<std::string> split_whitespace(std::string_view text);
std::string join(std::span<const std::string> pieces, std::string_view separator = " ");

// Replaces every occurrence of `key` in `text`.
std::string replace_all(std::string text, std::string_view key, std::string_view value);

// Collapses whitespace runs to one space and trims both ends.
std::string normalize_whitespace(std::string_view text);
std::string ascii_lower(std::string_view text);

}  // namespace cds
