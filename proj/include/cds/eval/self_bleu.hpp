#pragma once

#include <span>
#include <string>
#include <vector>

namespace cds {

inline constexpr double kBleuPrecisionFloor = 1e-9;

// BLEU-n of a tokenized hypothesis against references: uniform weights over
// 1..n-gram clipped precisions, zero precisions replaced by the floor, and a
// brevity penalty against the closest reference length (shorter on ties).
double sentence_bleu(std::span<const std::string> hypothesis, std::span<const std::vector<std::string>> references,
                     std::size_t n);

// Mean BLEU-n of every sample against all the others, on whitespace tokens.
// Throws std::invalid_argument for fewer than two samples or n == 0.
double self_bleu(std::span<const std::string> samples, std::size_t n);

}  // namespace cds
