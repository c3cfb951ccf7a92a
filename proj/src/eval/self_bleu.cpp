#include "cds/eval/self_bleu.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <stdexcept>

#include "cds/core/text.hpp"

namespace cds {

namespace {

using NGramCounts = std::map<std::vector<std::string>, std::size_t>;

NGramCounts count_ngrams(std::span<const std::string> tokens, std::size_t k) {
  NGramCounts counts;
  if (tokens.size() < k) return counts;
  for (std::size_t i = 0; i + k <= tokens.size(); ++i) {
    ++counts[std::vector<std::string>(tokens.begin() + i, tokens.begin() + i + k)];
  }
  return counts;
}

}  // namespace

double sentence_bleu(std::span<const std::string> hypothesis, std::span<const std::vector<std::string>> references,
                     std::size_t n) {
  if (n == 0) throw std::invalid_argument("sentence_bleu: n must be >= 1");
  if (references.empty()) throw std::invalid_argument("sentence_bleu: no references");

  double log_sum = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    const NGramCounts hyp = count_ngrams(hypothesis, k);
    NGramCounts max_ref;
    for (const auto& ref : references) {
      for (const auto& [gram, c] : count_ngrams(ref, k)) {
        auto& slot = max_ref[gram];
        slot = std::max(slot, c);
      }
    }
    std::size_t matched = 0;
    std::size_t total = 0;
    for (const auto& [gram, c] : hyp) {
      total += c;
      auto it = max_ref.find(gram);
      if (it != max_ref.end()) matched += std::min(c, it->second);
    }
    double p = total == 0 ? 0.0 : static_cast<double>(matched) / static_cast<double>(total);
    if (p == 0.0) p = kBleuPrecisionFloor;
    log_sum += std::log(p);
  }

  const std::size_t c = hypothesis.size();
  std::size_t r = references.front().size();
  for (const auto& ref : references) {
    const auto d = std::abs(static_cast<long>(ref.size()) - static_cast<long>(c));
    const auto best = std::abs(static_cast<long>(r) - static_cast<long>(c));
    if (d < best || (d == best && ref.size() < r)) r = ref.size();
  }
  double bp = 1.0;
  if (c == 0) {
    bp = 0.0;
  } else if (c < r) {
    bp = std::exp(1.0 - static_cast<double>(r) / static_cast<double>(c));
  }
  return bp * std::exp(log_sum / static_cast<double>(n));
}

double self_bleu(std::span<const std::string> samples, std::size_t n) {
  if (samples.size() < 2) throw std::invalid_argument("self_bleu: need at least two samples");
  if (n == 0) throw std::invalid_argument("self_bleu: n must be >= 1");
  std::vector<std::vector<std::string>> tokenized;
  tokenized.reserve(samples.size());
  for (const auto& s : samples) tokenized.push_back(split_whitespace(s));

  double sum = 0.0;
  std::vector<std::vector<std::string>> refs;
  for (std::size_t i = 0; i < tokenized.size(); ++i) {
    refs.clear();
    for (std::size_t j = 0; j < tokenized.size(); ++j) {
      if (j != i) refs.push_back(tokenized[j]);
    }
    sum += sentence_bleu(tokenized[i], refs, n);
  }
  return sum / static_cast<double>(tokenized.size());
}

}  // namespace cds
