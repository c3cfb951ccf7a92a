#include "cds/eval/bootstrap.hpp"

#include <cmath>
#include <stdexcept>

namespace cds {

double bootstrap_stddev(const std::vector<bool>& per_item, std::size_t iterations, Rng& rng) {
  if (per_item.empty()) throw std::invalid_argument("bootstrap_stddev: empty sample");
  if (iterations < kMinBootstrapIterations) {
    throw std::invalid_argument("bootstrap_stddev: need at least 100 iterations");
  }
  const std::size_t n = per_item.size();
  std::vector<double> means(iterations);
  for (auto& m : means) {
    std::size_t hits = 0;
    for (std::size_t i = 0; i < n; ++i) hits += per_item[rng.index(n)] ? 1 : 0;
    m = static_cast<double>(hits) / static_cast<double>(n);
  }
  double mean = 0.0;
  for (double m : means) mean += m;
  mean /= static_cast<double>(iterations);
  double ss = 0.0;
  for (double m : means) ss += (m - mean) * (m - mean);
  return std::sqrt(ss / static_cast<double>(iterations - 1));
}

}  // namespace cds
