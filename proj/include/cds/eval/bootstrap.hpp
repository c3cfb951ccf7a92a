#pragma once

#include <cstddef>
#include <vector>

#include "cds/core/rng.hpp"

namespace cds {

inline constexpr std::size_t kMinBootstrapIterations = 100;

// Standard deviation of the mean over `iterations` resamples drawn with
// replacement. Throws std::invalid_argument for an empty sample or fewer
// than kMinBootstrapIterations iterations.
double bootstrap_stddev(const std::vector<bool>& per_item, std::size_t iterations, Rng& rng);

}  // namespace cds
