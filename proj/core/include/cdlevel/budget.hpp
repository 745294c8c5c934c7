#pragma once

#include <cstdint>
#include <random>

namespace cdlevel {

/// Bounds for witness and counterexample searches. Heights bound rational
/// numerators/denominators, degrees bound tower-variable exponents. Results
/// are deterministic given the same budget and seed.
struct SearchBudget {
  std::int64_t height = 10;
  int degree = 2;
  std::int64_t trials = 10000;
  std::uint64_t seed = 0;
};

using Rng = std::mt19937_64;

}  // namespace cdlevel
