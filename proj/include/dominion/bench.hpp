#pragma once

#include <cstdint>
#include <span>

#include "dominion/dataset.hpp"

namespace dominion {

/// The benchmark family: bichromatic, integer coordinates below 10^6,
/// probabilities p/q with q <= 64. General position is for the basis-free
/// solver.
Dataset bench_instance(std::size_t n, std::uint64_t seed, bool general_position = false);

/// Least-squares slope of log t against log n.
double loglog_slope(std::span<const double> n, std::span<const double> t);

}  // namespace dominion
