#pragma once

// Single-threaded reference kernels. They follow the textbook formulation
// (row scatter, one pass per box) and are kept to cross-check the OpenMP
// kernels in tests and to give the benchmark a baseline.

#include <span>

#include "maxent/grid_measure.hpp"
#include "maxent/ulam.hpp"

namespace maxent::serial {

UlamOperator build_ulam(const MapSpec& map, int resolution, int samples, std::uint64_t seed);

/// out = mu T by scattering each row.
void apply(const UlamOperator& op, std::span<const double> mu, std::span<double> out);

PowerResult power_iterate(const UlamOperator& op, const GridMeasure& init, double tol = 1e-10,
                          int max_iters = 10000);

GridMeasure pushforward(const MapSpec& map, const GridMeasure& mu, int samples);

}  // namespace maxent::serial
