#pragma once

#include <vector>

#include "tgen/model.hpp"
#include "tgen/signal.hpp"

namespace tgen {

/// Divisor used in the discontinuity change rates. `printed` keeps the
/// literature form (divide by the time stamp only); `rate` divides by the
/// full window dt*Δt so lc/rc are true slopes.
enum class DiscontinuityDivisor { printed, rate };

/// Peak short-duration pulse: max over window sizes dt = 1..3 of the largest
/// min(left change rate, right change rate). Needs at least two steps.
double discontinuity(const Signal& sig,
                     DiscontinuityDivisor divisor = DiscontinuityDivisor::printed);

/// Total variation of the sample sequence.
double instability(const Signal& sig);

/// Largest absolute sample over steps 1..k (the initial sample is excluded).
double growth_to_infinity(const Signal& sig);

/// Range (max - min) of the samples over steps 1..k.
double minmax(const Signal& sig);

constexpr int kGoalsPerOutput = 4;

/// Four anti-pattern values per output, concatenated in outport order:
/// (discontinuity, instability, growth_to_infinity, minmax).
std::vector<double> goal_vector(const SimulationTrace& trace);

/// Optimization direction per goal: every anti-pattern is maximized, so the
/// whole vector is -1 (the maximize weight).
std::vector<double> goal_directions(int n_outputs);

}  // namespace tgen
