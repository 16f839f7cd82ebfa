#include "tgen/antipatterns.hpp"

#include <algorithm>
#include <cmath>

#include "tgen/errors.hpp"

namespace tgen {

double discontinuity(const Signal& sig, DiscontinuityDivisor divisor) {
    const int k = sig.steps();
    if (k < 2) throw ContractError("discontinuity needs at least two steps");
    const auto& v = sig.values;
    double best = 0.0;
    for (int dt = 1; dt <= 3; ++dt) {
        if (k - dt < dt) continue;  // window wider than the signal
        const double div =
            divisor == DiscontinuityDivisor::printed ? sig.dt : dt * sig.dt;
        for (int j = dt; j <= k - dt; ++j) {
            const double lc = std::abs(v[static_cast<std::size_t>(j)] -
                                       v[static_cast<std::size_t>(j - dt)]) / div;
            const double rc = std::abs(v[static_cast<std::size_t>(j + dt)] -
                                       v[static_cast<std::size_t>(j)]) / div;
            best = std::max(best, std::min(lc, rc));
        }
    }
    return best;
}

double instability(const Signal& sig) {
    const int k = sig.steps();
    if (k < 1) throw ContractError("instability needs at least one step");
    double total = 0.0;
    for (int j = 1; j <= k; ++j)
        total += std::abs(sig.values[static_cast<std::size_t>(j)] -
                          sig.values[static_cast<std::size_t>(j - 1)]);
    return total;
}

double growth_to_infinity(const Signal& sig) {
    const int k = sig.steps();
    if (k < 1) throw ContractError("growth_to_infinity needs at least one step");
    double best = 0.0;
    for (int j = 1; j <= k; ++j)
        best = std::max(best, std::abs(sig.values[static_cast<std::size_t>(j)]));
    return best;
}

double minmax(const Signal& sig) {
    const int k = sig.steps();
    if (k < 1) throw ContractError("minmax needs at least one step");
    double lo = sig.values[1], hi = sig.values[1];
    for (int j = 2; j <= k; ++j) {
        lo = std::min(lo, sig.values[static_cast<std::size_t>(j)]);
        hi = std::max(hi, sig.values[static_cast<std::size_t>(j)]);
    }
    return std::abs(hi - lo);
}

std::vector<double> goal_vector(const SimulationTrace& trace) {
    std::vector<double> goals;
    goals.reserve(trace.outputs.size() * kGoalsPerOutput);
    for (const Signal& sig : trace.outputs) {
        goals.push_back(discontinuity(sig));
        goals.push_back(instability(sig));
        goals.push_back(growth_to_infinity(sig));
        goals.push_back(minmax(sig));
    }
    return goals;
}

std::vector<double> goal_directions(int n_outputs) {
    return std::vector<double>(static_cast<std::size_t>(n_outputs) * kGoalsPerOutput,
                               -1.0);
}

}  // namespace tgen
