#pragma once

#include <functional>
#include <vector>

#include "tgen/model.hpp"
#include "tgen/regression_tree.hpp"
#include "tgen/rng.hpp"
#include "tgen/signal.hpp"

#include "json.hpp"

namespace tgen {

/// k independent uniform draws inside the input ranges.
TestSuite random_suite(const std::vector<InputSpec>& specs, int k, Rng& rng);

/// Per-input narrowed interval, always a sub-interval of the original range.
struct RangeAssumption {
    std::vector<std::pair<double, double>> ranges;

    nlohmann::json to_json(const std::vector<InputSpec>& specs) const;
    static RangeAssumption full(const std::vector<InputSpec>& specs);
};

/// Draws a test case uniformly inside narrowed per-input ranges.
TestCase sample_in_ranges(const std::vector<InputSpec>& specs,
                          const RangeAssumption& ranges, Rng& rng);

struct EpicurusConfig {
    int iterations = 30;
    int min_leaf = 2;
};

struct EpicurusResult {
    TestSuite suite;  // k fresh draws inside the final ranges
    RangeAssumption ranges;
    long simulations = 0;
    int narrowings = 0;            // iterations that tightened a range
    int degenerate_iterations = 0; // single-leaf tree, ranges left alone
};

/// Guided range narrowing: per iteration, simulate k tests drawn from the
/// current ranges, score every accumulated test by its domination rank score
/// over the anti-pattern goals, fit a regression tree on the control-point
/// features, and clamp the root split's input to the child interval with the
/// better (lower) mean score.
EpicurusResult epicurus_suite(const ModelGraph& model, int k,
                              const EpicurusConfig& config,
                              CaseSimulator& simulator, Rng& rng);

struct ODConfig {
    double timeout_seconds = 600.0;
    int max_iterations = 1 << 30;  // secondary cap; keeps desk runs reproducible
    double sigma_start = 0.5;
    double sigma_floor = 0.01;
    double sigma_step = (0.5 - 0.01) / 30.0;  // linear decay per coverage gain
    int plateau_window = 3;
    std::function<double()> clock;  // seconds; defaults to a steady wall clock
};

struct ODResult {
    TestSuite suite;  // best suite seen
    double best_objective = 0.0;
    long simulations = 0;
    int iterations = 0;
    int pieces = 1;          // final signal-piece count P
    double sigma = 0.5;      // final tweak magnitude
    double coverage_ratio = 0.0;
};

/// Output-diversity search: tweak the recorded suite with Gaussian noise of
/// magnitude sigma, keep whichever suite maximizes output diversity, widen
/// the signal-piece count P when coverage plateaus below 100%, and decay
/// sigma toward the exploitation floor whenever coverage grows. Rejects
/// models whose inputs are all constant.
ODResult od_suite(const ModelGraph& model, int k, const ODConfig& config,
                  CaseSimulator& simulator, Rng& rng);

/// Mean pairwise Euclidean distance between the tests' concatenated,
/// per-output min-max-normalized output signals. Zero for fewer than two.
double output_diversity(const std::vector<SimulationTrace>& traces);

}  // namespace tgen
