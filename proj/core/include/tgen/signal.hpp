#pragma once

#include <string>
#include <vector>

#include "tgen/rng.hpp"

#include "json.hpp"

namespace tgen {

/// Uniformly sampled real-valued time series: values[j] is the sample at
/// t = j*dt for j = 0..k, where k = round(duration/dt).
struct Signal {
    std::vector<double> values;
    double dt = 0.0;
    double duration = 0.0;

    /// Number of simulation steps k (one less than the sample count).
    int steps() const { return static_cast<int>(values.size()) - 1; }
};

enum class InputKind { numeric, boolean };
enum class Interpolation { piecewise_constant, constant };

/// Shape of one model input: value range, number of control points, and how
/// control points are turned into a signal.
struct InputSpec {
    std::string name;
    InputKind kind = InputKind::numeric;
    double lo = 0.0;
    double hi = 1.0;
    int control_points = 1;
    Interpolation interpolation = Interpolation::piecewise_constant;

    double width() const { return hi - lo; }

    /// Throws ConfigError on an ill-formed spec (lo >= hi for numeric inputs,
    /// boolean range other than [0,1], constant interpolation with more than
    /// one control point, ...).
    void validate() const;
};

/// One candidate test: a control-point value vector per input, in the
/// model's inport order.
struct TestCase {
    std::vector<std::vector<double>> points;
};

using TestSuite = std::vector<TestCase>;

/// Number of simulation steps k for a horizon. Throws ConfigError unless
/// duration/dt is integral to within 1e-9.
int step_count(double duration, double dt);

/// Draws one control-point value per (input, point) uniformly inside the
/// input's range. Boolean inputs draw uniformly in [0,1].
TestCase sample_test_case(const std::vector<InputSpec>& specs, Rng& rng);

/// Renders a control-point vector into a dense signal. Control point i is
/// placed at t = i*duration/c (equally spaced segment starts, matching the
/// sampled-at-0,2,4,6,8 convention for c = 5 over a 10 s horizon); a sample
/// takes the value of the latest control point at or before it.
Signal render_signal(const std::vector<double>& values, const InputSpec& spec,
                     double duration, double dt);

/// Maps a [0,1] value to a crisp 0 or 1: anything below 0.5 is 0, the rest
/// is 1. Out-of-range inputs are clamped (with a warning on stderr).
double booleanize(double x);

// --- JSON interchange ------------------------------------------------------
// A test case serializes as {"inputs": [{"name": ..., "points": [...]}]}.
// Input names and order come from the spec list, and deserialization
// validates names, point counts, and ranges.

nlohmann::json test_case_to_json(const TestCase& tc,
                                 const std::vector<InputSpec>& specs);
TestCase test_case_from_json(const nlohmann::json& j,
                             const std::vector<InputSpec>& specs);

nlohmann::json suite_to_json(const TestSuite& suite,
                             const std::vector<InputSpec>& specs);
TestSuite suite_from_json(const nlohmann::json& j,
                          const std::vector<InputSpec>& specs);

}  // namespace tgen
