#include "tgen/signal.hpp"

#include <cmath>
#include <iostream>

#include "tgen/errors.hpp"

namespace tgen {

void InputSpec::validate() const {
    if (name.empty()) throw ConfigError("input spec has an empty name");
    if (kind == InputKind::boolean) {
        if (lo != 0.0 || hi != 1.0)
            throw ConfigError("boolean input '" + name + "' must use range [0,1]");
    } else if (lo > hi) {
        // zero-width ranges are legal (constant-valued numeric inputs)
        throw ConfigError("input '" + name + "' has inverted range");
    }
    if (control_points < 1)
        throw ConfigError("input '" + name + "' needs at least one control point");
    if (interpolation == Interpolation::constant && control_points != 1)
        throw ConfigError("constant input '" + name + "' must have exactly one control point");
}

int step_count(double duration, double dt) {
    if (dt <= 0.0) throw ConfigError("dt must be positive");
    if (duration <= 0.0) throw ConfigError("duration must be positive");
    const double ratio = duration / dt;
    const double rounded = std::round(ratio);
    if (std::abs(ratio - rounded) > 1e-9)
        throw ConfigError("duration/dt is not an integral step count");
    return static_cast<int>(rounded);
}

TestCase sample_test_case(const std::vector<InputSpec>& specs, Rng& rng) {
    if (specs.empty()) throw ConfigError("cannot sample a test case without input specs");
    TestCase tc;
    tc.points.reserve(specs.size());
    for (const InputSpec& spec : specs) {
        std::vector<double> vals(static_cast<std::size_t>(spec.control_points));
        for (double& v : vals) v = rng.uniform(spec.lo, spec.hi);
        tc.points.push_back(std::move(vals));
    }
    return tc;
}

Signal render_signal(const std::vector<double>& values, const InputSpec& spec,
                     double duration, double dt) {
    if (static_cast<int>(values.size()) != spec.control_points)
        throw ConfigError("control-point vector for '" + spec.name +
                          "' has wrong length");
    const int k = step_count(duration, dt);
    Signal sig;
    sig.dt = dt;
    sig.duration = duration;
    sig.values.resize(static_cast<std::size_t>(k) + 1);

    if (spec.interpolation == Interpolation::constant || spec.control_points == 1) {
        for (double& v : sig.values) v = values[0];
        return sig;
    }

    // Control point i covers steps j with j*dt >= i*duration/c, i.e.
    // i = floor(j*c/k), capped at the final point.
    const long c = spec.control_points;
    for (long j = 0; j <= k; ++j) {
        long i = (j * c) / k;
        if (i > c - 1) i = c - 1;
        sig.values[static_cast<std::size_t>(j)] = values[static_cast<std::size_t>(i)];
    }
    return sig;
}

double booleanize(double x) {
    if (x < 0.0 || x > 1.0) {
        std::cerr << "warning: booleanize clamping out-of-range value " << x << "\n";
        x = x < 0.0 ? 0.0 : 1.0;
    }
    return x < 0.5 ? 0.0 : 1.0;
}

nlohmann::json test_case_to_json(const TestCase& tc,
                                 const std::vector<InputSpec>& specs) {
    if (tc.points.size() != specs.size())
        throw ContractError("test case input count does not match spec list");
    nlohmann::json inputs = nlohmann::json::array();
    for (std::size_t i = 0; i < specs.size(); ++i) {
        inputs.push_back({{"name", specs[i].name}, {"points", tc.points[i]}});
    }
    return nlohmann::json{{"inputs", inputs}};
}

TestCase test_case_from_json(const nlohmann::json& j,
                             const std::vector<InputSpec>& specs) {
    if (!j.contains("inputs") || !j["inputs"].is_array())
        throw ConfigError("test case document lacks an \"inputs\" array");
    const auto& inputs = j["inputs"];
    if (inputs.size() != specs.size())
        throw ConfigError("test case has " + std::to_string(inputs.size()) +
                          " inputs, model expects " + std::to_string(specs.size()));
    TestCase tc;
    tc.points.resize(specs.size());
    for (std::size_t i = 0; i < specs.size(); ++i) {
        const auto& entry = inputs[i];
        const std::string name = entry.at("name").get<std::string>();
        if (name != specs[i].name)
            throw ConfigError("test case input '" + name + "' at position " +
                              std::to_string(i) + " does not match inport '" +
                              specs[i].name + "'");
        auto pts = entry.at("points").get<std::vector<double>>();
        if (static_cast<int>(pts.size()) != specs[i].control_points)
            throw ConfigError("input '" + name + "' expects " +
                              std::to_string(specs[i].control_points) +
                              " control points, got " + std::to_string(pts.size()));
        for (double v : pts)
            if (v < specs[i].lo || v > specs[i].hi)
                throw ConfigError("control value " + std::to_string(v) +
                                  " outside range of input '" + name + "'");
        tc.points[i] = std::move(pts);
    }
    return tc;
}

nlohmann::json suite_to_json(const TestSuite& suite,
                             const std::vector<InputSpec>& specs) {
    nlohmann::json arr = nlohmann::json::array();
    for (const TestCase& tc : suite) arr.push_back(test_case_to_json(tc, specs));
    return arr;
}

TestSuite suite_from_json(const nlohmann::json& j,
                          const std::vector<InputSpec>& specs) {
    if (!j.is_array()) throw ConfigError("test suite document must be a JSON array");
    TestSuite suite;
    suite.reserve(j.size());
    for (const auto& item : j) suite.push_back(test_case_from_json(item, specs));
    return suite;
}

}  // namespace tgen
