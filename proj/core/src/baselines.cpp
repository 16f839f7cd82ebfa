#include "tgen/baselines.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "tgen/antipatterns.hpp"
#include "tgen/domination.hpp"
#include "tgen/errors.hpp"

namespace tgen {

TestSuite random_suite(const std::vector<InputSpec>& specs, int k, Rng& rng) {
    if (k < 1) throw ConfigError("suite size must be at least 1");
    TestSuite suite;
    suite.reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) suite.push_back(sample_test_case(specs, rng));
    return suite;
}

nlohmann::json RangeAssumption::to_json(const std::vector<InputSpec>& specs) const {
    nlohmann::json j = nlohmann::json::object();
    for (std::size_t i = 0; i < specs.size(); ++i)
        j[specs[i].name] = {ranges[i].first, ranges[i].second};
    return j;
}

RangeAssumption RangeAssumption::full(const std::vector<InputSpec>& specs) {
    RangeAssumption r;
    r.ranges.reserve(specs.size());
    for (const InputSpec& s : specs) r.ranges.emplace_back(s.lo, s.hi);
    return r;
}

TestCase sample_in_ranges(const std::vector<InputSpec>& specs,
                          const RangeAssumption& ranges, Rng& rng) {
    if (ranges.ranges.size() != specs.size())
        throw ContractError("range assumption does not match the input spec list");
    TestCase tc;
    tc.points.reserve(specs.size());
    for (std::size_t i = 0; i < specs.size(); ++i) {
        const auto& [lo, hi] = ranges.ranges[i];
        std::vector<double> vals(static_cast<std::size_t>(specs[i].control_points));
        for (double& v : vals) v = rng.uniform(lo, hi);
        tc.points.push_back(std::move(vals));
    }
    return tc;
}

namespace {

// feature index -> (input index, control point index)
std::pair<int, int> feature_owner(const std::vector<InputSpec>& specs, int feature) {
    int f = feature;
    for (std::size_t i = 0; i < specs.size(); ++i) {
        if (f < specs[i].control_points) return {static_cast<int>(i), f};
        f -= specs[i].control_points;
    }
    throw ContractError("feature index out of range");
}

std::vector<double> raw_features(const TestCase& tc) {
    std::vector<double> f;
    for (const auto& pts : tc.points) f.insert(f.end(), pts.begin(), pts.end());
    return f;
}

}  // namespace

EpicurusResult epicurus_suite(const ModelGraph& model, int k,
                              const EpicurusConfig& config,
                              CaseSimulator& simulator, Rng& rng) {
    if (k < 1) throw ConfigError("suite size must be at least 1");
    if (config.iterations < 0) throw ConfigError("iterations must be >= 0");
    const auto& specs = model.inports;

    EpicurusResult result;
    result.ranges = RangeAssumption::full(specs);
    const long sims_before = simulator.count();

    std::vector<std::vector<double>> features;
    std::vector<GoalVector> goals;

    for (int iter = 0; iter < config.iterations; ++iter) {
        for (int t = 0; t < k; ++t) {
            TestCase tc = sample_in_ranges(specs, result.ranges, rng);
            const SimulationTrace trace = simulator(tc);
            goals.push_back(goal_vector(trace));
            features.push_back(raw_features(tc));
        }

        // scalar target: domination rank score over the whole accumulated
        // population (lower = better), recomputed as the population grows
        const auto ctx = DominationContext::for_population(
            goals, goal_directions(static_cast<int>(model.outports.size())));
        std::vector<double> targets(goals.size());
        for (std::size_t i = 0; i < goals.size(); ++i)
            targets[i] = rank_score(goals, i, ctx);

        if (features.size() < 2 * static_cast<std::size_t>(config.min_leaf)) continue;
        const RegressionTree tree =
            fit_regression_tree(features, targets, config.min_leaf);
        if (tree.root().is_leaf()) {
            ++result.degenerate_iterations;
            continue;
        }

        // Important-Features-Boundary step on the root split only
        const auto& root = tree.root();
        const auto [input, cp] = feature_owner(specs, root.feature);
        const double left_mean =
            tree.nodes[static_cast<std::size_t>(root.left)].mean;
        const double right_mean =
            tree.nodes[static_cast<std::size_t>(root.right)].mean;

        auto& [lo, hi] = result.ranges.ranges[static_cast<std::size_t>(input)];
        double new_lo = lo, new_hi = hi;
        if (left_mean <= right_mean)
            new_hi = std::min(hi, root.threshold);
        else
            new_lo = std::max(lo, root.threshold);
        if (new_lo < new_hi && (new_lo != lo || new_hi != hi)) {
            lo = new_lo;
            hi = new_hi;
            ++result.narrowings;
        }
    }

    result.simulations = simulator.count() - sims_before;
    for (int t = 0; t < k; ++t)
        result.suite.push_back(sample_in_ranges(specs, result.ranges, rng));
    return result;
}

double output_diversity(const std::vector<SimulationTrace>& traces) {
    const std::size_t m = traces.size();
    if (m < 2) return 0.0;
    const std::size_t outputs = traces.front().outputs.size();

    // per-output min/max over every trace, then normalize and concatenate
    std::vector<std::pair<double, double>> bounds(
        outputs, {std::numeric_limits<double>::infinity(),
                  -std::numeric_limits<double>::infinity()});
    for (const SimulationTrace& tr : traces)
        for (std::size_t o = 0; o < outputs; ++o)
            for (double v : tr.outputs[o].values) {
                bounds[o].first = std::min(bounds[o].first, v);
                bounds[o].second = std::max(bounds[o].second, v);
            }

    std::vector<std::vector<double>> flat(m);
    for (std::size_t t = 0; t < m; ++t) {
        for (std::size_t o = 0; o < outputs; ++o) {
            const auto& [lo, hi] = bounds[o];
            const double w = hi - lo;
            for (double v : traces[t].outputs[o].values)
                flat[t].push_back(w > 0.0 ? (v - lo) / w : 0.0);
        }
    }

    double total = 0.0;
    std::size_t pairs = 0;
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a + 1; b < m; ++b) {
            double s = 0.0;
            for (std::size_t i = 0; i < flat[a].size(); ++i) {
                const double d = flat[a][i] - flat[b][i];
                s += d * d;
            }
            total += std::sqrt(s);
            ++pairs;
        }
    return total / static_cast<double>(pairs);
}

namespace {

int pieces_for(const InputSpec& spec, int P) {
    if (spec.interpolation == Interpolation::constant) return 1;
    return std::min(P, spec.control_points);
}

// one random value per piece, shared across the piece's control points
TestCase sample_with_pieces(const std::vector<InputSpec>& specs, int P, Rng& rng) {
    TestCase tc;
    tc.points.reserve(specs.size());
    for (const InputSpec& spec : specs) {
        const int c = spec.control_points;
        const int pieces = pieces_for(spec, P);
        std::vector<double> vals(static_cast<std::size_t>(c));
        std::vector<double> piece_vals(static_cast<std::size_t>(pieces));
        for (double& v : piece_vals) v = rng.uniform(spec.lo, spec.hi);
        for (int cp = 0; cp < c; ++cp)
            vals[static_cast<std::size_t>(cp)] =
                piece_vals[static_cast<std::size_t>((cp * pieces) / c)];
        tc.points.push_back(std::move(vals));
    }
    return tc;
}

// Gaussian nudge per piece, clamped into the input range
TestCase tweak(const TestCase& base, const std::vector<InputSpec>& specs, int P,
               double sigma, Rng& rng) {
    TestCase out = base;
    for (std::size_t u = 0; u < specs.size(); ++u) {
        const InputSpec& spec = specs[u];
        const int c = spec.control_points;
        const int pieces = pieces_for(spec, P);
        const double scale =
            sigma * (spec.width() > 0.0 ? spec.width() : 1.0);
        double noise = 0.0;
        int current_piece = -1;
        for (int cp = 0; cp < c; ++cp) {
            const int piece = (cp * pieces) / c;
            if (piece != current_piece) {
                noise = rng.gaussian() * scale;
                current_piece = piece;
            }
            double v = out.points[u][static_cast<std::size_t>(cp)] + noise;
            out.points[u][static_cast<std::size_t>(cp)] =
                std::clamp(v, spec.lo, spec.hi);
        }
    }
    return out;
}

}  // namespace

ODResult od_suite(const ModelGraph& model, int k, const ODConfig& config,
                  CaseSimulator& simulator, Rng& rng) {
    if (k < 1) throw ConfigError("suite size must be at least 1");
    if (config.max_iterations < 1 || config.timeout_seconds <= 0.0)
        throw ConfigError("the search budget allows no iterations");
    if (model.all_inputs_constant())
        throw CapabilityError("output-diversity search is not applicable: all inputs of '" +
                              model.name + "' are constant");

    const auto& specs = model.inports;
    const auto clock = config.clock
                           ? config.clock
                           : []() {
                                 using namespace std::chrono;
                                 return duration<double>(
                                            steady_clock::now().time_since_epoch())
                                     .count();
                             };
    const double start = clock();
    const long sims_before = simulator.count();

    ODResult result;
    result.pieces = 1;
    result.sigma = config.sigma_start;

    const auto universe = branch_universe(model);
    std::set<std::pair<std::string, std::string>> covered;

    TestSuite recorded;
    int plateau = 0;

    while (result.iterations < config.max_iterations &&
           clock() - start < config.timeout_seconds) {
        TestSuite candidate;
        if (result.iterations == 0) {
            candidate.reserve(static_cast<std::size_t>(k));
            for (int t = 0; t < k; ++t)
                candidate.push_back(sample_with_pieces(specs, result.pieces, rng));
        } else {
            candidate.reserve(recorded.size());
            for (const TestCase& tc : recorded)
                candidate.push_back(tweak(tc, specs, result.pieces, result.sigma, rng));
        }

        std::vector<SimulationTrace> traces;
        traces.reserve(candidate.size());
        for (const TestCase& tc : candidate) traces.push_back(simulator(tc));

        const std::size_t before = covered.size();
        for (const SimulationTrace& tr : traces)
            covered.insert(tr.coverage.begin(), tr.coverage.end());
        const bool grew = covered.size() > before;

        const double objective = output_diversity(traces);
        if (recorded.empty() || objective > result.best_objective) {
            result.best_objective = std::max(result.best_objective, objective);
            recorded = candidate;
        }

        const double ratio =
            universe.empty()
                ? 1.0
                : static_cast<double>(covered.size()) / static_cast<double>(universe.size());

        if (grew) {
            plateau = 0;
            result.sigma = std::max(config.sigma_floor, result.sigma - config.sigma_step);
        } else {
            ++plateau;
            if (plateau >= config.plateau_window && ratio < 1.0) {
                ++result.pieces;
                plateau = 0;
            }
        }

        ++result.iterations;
        result.coverage_ratio = ratio;
    }

    result.suite = std::move(recorded);
    result.simulations = simulator.count() - sims_before;
    return result;
}

}  // namespace tgen
