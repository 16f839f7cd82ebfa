#include "tgen/genclu.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tgen/antipatterns.hpp"
#include "tgen/domination.hpp"
#include "tgen/errors.hpp"

namespace tgen {

std::vector<double> feature_vector(const TestCase& tc,
                                   const std::vector<InputSpec>& specs) {
    if (tc.points.size() != specs.size())
        throw ContractError("test case does not match the input spec list");
    std::vector<double> f;
    std::size_t dim = 0;
    for (const InputSpec& s : specs) dim += static_cast<std::size_t>(s.control_points);
    f.reserve(dim);
    for (std::size_t i = 0; i < specs.size(); ++i) {
        const double w = specs[i].width();
        for (double v : tc.points[i])
            f.push_back(w > 0.0 ? (v - specs[i].lo) / w : 0.0);
    }
    return f;
}

namespace {

double euclidean(const std::vector<double>& a, const std::vector<double>& b,
                 long& evals) {
    ++evals;
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

}  // namespace

SplitResult fastmap_split(const std::vector<std::vector<double>>& points,
                          const std::vector<int>& members, Rng& rng) {
    const std::size_t m = members.size();
    if (m < 2) throw ContractError("fastmap_split needs at least two members");

    SplitResult res;
    const int pivot = members[rng.index(m)];

    auto farthest_from = [&](int origin) {
        int best = members[0];
        double best_d = -1.0;
        for (int idx : members) {
            const double d = euclidean(points[static_cast<std::size_t>(idx)],
                                       points[static_cast<std::size_t>(origin)],
                                       res.distance_evals);
            if (d > best_d) {
                best_d = d;
                best = idx;
            }
        }
        return std::pair{best, best_d};
    };

    res.east_pole = farthest_from(pivot).first;
    const auto [west, c] = farthest_from(res.east_pole);
    res.west_pole = west;

    if (c == 0.0) {
        res.degenerate = true;
        return res;
    }

    // cosine-rule projection of every member onto the east-west axis
    std::vector<std::pair<double, int>> proj;
    proj.reserve(m);
    for (int idx : members) {
        const double a = euclidean(points[static_cast<std::size_t>(idx)],
                                   points[static_cast<std::size_t>(res.east_pole)],
                                   res.distance_evals);
        const double b = euclidean(points[static_cast<std::size_t>(idx)],
                                   points[static_cast<std::size_t>(res.west_pole)],
                                   res.distance_evals);
        proj.emplace_back((a * a + c * c - b * b) / (2.0 * c), idx);
    }
    std::stable_sort(proj.begin(), proj.end(),
                     [](const auto& x, const auto& y) { return x.first < y.first; });

    const std::size_t cut = m / 2;
    for (std::size_t i = 0; i < m; ++i)
        (i < cut ? res.east_items : res.west_items).push_back(proj[i].second);
    return res;
}

namespace {

std::unique_ptr<ClusterNode> cluster_node(const std::vector<std::vector<double>>& points,
                                          std::vector<int> members, int enough,
                                          Rng& rng, ClusterStats* stats) {
    auto node = std::make_unique<ClusterNode>();
    node->members = std::move(members);
    if (static_cast<int>(node->members.size()) <= enough) return node;

    SplitResult split = fastmap_split(points, node->members, rng);
    if (stats) {
        ++stats->splits;
        stats->distance_evals += split.distance_evals;
        stats->per_split.emplace_back(static_cast<int>(node->members.size()),
                                      split.distance_evals);
    }
    if (split.degenerate) {
        // identical candidates are interchangeable; stop here
        if (stats) ++stats->degenerate_stops;
        return node;
    }
    node->east_pole = split.east_pole;
    node->west_pole = split.west_pole;
    node->left = cluster_node(points, std::move(split.east_items), enough, rng, stats);
    node->right = cluster_node(points, std::move(split.west_items), enough, rng, stats);
    return node;
}

}  // namespace

std::unique_ptr<ClusterNode> cluster(const std::vector<std::vector<double>>& points,
                                     int enough, Rng& rng, ClusterStats* stats) {
    if (points.empty()) throw ContractError("cluster needs a nonempty population");
    if (enough < 1) throw ConfigError("enough must be positive");
    std::vector<int> all(points.size());
    std::iota(all.begin(), all.end(), 0);
    return cluster_node(points, std::move(all), enough, rng, stats);
}

std::vector<const ClusterNode*> collect_leaves(const ClusterNode& root) {
    std::vector<const ClusterNode*> leaves;
    const std::function<void(const ClusterNode&)> walk = [&](const ClusterNode& n) {
        if (n.is_leaf()) {
            leaves.push_back(&n);
            return;
        }
        walk(*n.left);
        walk(*n.right);
    };
    walk(root);
    return leaves;
}

nlohmann::json GenCluReport::to_json() const {
    return {{"simulations", simulations},
            {"leaves", leaves},
            {"seed", seed},
            {"redraws", redraws},
            {"excluded_leaves", excluded_leaves}};
}

GenCluResult generate_suite(const ModelGraph& model, const GenCluConfig& config,
                            CaseSimulator& simulator, Rng& rng) {
    if (config.initial_samples < 1)
        throw ConfigError("initial_samples must be positive");
    if (config.enough < 1 || config.enough > config.initial_samples)
        throw ConfigError("enough must be in [1, initial_samples]");

    const long sims_before = simulator.count();

    TestSuite samples;
    samples.reserve(static_cast<std::size_t>(config.initial_samples));
    std::vector<std::vector<double>> features;
    features.reserve(samples.capacity());
    for (int i = 0; i < config.initial_samples; ++i) {
        samples.push_back(sample_test_case(model.inports, rng));
        features.push_back(feature_vector(samples.back(), model.inports));
    }

    auto tree = cluster(features, config.enough, rng);
    const auto leaves = collect_leaves(*tree);

    GenCluResult result;
    result.report.leaves = static_cast<int>(leaves.size());
    result.report.seed = config.seed;

    // representative choices are drawn up front so concurrent simulation
    // could never change results for a fixed seed
    std::vector<int> rep_choice(leaves.size());
    for (std::size_t i = 0; i < leaves.size(); ++i)
        rep_choice[i] = leaves[i]->members[rng.index(leaves[i]->members.size())];

    std::vector<GoalVector> goals;
    std::vector<std::size_t> goal_leaf;  // leaf index per ranked goal vector
    for (std::size_t i = 0; i < leaves.size(); ++i) {
        int rep = rep_choice[i];
        SimulationTrace trace = simulator(samples[static_cast<std::size_t>(rep)]);
        if (trace.fault) {
            ++result.report.redraws;
            rep = leaves[i]->members[rng.index(leaves[i]->members.size())];
            trace = simulator(samples[static_cast<std::size_t>(rep)]);
            if (trace.fault) {
                ++result.report.excluded_leaves;
                continue;
            }
        }
        goals.push_back(goal_vector(trace));
        goal_leaf.push_back(i);
    }
    result.report.simulations = simulator.count() - sims_before;

    if (goals.empty())
        throw ContractError("every leaf representative hit a simulation fault");

    const auto ctx = DominationContext::for_population(
        goals, goal_directions(static_cast<int>(model.outports.size())));
    const std::vector<int> order = rank(goals, ctx);
    const ClusterNode* winner = leaves[goal_leaf[static_cast<std::size_t>(order[0])]];

    result.suite.reserve(winner->members.size());
    for (int idx : winner->members)
        result.suite.push_back(samples[static_cast<std::size_t>(idx)]);
    return result;
}

}  // namespace tgen
