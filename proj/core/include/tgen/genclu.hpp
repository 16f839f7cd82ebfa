#pragma once

#include <memory>
#include <vector>

#include "tgen/model.hpp"
#include "tgen/rng.hpp"
#include "tgen/signal.hpp"

#include "json.hpp"

namespace tgen {

/// Flattened control-point values of a test case, each dimension min-max
/// normalized by its input's range so no single wide-range input dominates
/// the Euclidean distances.
std::vector<double> feature_vector(const TestCase& tc,
                                   const std::vector<InputSpec>& specs);

struct SplitResult {
    std::vector<int> east_items;
    std::vector<int> west_items;
    int east_pole = -1;  // original sample index
    int west_pole = -1;
    bool degenerate = false;  // all points coincident, no split made
    long distance_evals = 0;
};

/// One FASTMAP bisection over the member subset: pick a random pivot, walk
/// to the farthest point (east), walk again (west), project everyone onto
/// the east-west axis with the cosine rule and cut the sorted projections at
/// floor(m/2). Costs at most 4m distance evaluations, never m^2.
SplitResult fastmap_split(const std::vector<std::vector<double>>& points,
                          const std::vector<int>& members, Rng& rng);

struct ClusterNode {
    std::vector<int> members;  // original sample indices
    int east_pole = -1;        // set on split nodes only
    int west_pole = -1;
    std::unique_ptr<ClusterNode> left;   // east half
    std::unique_ptr<ClusterNode> right;  // west half

    bool is_leaf() const { return left == nullptr; }
};

struct ClusterStats {
    int splits = 0;
    int degenerate_stops = 0;
    long distance_evals = 0;
    // per split: (member count, distance evaluations)
    std::vector<std::pair<int, long>> per_split;
};

/// Recursive bisection while a node holds more than `enough` members.
/// A degenerate split (all members coincident) ends that branch early.
std::unique_ptr<ClusterNode> cluster(const std::vector<std::vector<double>>& points,
                                     int enough, Rng& rng,
                                     ClusterStats* stats = nullptr);

/// Leaves in left-to-right (east-first) order.
std::vector<const ClusterNode*> collect_leaves(const ClusterNode& root);

struct GenCluConfig {
    int initial_samples = 256;
    int enough = 4;  // target suite size; recursion stops at this many members
    std::uint64_t seed = 0;
};

struct GenCluReport {
    long simulations = 0;
    int leaves = 0;
    std::uint64_t seed = 0;
    int redraws = 0;
    int excluded_leaves = 0;

    nlohmann::json to_json() const;
};

struct GenCluResult {
    TestSuite suite;
    GenCluReport report;
};

/// The whole pipeline: sample initial_samples random test cases, cluster
/// them without any simulation, simulate one random representative per leaf,
/// rank the representatives by continuous domination over their anti-pattern
/// goals, and return every member of the winning representative's leaf.
GenCluResult generate_suite(const ModelGraph& model, const GenCluConfig& config,
                            CaseSimulator& simulator, Rng& rng);

}  // namespace tgen
