#pragma once

#include <span>
#include <vector>

namespace tgen {

using GoalVector = std::vector<double>;

/// Goal directions plus the per-goal normalization bounds applied before the
/// continuous-domination exponential. Weights follow the minimize/maximize
/// convention: +1 minimizes, -1 maximizes.
struct DominationContext {
    std::vector<double> weights;
    std::vector<std::pair<double, double>> norm;  // per-goal (lo, hi)

    int n() const { return static_cast<int>(weights.size()); }

    /// Maps goal i to [0,1]; a degenerate goal (lo == hi) maps to 0.
    double normalize(int i, double v) const;

    /// Context whose normalization bounds are the per-goal min/max over a
    /// candidate population.
    static DominationContext for_population(std::span<const GoalVector> candidates,
                                            std::vector<double> weights);
};

/// Zitzler's continuous-domination loss: sum_i exp(w_i * (a_i - b_i) / n)
/// over normalized goals. Lower is better for the first argument.
double zitzler_loss(const GoalVector& a, const GoalVector& b,
                    const DominationContext& ctx);

/// a beats b when moving a->b loses less than moving b->a.
bool better(const GoalVector& a, const GoalVector& b, const DominationContext& ctx);

/// Classic Pareto dominance under the context's directions (raw goals;
/// min-max normalization is monotone so the answer would be the same).
bool binary_dominates(const GoalVector& a, const GoalVector& b,
                      const DominationContext& ctx);

enum class RankMethod {
    mean_loss,            // ascending mean pairwise loss
    pairwise_tournament,  // descending count of pairwise wins
};

/// Orders candidate indices best-first. Ties keep input order.
std::vector<int> rank(std::span<const GoalVector> candidates,
                      const DominationContext& ctx,
                      RankMethod method = RankMethod::mean_loss);

/// The mean_loss ranking score of candidate `index` within `candidates`:
/// mean over the others of the Zitzler loss against them (lower = better).
double rank_score(std::span<const GoalVector> candidates, std::size_t index,
                  const DominationContext& ctx);

}  // namespace tgen
