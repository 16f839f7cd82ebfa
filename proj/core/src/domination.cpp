#include "tgen/domination.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tgen/errors.hpp"

namespace tgen {

namespace {

void check_dims(const GoalVector& a, const GoalVector& b, const DominationContext& ctx) {
    if (a.size() != b.size() || static_cast<int>(a.size()) != ctx.n() ||
        ctx.norm.size() != ctx.weights.size())
        throw ContractError("goal vectors and domination context disagree on dimension");
}

}  // namespace

double DominationContext::normalize(int i, double v) const {
    const auto& [lo, hi] = norm[static_cast<std::size_t>(i)];
    if (hi <= lo) return 0.0;
    return (v - lo) / (hi - lo);
}

DominationContext DominationContext::for_population(
    std::span<const GoalVector> candidates, std::vector<double> weights) {
    DominationContext ctx;
    ctx.weights = std::move(weights);
    const std::size_t n = ctx.weights.size();
    ctx.norm.assign(n, {0.0, 0.0});
    bool first = true;
    for (const GoalVector& g : candidates) {
        if (g.size() != n)
            throw ContractError("candidate goal vector has the wrong dimension");
        for (std::size_t i = 0; i < n; ++i) {
            if (first) {
                ctx.norm[i] = {g[i], g[i]};
            } else {
                ctx.norm[i].first = std::min(ctx.norm[i].first, g[i]);
                ctx.norm[i].second = std::max(ctx.norm[i].second, g[i]);
            }
        }
        first = false;
    }
    return ctx;
}

double zitzler_loss(const GoalVector& a, const GoalVector& b,
                    const DominationContext& ctx) {
    check_dims(a, b, ctx);
    const int n = ctx.n();
    double loss = 0.0;
    for (int i = 0; i < n; ++i) {
        const double ai = ctx.normalize(i, a[static_cast<std::size_t>(i)]);
        const double bi = ctx.normalize(i, b[static_cast<std::size_t>(i)]);
        loss += std::exp(ctx.weights[static_cast<std::size_t>(i)] * (ai - bi) / n);
    }
    return loss;
}

bool better(const GoalVector& a, const GoalVector& b, const DominationContext& ctx) {
    return zitzler_loss(a, b, ctx) < zitzler_loss(b, a, ctx);
}

bool binary_dominates(const GoalVector& a, const GoalVector& b,
                      const DominationContext& ctx) {
    check_dims(a, b, ctx);
    bool strict = false;
    for (int i = 0; i < ctx.n(); ++i) {
        // w = +1 minimizes: smaller-is-better; w = -1 flips the comparison
        const double w = ctx.weights[static_cast<std::size_t>(i)];
        const double ai = w * a[static_cast<std::size_t>(i)];
        const double bi = w * b[static_cast<std::size_t>(i)];
        if (ai > bi) return false;
        if (ai < bi) strict = true;
    }
    return strict;
}

double rank_score(std::span<const GoalVector> candidates, std::size_t index,
                  const DominationContext& ctx) {
    const std::size_t m = candidates.size();
    if (m < 2) return 0.0;
    double total = 0.0;
    for (std::size_t y = 0; y < m; ++y) {
        if (y == index) continue;
        total += zitzler_loss(candidates[index], candidates[y], ctx);
    }
    return total / static_cast<double>(m - 1);
}

std::vector<int> rank(std::span<const GoalVector> candidates,
                      const DominationContext& ctx, RankMethod method) {
    const std::size_t m = candidates.size();
    if (m == 0) throw ContractError("rank needs at least one candidate");
    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 0);

    if (method == RankMethod::mean_loss) {
        std::vector<double> score(m);
        for (std::size_t x = 0; x < m; ++x) score[x] = rank_score(candidates, x, ctx);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return score[static_cast<std::size_t>(a)] <
                   score[static_cast<std::size_t>(b)];
        });
    } else {
        std::vector<int> wins(m, 0);
        for (std::size_t x = 0; x < m; ++x)
            for (std::size_t y = 0; y < m; ++y)
                if (x != y && better(candidates[x], candidates[y], ctx))
                    ++wins[x];
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return wins[static_cast<std::size_t>(a)] >
                   wins[static_cast<std::size_t>(b)];
        });
    }
    return order;
}

}  // namespace tgen
