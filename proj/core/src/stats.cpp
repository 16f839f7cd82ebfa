#include "tgen/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "tgen/errors.hpp"

namespace tgen {

double cliffs_delta(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty())
        throw ContractError("cliffs_delta needs two nonempty samples");
    long greater = 0, less = 0;
    for (double x : a)
        for (double y : b) {
            if (x > y) ++greater;
            if (x < y) ++less;
        }
    return static_cast<double>(greater - less) /
           (static_cast<double>(a.size()) * static_cast<double>(b.size()));
}

bool is_significant(double delta) { return std::abs(delta) >= 0.147; }

namespace {

double mean_of(std::span<const double> v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

double split_gain(std::span<const double> c1, std::span<const double> c2) {
    if (c1.empty() || c2.empty())
        throw ContractError("split_gain needs two nonempty sides");
    const double n1 = static_cast<double>(c1.size());
    const double n2 = static_cast<double>(c2.size());
    const double m1 = mean_of(c1);
    const double m2 = mean_of(c2);
    const double m = (n1 * m1 + n2 * m2) / (n1 + n2);
    return (n1 * std::abs(m1 - m) + n2 * std::abs(m2 - m)) / (n1 + n2);
}

double quantile(std::vector<double> values, double q) {
    if (values.empty()) throw ContractError("quantile of an empty sample");
    std::sort(values.begin(), values.end());
    const double pos = q * static_cast<double>(values.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = static_cast<std::size_t>(std::ceil(pos));
    const double frac = pos - static_cast<double>(lo);
    return values[lo] + frac * (values[hi] - values[lo]);
}

double median(std::vector<double> values) { return quantile(std::move(values), 0.5); }

double iqr(const std::vector<double>& values) {
    return quantile(values, 0.75) - quantile(values, 0.25);
}

namespace {

struct Segment {
    std::size_t begin, end;  // group index range [begin, end)
};

std::vector<double> pooled(const std::vector<GroupSamples>& groups, std::size_t begin,
                           std::size_t end) {
    std::vector<double> v;
    for (std::size_t g = begin; g < end; ++g)
        v.insert(v.end(), groups[g].values.begin(), groups[g].values.end());
    return v;
}

void partition(const std::vector<GroupSamples>& groups, std::size_t begin,
               std::size_t end, int& next_rank, std::vector<int>& ranks) {
    if (end - begin <= 1) {
        for (std::size_t g = begin; g < end; ++g) ranks[g] = next_rank;
        ++next_rank;
        return;
    }

    double best_gain = -1.0;
    std::size_t best_cut = begin;
    for (std::size_t cut = begin + 1; cut < end; ++cut) {
        const auto left = pooled(groups, begin, cut);
        const auto right = pooled(groups, cut, end);
        const double gain = split_gain(left, right);
        if (gain > best_gain) {
            best_gain = gain;
            best_cut = cut;
        }
    }

    const auto left = pooled(groups, begin, best_cut);
    const auto right = pooled(groups, best_cut, end);
    if (!is_significant(cliffs_delta(left, right))) {
        for (std::size_t g = begin; g < end; ++g) ranks[g] = next_rank;
        ++next_rank;
        return;
    }
    partition(groups, begin, best_cut, next_rank, ranks);
    partition(groups, best_cut, end, next_rank, ranks);
}

}  // namespace

std::vector<RankedGroup> scott_knott(std::vector<GroupSamples> groups, bool maximize) {
    if (groups.empty()) throw ContractError("scott_knott needs at least one group");
    for (const GroupSamples& g : groups)
        if (g.values.empty())
            throw ContractError("scott_knott group '" + g.name + "' is empty");

    std::vector<double> med(groups.size());
    for (std::size_t g = 0; g < groups.size(); ++g) med[g] = median(groups[g].values);

    std::vector<std::size_t> order(groups.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (med[a] != med[b]) return maximize ? med[a] > med[b] : med[a] < med[b];
        return groups[a].name < groups[b].name;  // insertion-order independence
    });

    std::vector<GroupSamples> sorted;
    sorted.reserve(groups.size());
    for (std::size_t g : order) sorted.push_back(std::move(groups[g]));

    std::vector<int> ranks(sorted.size(), 0);
    int next_rank = 1;
    partition(sorted, 0, sorted.size(), next_rank, ranks);

    std::vector<RankedGroup> out;
    out.reserve(sorted.size());
    for (std::size_t g = 0; g < sorted.size(); ++g) {
        RankedGroup r;
        r.name = sorted[g].name;
        r.median = median(sorted[g].values);
        r.iqr = iqr(sorted[g].values);
        r.rank = ranks[g];
        out.push_back(std::move(r));
    }
    return out;
}

std::string rank_table_csv(const std::vector<RankedGroup>& ranked) {
    std::ostringstream os;
    os << "group,median,iqr,rank\n";
    for (const RankedGroup& r : ranked)
        os << r.name << "," << r.median << "," << r.iqr << "," << r.rank << "\n";
    return os.str();
}

}  // namespace tgen
