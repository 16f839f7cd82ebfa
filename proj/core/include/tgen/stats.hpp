#pragma once

#include <span>
#include <string>
#include <vector>

namespace tgen {

/// Nonparametric effect size: (#(x>y) - #(x<y)) / (|a|*|b|) over all pairs.
double cliffs_delta(std::span<const double> a, std::span<const double> b);

/// A Cliff's delta counts as significant when its magnitude is not a
/// "small" effect, i.e. |delta| >= 0.147.
bool is_significant(double delta);

/// Expected mean shift of cutting a pooled value list into c1|c2:
/// (len(c1)*|mean(c1)-mean(c)| + len(c2)*|mean(c2)-mean(c)|) / len(c).
double split_gain(std::span<const double> c1, std::span<const double> c2);

double median(std::vector<double> values);
double quantile(std::vector<double> values, double q);  // linear interpolation
double iqr(const std::vector<double>& values);

struct GroupSamples {
    std::string name;
    std::vector<double> values;
};

struct RankedGroup {
    std::string name;
    double median = 0.0;
    double iqr = 0.0;
    int rank = 0;  // 1 = best; indistinguishable groups share a rank
};

/// Scott-Knott rank partitioning: order the groups by median (best first),
/// recursively cut between groups where the split gain peaks, and keep a cut
/// only when the two pooled sides differ by a significant Cliff's delta.
/// The result is sorted best-first; insertion order never matters.
std::vector<RankedGroup> scott_knott(std::vector<GroupSamples> groups,
                                     bool maximize = true);

std::string rank_table_csv(const std::vector<RankedGroup>& ranked);

}  // namespace tgen
