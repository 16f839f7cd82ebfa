#pragma once

#include <string>
#include <vector>

#include "tgen/model.hpp"
#include "tgen/rng.hpp"

#include "json.hpp"

namespace tgen {

enum class MutationOperator {
    constant_change,
    boolean_negate,
    sum_signs,
    sum_to_product,
    relational_swap,
    logical_swap,
    not_toggle,
    switch_line_swap,
    initial_value_change,
};

const char* to_string(MutationOperator op);
MutationOperator mutation_operator_from_string(const std::string& s);

/// One seeded fault: which block, which operator, and the operator's
/// replacement parameters.
struct Mutant {
    int id = 0;
    std::string model;
    std::string block_id;
    MutationOperator op = MutationOperator::constant_change;
    nlohmann::json params;  // e.g. {"value": 3.0} or {"signs": "+-+"}
    std::string description;

    nlohmann::json to_json() const;
    static Mutant from_json(const nlohmann::json& j);
};

/// Whether the sign-vector enumeration for Sum blocks includes the original
/// pattern. The inclusive convention counts all 2^q orders of +/-, so a
/// 3-input sum reports 9 mutants with the product variant (the no-op copy is
/// later removed by the never-killed filter rule); the strict mode drops it
/// up front and reports 8.
enum class SumCountingMode { include_original, exclude_original };

/// Every applicable single-block fault: constant value changes and boolean
/// negations, sum sign vectors plus the all-product variant, relational and
/// logical operator swaps, NOT removal, switch data-line swaps, and initial
/// value changes on state blocks.
std::vector<Mutant> enumerate_mutants(
    const ModelGraph& graph, SumCountingMode mode = SumCountingMode::include_original);

/// Applies the fault to a copy of the graph; the result is validated.
ModelGraph apply_mutant(const ModelGraph& graph, const Mutant& mutant);

/// A test kills a mutant when any output sample differs beyond tolerance
/// (absolute 1e-9 or relative 1e-9, whichever is larger per sample).
bool kills(const SimulationTrace& original, const SimulationTrace& mutated);

/// Test x mutant detection table.
struct KillMatrix {
    std::vector<std::vector<bool>> cells;  // [test][mutant]

    std::size_t tests() const { return cells.size(); }
    std::size_t mutants() const { return cells.empty() ? 0 : cells.front().size(); }
    /// Column of the matrix: which tests kill this mutant.
    std::vector<bool> signature(std::size_t mutant) const;
    std::string to_csv(const std::vector<Mutant>& mutants) const;
};

KillMatrix compute_kill_matrix(const TestSuite& suite, const ModelGraph& graph,
                               const std::vector<Mutant>& mutants);

struct FilterOutcome {
    std::vector<Mutant> kept;
    int original_count = 0;
    int probe_count = 0;
    int dropped_all_killed = 0;
    int dropped_never_killed = 0;
    int dropped_duplicate = 0;
};

/// Probe-based mutant preprocessing: run n_probe random tests and drop
/// mutants killed by every probe, killed by none, or sharing a kill
/// signature with an earlier mutant (the lowest id survives).
FilterOutcome filter_mutants(const std::vector<Mutant>& mutants,
                             const ModelGraph& graph, int n_probe, Rng& rng);

/// Fraction of mutants killed by at least one suite member. Empty suites
/// score 0; an empty mutant list is undefined and throws.
double mutation_score(const TestSuite& suite, const ModelGraph& graph,
                      const std::vector<Mutant>& mutants);

nlohmann::json mutants_to_json(const std::vector<Mutant>& mutants);
std::vector<Mutant> mutants_from_json(const nlohmann::json& j);

}  // namespace tgen
