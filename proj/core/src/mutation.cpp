#include "tgen/mutation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "tgen/errors.hpp"

namespace tgen {

const char* to_string(MutationOperator op) {
    switch (op) {
        case MutationOperator::constant_change: return "ConstantChange";
        case MutationOperator::boolean_negate: return "BooleanNegate";
        case MutationOperator::sum_signs: return "SumSignVector";
        case MutationOperator::sum_to_product: return "SumToProduct";
        case MutationOperator::relational_swap: return "RelationalSwap";
        case MutationOperator::logical_swap: return "LogicalSwap";
        case MutationOperator::not_toggle: return "NotToggle";
        case MutationOperator::switch_line_swap: return "SwitchLineSwap";
        case MutationOperator::initial_value_change: return "InitialValueChange";
    }
    return "?";
}

MutationOperator mutation_operator_from_string(const std::string& s) {
    static const std::map<std::string, MutationOperator> table = {
        {"ConstantChange", MutationOperator::constant_change},
        {"BooleanNegate", MutationOperator::boolean_negate},
        {"SumSignVector", MutationOperator::sum_signs},
        {"SumToProduct", MutationOperator::sum_to_product},
        {"RelationalSwap", MutationOperator::relational_swap},
        {"LogicalSwap", MutationOperator::logical_swap},
        {"NotToggle", MutationOperator::not_toggle},
        {"SwitchLineSwap", MutationOperator::switch_line_swap},
        {"InitialValueChange", MutationOperator::initial_value_change},
    };
    const auto it = table.find(s);
    if (it == table.end()) throw ConfigError("unknown mutation operator '" + s + "'");
    return it->second;
}

nlohmann::json Mutant::to_json() const {
    return {{"id", id},
            {"model", model},
            {"block", block_id},
            {"operator", to_string(op)},
            {"params", params},
            {"description", description}};
}

Mutant Mutant::from_json(const nlohmann::json& j) {
    Mutant m;
    m.id = j.at("id").get<int>();
    m.model = j.value("model", "");
    m.block_id = j.at("block").get<std::string>();
    m.op = mutation_operator_from_string(j.at("operator").get<std::string>());
    m.params = j.value("params", nlohmann::json::object());
    m.description = j.value("description", "");
    return m;
}

namespace {

std::string describe(const Block& b, const std::string& what) {
    return std::string(to_string(b.kind)) + " '" + b.id + "': " + what;
}

void add(std::vector<Mutant>& out, const ModelGraph& g, const Block& b,
         MutationOperator op, nlohmann::json params, const std::string& what) {
    Mutant m;
    m.id = static_cast<int>(out.size());
    m.model = g.name;
    m.block_id = b.id;
    m.op = op;
    m.params = std::move(params);
    m.description = describe(b, what);
    out.push_back(std::move(m));
}

std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

// complement plus operand-order reversal; == and != only swap with each other
std::vector<RelOp> relational_swaps(RelOp op) {
    switch (op) {
        case RelOp::ge: return {RelOp::lt, RelOp::le};
        case RelOp::le: return {RelOp::gt, RelOp::ge};
        case RelOp::lt: return {RelOp::ge, RelOp::gt};
        case RelOp::gt: return {RelOp::le, RelOp::lt};
        case RelOp::eq: return {RelOp::ne};
        case RelOp::ne: return {RelOp::eq};
    }
    return {};
}

std::vector<LogicOp> logical_swaps(LogicOp op) {
    switch (op) {
        case LogicOp::logical_and: return {LogicOp::logical_or, LogicOp::logical_xor};
        case LogicOp::logical_or: return {LogicOp::logical_and, LogicOp::logical_xor};
        case LogicOp::logical_xor: return {LogicOp::logical_and, LogicOp::logical_or};
        case LogicOp::logical_not: return {};
    }
    return {};
}

}  // namespace

std::vector<Mutant> enumerate_mutants(const ModelGraph& graph, SumCountingMode mode) {
    std::vector<Mutant> out;
    for (const Block& b : graph.blocks) {
        switch (b.kind) {
            case BlockKind::constant: {
                if (b.boolean_constant) {
                    add(out, graph, b, MutationOperator::boolean_negate,
                        {{"value", 1.0 - b.value}}, "negate boolean constant");
                    break;
                }
                // cover sign, magnitude and nullification faults; skip no-ops
                std::vector<double> candidates = {b.value + 1.0, -b.value, 0.0,
                                                  10.0 * b.value};
                std::vector<double> used;
                for (double v : candidates) {
                    if (v == b.value) continue;
                    if (std::find(used.begin(), used.end(), v) != used.end()) continue;
                    used.push_back(v);
                    add(out, graph, b, MutationOperator::constant_change,
                        {{"value", v}}, "constant " + fmt(b.value) + " -> " + fmt(v));
                }
                break;
            }
            case BlockKind::sum: {
                const std::size_t q = b.signs.size();
                for (std::size_t bits = 0; bits < (1u << q); ++bits) {
                    std::string signs(q, '+');
                    for (std::size_t i = 0; i < q; ++i)
                        if (bits & (1u << i)) signs[i] = '-';
                    if (signs == b.signs && mode == SumCountingMode::exclude_original)
                        continue;
                    add(out, graph, b, MutationOperator::sum_signs, {{"signs", signs}},
                        "signs " + b.signs + " -> " + signs);
                }
                add(out, graph, b, MutationOperator::sum_to_product,
                    nlohmann::json::object(), "replace sum with product");
                break;
            }
            case BlockKind::relational:
                for (RelOp op : relational_swaps(b.rel_op))
                    add(out, graph, b, MutationOperator::relational_swap,
                        {{"op", to_string(op)}},
                        std::string(to_string(b.rel_op)) + " -> " + to_string(op));
                break;
            case BlockKind::logical:
                if (b.logic_op == LogicOp::logical_not) {
                    add(out, graph, b, MutationOperator::not_toggle,
                        nlohmann::json::object(), "remove NOT (pass-through)");
                } else {
                    for (LogicOp op : logical_swaps(b.logic_op))
                        add(out, graph, b, MutationOperator::logical_swap,
                            {{"op", to_string(op)}},
                            std::string(to_string(b.logic_op)) + " -> " +
                                to_string(op));
                }
                break;
            case BlockKind::switch_sel:
                add(out, graph, b, MutationOperator::switch_line_swap,
                    nlohmann::json::object(), "swap data input lines");
                break;
            case BlockKind::unit_delay:
            case BlockKind::discrete_integrator:
                add(out, graph, b, MutationOperator::initial_value_change,
                    {{"initial", b.initial + 1.0}},
                    "initial " + fmt(b.initial) + " -> " + fmt(b.initial + 1.0));
                break;
            case BlockKind::product:
            case BlockKind::gain:
            case BlockKind::saturation:
            case BlockKind::abs_value:
            case BlockKind::minmax:
                break;  // no fault pattern targets these kinds
        }
    }
    return out;
}

ModelGraph apply_mutant(const ModelGraph& graph, const Mutant& mutant) {
    ModelGraph g = graph;
    const int bi = g.block_index(mutant.block_id);
    if (bi < 0)
        throw ContractError("mutant targets unknown block '" + mutant.block_id + "'");
    Block& b = g.blocks[static_cast<std::size_t>(bi)];

    switch (mutant.op) {
        case MutationOperator::constant_change:
        case MutationOperator::boolean_negate:
            if (b.kind != BlockKind::constant)
                throw ContractError("constant mutation on non-constant block");
            b.value = mutant.params.at("value").get<double>();
            break;
        case MutationOperator::sum_signs:
            if (b.kind != BlockKind::sum)
                throw ContractError("sign mutation on non-sum block");
            b.signs = mutant.params.at("signs").get<std::string>();
            break;
        case MutationOperator::sum_to_product:
            if (b.kind != BlockKind::sum)
                throw ContractError("sum-to-product mutation on non-sum block");
            b.kind = BlockKind::product;
            b.input_count = static_cast<int>(b.signs.size());
            break;
        case MutationOperator::relational_swap:
            if (b.kind != BlockKind::relational)
                throw ContractError("relational mutation on non-relational block");
            b.rel_op = rel_op_from_string(mutant.params.at("op").get<std::string>());
            break;
        case MutationOperator::logical_swap:
            if (b.kind != BlockKind::logical)
                throw ContractError("logical mutation on non-logical block");
            b.logic_op = logic_op_from_string(mutant.params.at("op").get<std::string>());
            break;
        case MutationOperator::not_toggle:
            if (b.kind != BlockKind::logical || b.logic_op != LogicOp::logical_not)
                throw ContractError("NOT removal on a block that is not a NOT");
            // single-block replacement: a unit gain forwards the wire untouched
            b.kind = BlockKind::gain;
            b.factor = 1.0;
            break;
        case MutationOperator::switch_line_swap: {
            if (b.kind != BlockKind::switch_sel)
                throw ContractError("line swap on non-switch block");
            for (Connection& c : g.connections) {
                if (c.to_block != b.id) continue;
                if (c.to_port == "in1")
                    c.to_port = "in3";
                else if (c.to_port == "in3")
                    c.to_port = "in1";
            }
            break;
        }
        case MutationOperator::initial_value_change:
            if (!b.is_state())
                throw ContractError("initial-value mutation on a stateless block");
            b.initial = mutant.params.at("initial").get<double>();
            break;
    }

    g.validate_and_wire();
    return g;
}

bool kills(const SimulationTrace& original, const SimulationTrace& mutated) {
    if (original.outputs.size() != mutated.outputs.size())
        throw ContractError("traces disagree on output count");
    for (std::size_t o = 0; o < original.outputs.size(); ++o) {
        const auto& a = original.outputs[o].values;
        const auto& b = mutated.outputs[o].values;
        if (a.size() != b.size())
            throw ContractError("traces disagree on sample count");
        for (std::size_t j = 0; j < a.size(); ++j) {
            const double tol =
                std::max(1e-9, 1e-9 * std::max(std::abs(a[j]), std::abs(b[j])));
            if (std::abs(a[j] - b[j]) > tol) return true;
        }
    }
    return false;
}

std::vector<bool> KillMatrix::signature(std::size_t mutant) const {
    std::vector<bool> sig(cells.size());
    for (std::size_t t = 0; t < cells.size(); ++t) sig[t] = cells[t][mutant];
    return sig;
}

std::string KillMatrix::to_csv(const std::vector<Mutant>& mutant_list) const {
    std::ostringstream os;
    os << "test";
    for (const Mutant& m : mutant_list) os << ",m" << m.id;
    os << "\n";
    for (std::size_t t = 0; t < cells.size(); ++t) {
        os << t;
        for (bool killed : cells[t]) os << "," << (killed ? 1 : 0);
        os << "\n";
    }
    return os.str();
}

KillMatrix compute_kill_matrix(const TestSuite& suite, const ModelGraph& graph,
                               const std::vector<Mutant>& mutants) {
    KillMatrix km;
    km.cells.assign(suite.size(), std::vector<bool>(mutants.size(), false));

    std::vector<ModelGraph> mutated;
    mutated.reserve(mutants.size());
    for (const Mutant& m : mutants) mutated.push_back(apply_mutant(graph, m));

    for (std::size_t t = 0; t < suite.size(); ++t) {
        const auto inputs = render_inputs(graph, suite[t]);
        const SimulationTrace base = simulate(graph, inputs);
        for (std::size_t m = 0; m < mutants.size(); ++m) {
            const auto mt_inputs = render_inputs(mutated[m], suite[t]);
            km.cells[t][m] = kills(base, simulate(mutated[m], mt_inputs));
        }
    }
    return km;
}

FilterOutcome filter_mutants(const std::vector<Mutant>& mutants,
                             const ModelGraph& graph, int n_probe, Rng& rng) {
    if (mutants.empty()) throw ContractError("filter_mutants needs a nonempty list");
    if (n_probe < 1) throw ConfigError("probe count must be positive");

    FilterOutcome outcome;
    outcome.original_count = static_cast<int>(mutants.size());
    outcome.probe_count = n_probe;

    TestSuite probes;
    probes.reserve(static_cast<std::size_t>(n_probe));
    for (int i = 0; i < n_probe; ++i)
        probes.push_back(sample_test_case(graph.inports, rng));

    const KillMatrix km = compute_kill_matrix(probes, graph, mutants);

    std::vector<std::vector<bool>> seen_signatures;
    for (std::size_t m = 0; m < mutants.size(); ++m) {
        const std::vector<bool> sig = km.signature(m);
        const std::size_t kill_count =
            static_cast<std::size_t>(std::count(sig.begin(), sig.end(), true));
        if (kill_count == probes.size()) {
            ++outcome.dropped_all_killed;
            continue;
        }
        if (kill_count == 0) {
            ++outcome.dropped_never_killed;
            continue;
        }
        if (std::find(seen_signatures.begin(), seen_signatures.end(), sig) !=
            seen_signatures.end()) {
            ++outcome.dropped_duplicate;
            continue;
        }
        seen_signatures.push_back(sig);
        outcome.kept.push_back(mutants[m]);
    }
    return outcome;
}

double mutation_score(const TestSuite& suite, const ModelGraph& graph,
                      const std::vector<Mutant>& mutants) {
    if (mutants.empty())
        throw ContractError("mutation score is undefined for an empty mutant list");
    if (suite.empty()) return 0.0;
    const KillMatrix km = compute_kill_matrix(suite, graph, mutants);
    int killed = 0;
    for (std::size_t m = 0; m < mutants.size(); ++m) {
        for (std::size_t t = 0; t < suite.size(); ++t) {
            if (km.cells[t][m]) {
                ++killed;
                break;
            }
        }
    }
    return static_cast<double>(killed) / static_cast<double>(mutants.size());
}

nlohmann::json mutants_to_json(const std::vector<Mutant>& mutants) {
    nlohmann::json arr = nlohmann::json::array();
    for (const Mutant& m : mutants) arr.push_back(m.to_json());
    return arr;
}

std::vector<Mutant> mutants_from_json(const nlohmann::json& j) {
    std::vector<Mutant> out;
    for (const auto& item : j) out.push_back(Mutant::from_json(item));
    return out;
}

}  // namespace tgen
