#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tgen/signal.hpp"

#include "json.hpp"

namespace tgen {

enum class BlockKind {
    constant,
    sum,
    product,
    gain,
    relational,
    logical,
    switch_sel,
    unit_delay,
    discrete_integrator,
    saturation,
    abs_value,
    minmax,
};

enum class RelOp { lt, le, gt, ge, eq, ne };
enum class LogicOp { logical_and, logical_or, logical_xor, logical_not };
enum class MinMaxOp { minimum, maximum };

const char* to_string(BlockKind kind);
const char* to_string(RelOp op);
const char* to_string(LogicOp op);
RelOp rel_op_from_string(const std::string& s);
LogicOp logic_op_from_string(const std::string& s);

/// One block of the diagram. Parameters are stored flat; each kind reads the
/// fields it needs.
struct Block {
    std::string id;
    BlockKind kind = BlockKind::constant;

    double value = 0.0;             // constant
    bool boolean_constant = false;  // constant: boolean-typed
    std::string signs;              // sum: one of "+-" per input
    int input_count = 2;            // product, minmax
    double factor = 1.0;            // gain
    RelOp rel_op = RelOp::lt;
    LogicOp logic_op = LogicOp::logical_and;
    double threshold = 0.0;  // switch: passes in1 when control >= threshold
    double initial = 0.0;    // unit delay / discrete integrator
    double lo = 0.0;         // saturation lower bound
    double hi = 0.0;         // saturation upper bound
    MinMaxOp minmax_op = MinMaxOp::minimum;

    int arity() const;
    bool is_state() const {
        return kind == BlockKind::unit_delay || kind == BlockKind::discrete_integrator;
    }
};

struct Connection {
    std::string from_block;  // block id or inport name
    std::string from_port;   // "out" (only output port)
    std::string to_block;    // block id or outport name
    std::string to_port;     // "in1".."inN"
};

/// Where a block input (or an outport) takes its value from.
struct Endpoint {
    enum class Kind { inport, block };
    Kind kind = Kind::block;
    int index = -1;
};

/// Discrete-time block-diagram model: the simulatable artifact and the
/// mutation substrate. Immutable after load; wiring tables are resolved once
/// by validate_and_wire().
struct ModelGraph {
    std::string name;
    double dt = 0.0;
    double duration = 0.0;
    std::vector<InputSpec> inports;
    std::vector<std::string> outports;
    std::vector<Block> blocks;
    std::vector<Connection> connections;

    // resolved wiring: one source endpoint per block input port / outport
    std::vector<std::vector<Endpoint>> block_inputs;
    std::vector<Endpoint> outport_sources;

    /// Enforces the graph invariants (arities, single driver per port, no
    /// algebraic loops) and builds the wiring tables. Throws LoadError.
    void validate_and_wire();

    int block_index(const std::string& id) const;  // -1 when absent
    bool all_inputs_constant() const;
};

ModelGraph load_model(const std::string& text);
ModelGraph load_model_file(const std::string& path);
nlohmann::json model_to_json(const ModelGraph& graph);

/// Evaluation order for the combinational part: every block appears after
/// the non-state blocks that feed it. State blocks come first (their step-j
/// output is last step's state, so nothing this step has to precede them).
std::vector<int> topological_order(const ModelGraph& graph);

struct SimulationFault {
    int step = 0;
    std::string block_id;
};

struct SimulationTrace {
    std::vector<Signal> outputs;  // one per outport
    std::set<std::pair<std::string, std::string>> coverage;
    std::optional<SimulationFault> fault;
};

/// Fixed-step simulation. State blocks emit pre-update state; a non-finite
/// value does not abort: outputs are padded with their last finite sample
/// from the faulty step onward and the trace is flagged.
SimulationTrace simulate(const ModelGraph& graph, const std::vector<Signal>& inputs);

/// Renders a test case into one input signal per inport; boolean inports are
/// booleanized sample-by-sample.
std::vector<Signal> render_inputs(const ModelGraph& graph, const TestCase& tc);

/// All (block id, branch tag) pairs the instrumentation can ever report:
/// both branches of every Switch and both outcomes of every RelationalOp.
std::set<std::pair<std::string, std::string>> branch_universe(const ModelGraph& graph);

/// Simulation capability handed to generators: runs one test case end to end
/// and counts invocations, so budget reports can be checked against reality.
class CaseSimulator {
  public:
    using Fn = std::function<SimulationTrace(const TestCase&)>;

    explicit CaseSimulator(Fn fn) : fn_(std::move(fn)) {}
    static CaseSimulator for_model(const ModelGraph& graph);

    SimulationTrace operator()(const TestCase& tc) {
        ++count_;
        return fn_(tc);
    }
    long count() const { return count_; }

  private:
    Fn fn_;
    long count_ = 0;
};

}  // namespace tgen
