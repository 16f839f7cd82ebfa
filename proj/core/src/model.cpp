#include "tgen/model.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "tgen/errors.hpp"

namespace tgen {

const char* to_string(BlockKind kind) {
    switch (kind) {
        case BlockKind::constant: return "Constant";
        case BlockKind::sum: return "Sum";
        case BlockKind::product: return "Product";
        case BlockKind::gain: return "Gain";
        case BlockKind::relational: return "RelationalOp";
        case BlockKind::logical: return "LogicalOp";
        case BlockKind::switch_sel: return "Switch";
        case BlockKind::unit_delay: return "UnitDelay";
        case BlockKind::discrete_integrator: return "DiscreteIntegrator";
        case BlockKind::saturation: return "Saturation";
        case BlockKind::abs_value: return "Abs";
        case BlockKind::minmax: return "MinMax";
    }
    return "?";
}

const char* to_string(RelOp op) {
    switch (op) {
        case RelOp::lt: return "<";
        case RelOp::le: return "<=";
        case RelOp::gt: return ">";
        case RelOp::ge: return ">=";
        case RelOp::eq: return "==";
        case RelOp::ne: return "!=";
    }
    return "?";
}

const char* to_string(LogicOp op) {
    switch (op) {
        case LogicOp::logical_and: return "AND";
        case LogicOp::logical_or: return "OR";
        case LogicOp::logical_xor: return "XOR";
        case LogicOp::logical_not: return "NOT";
    }
    return "?";
}

RelOp rel_op_from_string(const std::string& s) {
    if (s == "<") return RelOp::lt;
    if (s == "<=") return RelOp::le;
    if (s == ">") return RelOp::gt;
    if (s == ">=") return RelOp::ge;
    if (s == "==") return RelOp::eq;
    if (s == "!=") return RelOp::ne;
    throw LoadError("unknown relational operator '" + s + "'");
}

LogicOp logic_op_from_string(const std::string& s) {
    if (s == "AND") return LogicOp::logical_and;
    if (s == "OR") return LogicOp::logical_or;
    if (s == "XOR") return LogicOp::logical_xor;
    if (s == "NOT") return LogicOp::logical_not;
    throw LoadError("unknown logical operator '" + s + "'");
}

int Block::arity() const {
    switch (kind) {
        case BlockKind::constant: return 0;
        case BlockKind::sum: return static_cast<int>(signs.size());
        case BlockKind::product: return input_count;
        case BlockKind::gain: return 1;
        case BlockKind::relational: return 2;
        case BlockKind::logical:
            return logic_op == LogicOp::logical_not ? 1 : 2;
        case BlockKind::switch_sel: return 3;
        case BlockKind::unit_delay: return 1;
        case BlockKind::discrete_integrator: return 1;
        case BlockKind::saturation: return 1;
        case BlockKind::abs_value: return 1;
        case BlockKind::minmax: return input_count;
    }
    return 0;
}

int ModelGraph::block_index(const std::string& id) const {
    for (std::size_t i = 0; i < blocks.size(); ++i)
        if (blocks[i].id == id) return static_cast<int>(i);
    return -1;
}

bool ModelGraph::all_inputs_constant() const {
    return std::all_of(inports.begin(), inports.end(), [](const InputSpec& s) {
        return s.interpolation == Interpolation::constant;
    });
}

namespace {

int inport_index(const ModelGraph& g, const std::string& name) {
    for (std::size_t i = 0; i < g.inports.size(); ++i)
        if (g.inports[i].name == name) return static_cast<int>(i);
    return -1;
}

int outport_index(const ModelGraph& g, const std::string& name) {
    for (std::size_t i = 0; i < g.outports.size(); ++i)
        if (g.outports[i] == name) return static_cast<int>(i);
    return -1;
}

// "in3" -> 2; accepts "in" and "in1" as the first port.
int parse_input_port(const std::string& port, const std::string& where) {
    if (port == "in" || port.empty()) return 0;
    if (port.rfind("in", 0) == 0) {
        const std::string num = port.substr(2);
        if (!num.empty() && std::all_of(num.begin(), num.end(), ::isdigit))
            return std::stoi(num) - 1;
    }
    throw LoadError("bad input port '" + port + "' at " + where);
}

}  // namespace

void ModelGraph::validate_and_wire() {
    if (inports.empty()) throw LoadError("model '" + name + "' has no inports");
    if (outports.empty()) throw LoadError("model '" + name + "' has no outports");
    step_count(duration, dt);  // validates dt/duration
    for (const InputSpec& spec : inports) spec.validate();

    std::unordered_map<std::string, int> block_of;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        const Block& b = blocks[i];
        if (b.id.empty()) throw LoadError("block #" + std::to_string(i) + " has no id");
        if (!block_of.emplace(b.id, static_cast<int>(i)).second)
            throw LoadError("duplicate block id '" + b.id + "'");
        if (inport_index(*this, b.id) >= 0 || outport_index(*this, b.id) >= 0)
            throw LoadError("block id '" + b.id + "' collides with a port name");
        if (b.kind == BlockKind::sum) {
            if (b.signs.size() < 2)
                throw LoadError("Sum '" + b.id + "' needs at least two inputs");
            for (char c : b.signs)
                if (c != '+' && c != '-')
                    throw LoadError("Sum '" + b.id + "' has a sign other than +/-");
        }
        if ((b.kind == BlockKind::product || b.kind == BlockKind::minmax) &&
            b.input_count < 2)
            throw LoadError(std::string(to_string(b.kind)) + " '" + b.id +
                            "' needs at least two inputs");
        if (b.kind == BlockKind::saturation && b.lo > b.hi)
            throw LoadError("Saturation '" + b.id + "' has lo > hi");
    }

    block_inputs.assign(blocks.size(), {});
    for (std::size_t i = 0; i < blocks.size(); ++i)
        block_inputs[i].assign(static_cast<std::size_t>(blocks[i].arity()),
                               Endpoint{Endpoint::Kind::block, -1});
    outport_sources.assign(outports.size(), Endpoint{Endpoint::Kind::block, -1});

    for (const Connection& c : connections) {
        const std::string where = c.from_block + "->" + c.to_block;
        Endpoint src;
        if (int ip = inport_index(*this, c.from_block); ip >= 0) {
            src = {Endpoint::Kind::inport, ip};
        } else if (int bi = block_index(c.from_block); bi >= 0) {
            if (!c.from_port.empty() && c.from_port != "out")
                throw LoadError("blocks have a single output port 'out' (" + where + ")");
            src = {Endpoint::Kind::block, bi};
        } else {
            throw LoadError("connection from unknown element '" + c.from_block + "'");
        }

        if (int op = outport_index(*this, c.to_block); op >= 0) {
            if (outport_sources[static_cast<std::size_t>(op)].index != -1)
                throw LoadError("outport '" + c.to_block + "' is driven twice");
            outport_sources[static_cast<std::size_t>(op)] = src;
            continue;
        }
        const int bi = block_index(c.to_block);
        if (bi < 0) throw LoadError("connection to unknown element '" + c.to_block + "'");
        const int port = parse_input_port(c.to_port, where);
        auto& slots = block_inputs[static_cast<std::size_t>(bi)];
        if (port < 0 || port >= static_cast<int>(slots.size()))
            throw LoadError("block '" + c.to_block + "' has no port in" +
                            std::to_string(port + 1));
        if (slots[static_cast<std::size_t>(port)].index != -1)
            throw LoadError("input port '" + c.to_block + ".in" +
                            std::to_string(port + 1) + "' is driven twice");
        slots[static_cast<std::size_t>(port)] = src;
    }

    for (std::size_t i = 0; i < blocks.size(); ++i)
        for (std::size_t p = 0; p < block_inputs[i].size(); ++p)
            if (block_inputs[i][p].index == -1)
                throw LoadError("input port '" + blocks[i].id + ".in" +
                                std::to_string(p + 1) + "' is unconnected");
    for (std::size_t o = 0; o < outports.size(); ++o)
        if (outport_sources[o].index == -1)
            throw LoadError("outport '" + outports[o] + "' is undriven");

    topological_order(*this);  // throws on an algebraic loop
}

std::vector<int> topological_order(const ModelGraph& graph) {
    const int n = static_cast<int>(graph.blocks.size());
    // Ordering edges: combinational source -> combinational destination.
    // State-block outputs are ready at step start, so they impose nothing;
    // edges into state blocks are settled in the end-of-step update phase.
    std::vector<std::vector<int>> succ(static_cast<std::size_t>(n));
    std::vector<int> indegree(static_cast<std::size_t>(n), 0);

    for (int b = 0; b < n; ++b) {
        if (graph.blocks[static_cast<std::size_t>(b)].is_state()) continue;
        for (const Endpoint& src : graph.block_inputs[static_cast<std::size_t>(b)]) {
            if (src.kind != Endpoint::Kind::block) continue;
            if (graph.blocks[static_cast<std::size_t>(src.index)].is_state()) continue;
            succ[static_cast<std::size_t>(src.index)].push_back(b);
            ++indegree[static_cast<std::size_t>(b)];
        }
    }

    std::vector<int> order;
    order.reserve(static_cast<std::size_t>(n));
    std::deque<int> ready;
    for (int b = 0; b < n; ++b)
        if (graph.blocks[static_cast<std::size_t>(b)].is_state()) order.push_back(b);
    for (int b = 0; b < n; ++b)
        if (!graph.blocks[static_cast<std::size_t>(b)].is_state() &&
            indegree[static_cast<std::size_t>(b)] == 0)
            ready.push_back(b);

    std::size_t emitted = order.size();
    while (!ready.empty()) {
        const int b = ready.front();
        ready.pop_front();
        order.push_back(b);
        ++emitted;
        for (int s : succ[static_cast<std::size_t>(b)])
            if (--indegree[static_cast<std::size_t>(s)] == 0) ready.push_back(s);
    }

    if (emitted != static_cast<std::size_t>(n)) {
        for (int b = 0; b < n; ++b)
            if (!graph.blocks[static_cast<std::size_t>(b)].is_state() &&
                indegree[static_cast<std::size_t>(b)] > 0)
                throw LoadError("algebraic loop through block '" +
                                graph.blocks[static_cast<std::size_t>(b)].id + "'");
        throw LoadError("algebraic loop in model '" + graph.name + "'");
    }
    return order;
}

namespace {

bool truthy(double x) { return x != 0.0; }

bool rel_eval(RelOp op, double a, double b) {
    switch (op) {
        case RelOp::lt: return a < b;
        case RelOp::le: return a <= b;
        case RelOp::gt: return a > b;
        case RelOp::ge: return a >= b;
        case RelOp::eq: return a == b;
        case RelOp::ne: return a != b;
    }
    return false;
}

}  // namespace

SimulationTrace simulate(const ModelGraph& graph, const std::vector<Signal>& inputs) {
    if (inputs.size() != graph.inports.size())
        throw ContractError("simulate: expected " + std::to_string(graph.inports.size()) +
                            " input signals, got " + std::to_string(inputs.size()));
    const int k = step_count(graph.duration, graph.dt);
    for (std::size_t i = 0; i < inputs.size(); ++i)
        if (inputs[i].steps() != k)
            throw ContractError("input signal '" + graph.inports[i].name +
                                "' does not match the model horizon");

    const std::vector<int> order = topological_order(graph);
    const std::size_t nblocks = graph.blocks.size();

    SimulationTrace trace;
    trace.outputs.assign(graph.outports.size(), Signal{});
    for (Signal& s : trace.outputs) {
        s.dt = graph.dt;
        s.duration = graph.duration;
        s.values.assign(static_cast<std::size_t>(k) + 1, 0.0);
    }

    std::vector<double> out(nblocks, 0.0);
    std::vector<double> state(nblocks, 0.0);
    for (std::size_t b = 0; b < nblocks; ++b)
        if (graph.blocks[b].is_state()) state[b] = graph.blocks[b].initial;

    auto source_value = [&](const Endpoint& e, int step) -> double {
        if (e.kind == Endpoint::Kind::inport)
            return inputs[static_cast<std::size_t>(e.index)]
                .values[static_cast<std::size_t>(step)];
        return out[static_cast<std::size_t>(e.index)];
    };

    for (int j = 0; j <= k; ++j) {
        // state blocks expose last step's state, then combinational blocks fire
        for (int bi : order) {
            const auto b = static_cast<std::size_t>(bi);
            const Block& blk = graph.blocks[b];
            const auto& src = graph.block_inputs[b];
            double v = 0.0;
            switch (blk.kind) {
                case BlockKind::constant:
                    v = blk.value;
                    break;
                case BlockKind::sum: {
                    for (std::size_t p = 0; p < src.size(); ++p) {
                        const double x = source_value(src[p], j);
                        v += blk.signs[p] == '+' ? x : -x;
                    }
                    break;
                }
                case BlockKind::product: {
                    v = 1.0;
                    for (const Endpoint& e : src) v *= source_value(e, j);
                    break;
                }
                case BlockKind::gain:
                    v = blk.factor * source_value(src[0], j);
                    break;
                case BlockKind::relational: {
                    const bool hit = rel_eval(blk.rel_op, source_value(src[0], j),
                                              source_value(src[1], j));
                    trace.coverage.emplace(blk.id, hit ? "true" : "false");
                    v = hit ? 1.0 : 0.0;
                    break;
                }
                case BlockKind::logical: {
                    if (blk.logic_op == LogicOp::logical_not) {
                        v = truthy(source_value(src[0], j)) ? 0.0 : 1.0;
                    } else {
                        const bool a = truthy(source_value(src[0], j));
                        const bool c = truthy(source_value(src[1], j));
                        bool r = false;
                        if (blk.logic_op == LogicOp::logical_and) r = a && c;
                        if (blk.logic_op == LogicOp::logical_or) r = a || c;
                        if (blk.logic_op == LogicOp::logical_xor) r = a != c;
                        v = r ? 1.0 : 0.0;
                    }
                    break;
                }
                case BlockKind::switch_sel: {
                    const bool first = source_value(src[1], j) >= blk.threshold;
                    trace.coverage.emplace(blk.id, first ? "first" : "third");
                    v = source_value(first ? src[0] : src[2], j);
                    break;
                }
                case BlockKind::unit_delay:
                case BlockKind::discrete_integrator:
                    v = state[b];
                    break;
                case BlockKind::saturation:
                    v = std::clamp(source_value(src[0], j), blk.lo, blk.hi);
                    break;
                case BlockKind::abs_value:
                    v = std::abs(source_value(src[0], j));
                    break;
                case BlockKind::minmax: {
                    v = source_value(src[0], j);
                    for (std::size_t p = 1; p < src.size(); ++p) {
                        const double x = source_value(src[p], j);
                        v = blk.minmax_op == MinMaxOp::minimum ? std::min(v, x)
                                                               : std::max(v, x);
                    }
                    break;
                }
            }
            out[b] = v;
        }

        std::optional<std::size_t> bad;
        for (std::size_t b = 0; b < nblocks && !bad; ++b)
            if (!std::isfinite(out[b])) bad = b;

        for (std::size_t o = 0; o < graph.outports.size(); ++o) {
            double v = source_value(graph.outport_sources[o], j);
            if (!std::isfinite(v))
                v = j > 0 ? trace.outputs[o].values[static_cast<std::size_t>(j - 1)] : 0.0;
            trace.outputs[o].values[static_cast<std::size_t>(j)] = v;
        }

        if (bad) {
            // divergence: hold the last finite output levels to the horizon
            trace.fault = SimulationFault{j, graph.blocks[*bad].id};
            for (std::size_t o = 0; o < graph.outports.size(); ++o) {
                const double held = trace.outputs[o].values[static_cast<std::size_t>(j)];
                for (int r = j + 1; r <= k; ++r)
                    trace.outputs[o].values[static_cast<std::size_t>(r)] = held;
            }
            return trace;
        }

        for (std::size_t b = 0; b < nblocks; ++b) {
            const Block& blk = graph.blocks[b];
            if (blk.kind == BlockKind::unit_delay)
                state[b] = source_value(graph.block_inputs[b][0], j);
            else if (blk.kind == BlockKind::discrete_integrator)
                state[b] += graph.dt * source_value(graph.block_inputs[b][0], j);
        }
    }
    return trace;
}

std::vector<Signal> render_inputs(const ModelGraph& graph, const TestCase& tc) {
    if (tc.points.size() != graph.inports.size())
        throw ContractError("test case does not match the model's inport count");
    std::vector<Signal> signals;
    signals.reserve(graph.inports.size());
    for (std::size_t i = 0; i < graph.inports.size(); ++i) {
        const InputSpec& spec = graph.inports[i];
        Signal s = render_signal(tc.points[i], spec, graph.duration, graph.dt);
        if (spec.kind == InputKind::boolean)
            for (double& v : s.values) v = booleanize(v);
        signals.push_back(std::move(s));
    }
    return signals;
}

std::set<std::pair<std::string, std::string>> branch_universe(const ModelGraph& graph) {
    std::set<std::pair<std::string, std::string>> u;
    for (const Block& b : graph.blocks) {
        if (b.kind == BlockKind::switch_sel) {
            u.emplace(b.id, "first");
            u.emplace(b.id, "third");
        } else if (b.kind == BlockKind::relational) {
            u.emplace(b.id, "true");
            u.emplace(b.id, "false");
        }
    }
    return u;
}

CaseSimulator CaseSimulator::for_model(const ModelGraph& graph) {
    return CaseSimulator([&graph](const TestCase& tc) {
        return simulate(graph, render_inputs(graph, tc));
    });
}

// --- JSON schema -------------------------------------------------------------

namespace {

InputSpec inport_from_json(const nlohmann::json& j) {
    InputSpec spec;
    spec.name = j.at("name").get<std::string>();
    const std::string kind = j.value("kind", "numeric");
    if (kind == "numeric") {
        spec.kind = InputKind::numeric;
    } else if (kind == "boolean") {
        spec.kind = InputKind::boolean;
    } else {
        throw LoadError("inport '" + spec.name + "' has unknown kind '" + kind + "'");
    }
    if (spec.kind == InputKind::boolean) {
        spec.lo = 0.0;
        spec.hi = 1.0;
    } else {
        const auto& range = j.at("range");
        if (!range.is_array() || range.size() != 2)
            throw LoadError("inport '" + spec.name + "' needs \"range\": [lo, hi]");
        spec.lo = range[0].get<double>();
        spec.hi = range[1].get<double>();
    }
    spec.control_points = j.value("control_points", 1);
    const std::string interp = j.value("interpolation", "piecewise-constant");
    if (interp == "piecewise-constant") {
        spec.interpolation = Interpolation::piecewise_constant;
    } else if (interp == "constant") {
        spec.interpolation = Interpolation::constant;
    } else {
        throw LoadError("inport '" + spec.name + "' has unknown interpolation '" +
                        interp + "'");
    }
    try {
        spec.validate();
    } catch (const ConfigError& e) {
        throw LoadError(e.what());
    }
    return spec;
}

nlohmann::json inport_to_json(const InputSpec& spec) {
    return {
        {"name", spec.name},
        {"kind", spec.kind == InputKind::boolean ? "boolean" : "numeric"},
        {"range", {spec.lo, spec.hi}},
        {"control_points", spec.control_points},
        {"interpolation", spec.interpolation == Interpolation::constant
                              ? "constant"
                              : "piecewise-constant"},
    };
}

Block block_from_json(const nlohmann::json& j) {
    Block b;
    b.id = j.at("id").get<std::string>();
    const std::string kind = j.at("kind").get<std::string>();
    const nlohmann::json params = j.value("params", nlohmann::json::object());
    if (kind == "Constant") {
        b.kind = BlockKind::constant;
        b.value = params.at("value").get<double>();
        b.boolean_constant = params.value("type", "numeric") == "boolean";
        if (b.boolean_constant && b.value != 0.0 && b.value != 1.0)
            throw LoadError("boolean constant '" + b.id + "' must be 0 or 1");
    } else if (kind == "Sum") {
        b.kind = BlockKind::sum;
        b.signs = params.at("signs").get<std::string>();
    } else if (kind == "Product") {
        b.kind = BlockKind::product;
        b.input_count = params.value("inputs", 2);
    } else if (kind == "Gain") {
        b.kind = BlockKind::gain;
        b.factor = params.at("factor").get<double>();
    } else if (kind == "RelationalOp") {
        b.kind = BlockKind::relational;
        b.rel_op = rel_op_from_string(params.at("op").get<std::string>());
    } else if (kind == "LogicalOp") {
        b.kind = BlockKind::logical;
        b.logic_op = logic_op_from_string(params.at("op").get<std::string>());
    } else if (kind == "Switch") {
        b.kind = BlockKind::switch_sel;
        b.threshold = params.at("threshold").get<double>();
    } else if (kind == "UnitDelay") {
        b.kind = BlockKind::unit_delay;
        b.initial = params.value("initial", 0.0);
    } else if (kind == "DiscreteIntegrator") {
        b.kind = BlockKind::discrete_integrator;
        b.initial = params.value("initial", 0.0);
    } else if (kind == "Saturation") {
        b.kind = BlockKind::saturation;
        b.lo = params.at("lo").get<double>();
        b.hi = params.at("hi").get<double>();
    } else if (kind == "Abs") {
        b.kind = BlockKind::abs_value;
    } else if (kind == "MinMax") {
        b.kind = BlockKind::minmax;
        const std::string op = params.at("op").get<std::string>();
        if (op == "min") {
            b.minmax_op = MinMaxOp::minimum;
        } else if (op == "max") {
            b.minmax_op = MinMaxOp::maximum;
        } else {
            throw LoadError("MinMax '" + b.id + "' has unknown op '" + op + "'");
        }
        b.input_count = params.value("inputs", 2);
    } else {
        throw LoadError("unknown block kind '" + kind + "' (block '" + b.id + "')");
    }
    return b;
}

nlohmann::json block_to_json(const Block& b) {
    nlohmann::json params = nlohmann::json::object();
    switch (b.kind) {
        case BlockKind::constant:
            params["value"] = b.value;
            params["type"] = b.boolean_constant ? "boolean" : "numeric";
            break;
        case BlockKind::sum: params["signs"] = b.signs; break;
        case BlockKind::product: params["inputs"] = b.input_count; break;
        case BlockKind::gain: params["factor"] = b.factor; break;
        case BlockKind::relational: params["op"] = to_string(b.rel_op); break;
        case BlockKind::logical: params["op"] = to_string(b.logic_op); break;
        case BlockKind::switch_sel: params["threshold"] = b.threshold; break;
        case BlockKind::unit_delay:
        case BlockKind::discrete_integrator:
            params["initial"] = b.initial;
            break;
        case BlockKind::saturation:
            params["lo"] = b.lo;
            params["hi"] = b.hi;
            break;
        case BlockKind::abs_value: break;
        case BlockKind::minmax:
            params["op"] = b.minmax_op == MinMaxOp::minimum ? "min" : "max";
            params["inputs"] = b.input_count;
            break;
    }
    return {{"id", b.id}, {"kind", to_string(b.kind)}, {"params", params}};
}

// "block.port" -> {block, port}; a bare name addresses a port-less element.
std::pair<std::string, std::string> split_ref(const std::string& ref) {
    const auto dot = ref.find('.');
    if (dot == std::string::npos) return {ref, ""};
    return {ref.substr(0, dot), ref.substr(dot + 1)};
}

}  // namespace

ModelGraph load_model(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw LoadError(std::string("model document is not valid JSON: ") + e.what());
    }
    ModelGraph g;
    try {
        g.name = doc.at("name").get<std::string>();
        g.dt = doc.at("dt").get<double>();
        g.duration = doc.at("duration").get<double>();
        for (const auto& j : doc.at("inports")) g.inports.push_back(inport_from_json(j));
        g.outports = doc.at("outports").get<std::vector<std::string>>();
        for (const auto& j : doc.at("blocks")) g.blocks.push_back(block_from_json(j));
        for (const auto& j : doc.at("connections")) {
            const auto [fb, fp] = split_ref(j.at("from").get<std::string>());
            const auto [tb, tp] = split_ref(j.at("to").get<std::string>());
            g.connections.push_back(Connection{fb, fp, tb, tp});
        }
    } catch (const nlohmann::json::exception& e) {
        throw LoadError(std::string("model document is malformed: ") + e.what());
    }
    g.validate_and_wire();
    return g;
}

ModelGraph load_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw LoadError("cannot open model file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return load_model(buf.str());
}

nlohmann::json model_to_json(const ModelGraph& g) {
    nlohmann::json inports = nlohmann::json::array();
    for (const InputSpec& s : g.inports) inports.push_back(inport_to_json(s));
    nlohmann::json blocks = nlohmann::json::array();
    for (const Block& b : g.blocks) blocks.push_back(block_to_json(b));
    nlohmann::json conns = nlohmann::json::array();
    for (const Connection& c : g.connections) {
        const std::string from =
            c.from_port.empty() ? c.from_block : c.from_block + "." + c.from_port;
        const std::string to =
            c.to_port.empty() ? c.to_block : c.to_block + "." + c.to_port;
        conns.push_back({{"from", from}, {"to", to}});
    }
    return {{"name", g.name},   {"dt", g.dt},         {"duration", g.duration},
            {"inports", inports}, {"outports", g.outports}, {"blocks", blocks},
            {"connections", conns}};
}

}  // namespace tgen
