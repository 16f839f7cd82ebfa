#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "tgen/baselines.hpp"
#include "tgen/errors.hpp"
#include "tgen/mutation.hpp"

using namespace tgen;

namespace {

// one three-input sum and nothing else mutable
const char* kSumOnlyModel = R"({
  "name": "sum_only", "dt": 1.0, "duration": 3.0,
  "inports": [
    {"name": "a", "range": [-10, 10], "control_points": 2},
    {"name": "b", "range": [-10, 10], "control_points": 2},
    {"name": "c", "range": [-10, 10], "control_points": 2}
  ],
  "outports": ["y"],
  "blocks": [{"id": "s", "kind": "Sum", "params": {"signs": "++-"}}],
  "connections": [
    {"from": "a", "to": "s.in1"},
    {"from": "b", "to": "s.in2"},
    {"from": "c", "to": "s.in3"},
    {"from": "s.out", "to": "y"}
  ]
})";

// guarded constants: faults behind the switch are visible only when the
// control input goes non-negative somewhere, and a second switch has a
// branch that can never fire at all
const char* kGuardedModel = R"({
  "name": "guarded", "dt": 1.0, "duration": 3.0,
  "inports": [
    {"name": "u", "range": [-1, 1], "control_points": 2},
    {"name": "w", "range": [-1, 1], "control_points": 2}
  ],
  "outports": ["y"],
  "blocks": [
    {"id": "ca", "kind": "Constant", "params": {"value": 2.0}},
    {"id": "cb", "kind": "Constant", "params": {"value": 3.0}},
    {"id": "add", "kind": "Sum", "params": {"signs": "++"}},
    {"id": "nonneg", "kind": "RelationalOp", "params": {"op": ">="}},
    {"id": "sw", "kind": "Switch", "params": {"threshold": 0.5}},
    {"id": "always", "kind": "Constant", "params": {"value": 1.0}},
    {"id": "dead", "kind": "Constant", "params": {"value": 0.0}},
    {"id": "sw2", "kind": "Switch", "params": {"threshold": 0.5}}
  ],
  "connections": [
    {"from": "ca.out", "to": "add.in1"},
    {"from": "cb.out", "to": "add.in2"},
    {"from": "u", "to": "nonneg.in1"},
    {"from": "w", "to": "nonneg.in2"},
    {"from": "add.out", "to": "sw.in1"},
    {"from": "nonneg.out", "to": "sw.in2"},
    {"from": "u", "to": "sw.in3"},
    {"from": "sw.out", "to": "sw2.in1"},
    {"from": "always.out", "to": "sw2.in2"},
    {"from": "dead.out", "to": "sw2.in3"},
    {"from": "sw2.out", "to": "y"}
  ]
})";

Signal flat(std::vector<double> values, double dt = 1.0) {
    Signal s;
    s.dt = dt;
    s.duration = dt * static_cast<double>(values.size() - 1);
    s.values = std::move(values);
    return s;
}

int count_for_block(const std::vector<Mutant>& mutants, const std::string& id) {
    return static_cast<int>(std::count_if(mutants.begin(), mutants.end(),
                                          [&](const Mutant& m) {
                                              return m.block_id == id;
                                          }));
}

}  // namespace

TEST_CASE("three-input sum yields 9 mutants in the inclusive counting mode"
          * doctest::test_suite("mutation")) {
    const ModelGraph g = load_model(kSumOnlyModel);
    const auto inclusive = enumerate_mutants(g, SumCountingMode::include_original);
    CHECK(inclusive.size() == 9);  // 8 sign orders plus the product variant
    const auto strict = enumerate_mutants(g, SumCountingMode::exclude_original);
    CHECK(strict.size() == 8);  // the no-op sign vector is dropped

    // counting is deterministic
    const auto again = enumerate_mutants(g, SumCountingMode::include_original);
    REQUIRE(again.size() == inclusive.size());
    for (std::size_t i = 0; i < again.size(); ++i)
        CHECK(again[i].to_json() == inclusive[i].to_json());
}

TEST_CASE("model with no mutable blocks yields no mutants"
          * doctest::test_suite("mutation")) {
    const char* doc = R"({
      "name": "gains", "dt": 1.0, "duration": 2.0,
      "inports": [{"name": "u", "range": [0, 1], "control_points": 1}],
      "outports": ["y"],
      "blocks": [
        {"id": "g", "kind": "Gain", "params": {"factor": 3.0}},
        {"id": "a", "kind": "Abs", "params": {}}
      ],
      "connections": [
        {"from": "u", "to": "g.in1"},
        {"from": "g.out", "to": "a.in1"},
        {"from": "a.out", "to": "y"}
      ]
    })";
    CHECK(enumerate_mutants(load_model(doc)).empty());
}

TEST_CASE("every mutant touches exactly one block" * doctest::test_suite("mutation")) {
    const ModelGraph g = load_model(kGuardedModel);
    const auto mutants = enumerate_mutants(g);
    REQUIRE(!mutants.empty());
    const auto base = model_to_json(g);

    for (const Mutant& m : mutants) {
        const ModelGraph mutated = apply_mutant(g, m);
        const auto doc = model_to_json(mutated);

        int changed_blocks = 0;
        std::string changed_id;
        for (std::size_t b = 0; b < base["blocks"].size(); ++b) {
            if (base["blocks"][b] != doc["blocks"][b]) {
                ++changed_blocks;
                changed_id = base["blocks"][b]["id"].get<std::string>();
            }
        }
        int changed_connections = 0;
        for (std::size_t c = 0; c < base["connections"].size(); ++c)
            if (base["connections"][c] != doc["connections"][c]) ++changed_connections;

        const bool noop_sign =
            m.op == MutationOperator::sum_signs &&
            m.params.at("signs").get<std::string>() ==
                g.blocks[static_cast<std::size_t>(g.block_index(m.block_id))].signs;
        if (m.op == MutationOperator::switch_line_swap) {
            CHECK(changed_blocks == 0);
            CHECK(changed_connections == 2);  // in1 and in3 rewired
        } else if (noop_sign) {
            // the inclusive counting mode enumerates the original sign
            // vector too; it is exactly the mutant the never-killed filter
            // rule exists for
            CHECK(changed_blocks == 0);
        } else {
            CHECK(changed_blocks == 1);
            CHECK(changed_id == m.block_id);
            CHECK(changed_connections == 0);
        }
    }
}

TEST_CASE("relational swap family" * doctest::test_suite("mutation")) {
    const char* doc = R"({
      "name": "rel", "dt": 1.0, "duration": 2.0,
      "inports": [{"name": "u", "range": [0, 1], "control_points": 1}],
      "outports": ["y"],
      "blocks": [
        {"id": "k", "kind": "Constant", "params": {"value": 0.5}},
        {"id": "r", "kind": "RelationalOp", "params": {"op": ">="}}
      ],
      "connections": [
        {"from": "u", "to": "r.in1"},
        {"from": "k.out", "to": "r.in2"},
        {"from": "r.out", "to": "y"}
      ]
    })";
    const ModelGraph g = load_model(doc);
    const auto mutants = enumerate_mutants(g);
    // >= swaps to < and <=, per the fault-pattern table
    std::vector<std::string> rel_ops;
    for (const Mutant& m : mutants)
        if (m.op == MutationOperator::relational_swap)
            rel_ops.push_back(m.params.at("op").get<std::string>());
    CHECK(rel_ops == std::vector<std::string>{"<", "<="});
}

TEST_CASE("kills tolerance" * doctest::test_suite("mutation")) {
    SimulationTrace a, b;
    a.outputs = {flat({1.0, 2.0, 3.0})};
    b.outputs = {flat({1.0, 2.0, 3.0})};
    CHECK_FALSE(kills(a, b));

    b.outputs[0].values[1] = 3.0;  // one sample off by 1.0
    CHECK(kills(a, b));

    b.outputs[0].values[1] = 2.0 + 1e-15;  // below tolerance on unit magnitude
    CHECK_FALSE(kills(a, b));

    b.outputs[0].values.pop_back();
    CHECK_THROWS_AS(kills(a, b), ContractError);
}

TEST_CASE("probe filter drops never-killed, all-killed, and duplicates"
          * doctest::test_suite("mutation")) {
    const ModelGraph g = load_model(kGuardedModel);
    const auto mutants = enumerate_mutants(g);

    // the dead branch of sw2 exists and holds a mutable constant
    CHECK(count_for_block(mutants, "dead") == 1);
    const int dead_id = std::find_if(mutants.begin(), mutants.end(),
                                     [](const Mutant& m) {
                                         return m.block_id == "dead";
                                     })
                            ->id;

    Rng rng(2718);
    const FilterOutcome outcome = filter_mutants(mutants, g, 200, rng);
    CHECK(outcome.probe_count == 200);
    CHECK(outcome.original_count == static_cast<int>(mutants.size()));
    CHECK(outcome.dropped_never_killed > 0);
    CHECK(outcome.dropped_all_killed > 0);
    CHECK(outcome.dropped_duplicate > 0);
    CHECK(static_cast<int>(outcome.kept.size()) + outcome.dropped_all_killed +
              outcome.dropped_never_killed + outcome.dropped_duplicate ==
          outcome.original_count);

    // the never-killed mutant on the dead branch is gone
    for (const Mutant& m : outcome.kept) CHECK(m.id != dead_id);

    // guarded constant faults share a signature, so at most one of the
    // ca/cb change family survives
    int guarded_survivors = 0;
    for (const Mutant& m : outcome.kept)
        if (m.block_id == "ca" || m.block_id == "cb") ++guarded_survivors;
    CHECK(guarded_survivors == 1);

    // filtering an already filtered list with the same probes is the identity
    Rng rng2(2718);
    const FilterOutcome second = filter_mutants(outcome.kept, g, 200, rng2);
    REQUIRE(second.kept.size() == outcome.kept.size());
    for (std::size_t i = 0; i < second.kept.size(); ++i)
        CHECK(second.kept[i].id == outcome.kept[i].id);
}

TEST_CASE("mutation score arithmetic and monotonicity"
          * doctest::test_suite("mutation")) {
    const ModelGraph g = load_model(kGuardedModel);
    Rng filter_rng(99);
    const auto kept = filter_mutants(enumerate_mutants(g), g, 200, filter_rng).kept;
    REQUIRE(!kept.empty());

    Rng rng(7);
    const TestSuite suite = random_suite(g.inports, 6, rng);
    const KillMatrix km = compute_kill_matrix(suite, g, kept);
    int killed = 0;
    for (std::size_t m = 0; m < kept.size(); ++m) {
        bool any = false;
        for (std::size_t t = 0; t < suite.size(); ++t) any = any || km.cells[t][m];
        if (any) ++killed;
    }
    CHECK(mutation_score(suite, g, kept) ==
          doctest::Approx(static_cast<double>(killed) / kept.size()).epsilon(1e-12));

    CHECK(mutation_score({}, g, kept) == 0.0);
    CHECK_THROWS_AS(mutation_score(suite, g, {}), ContractError);

    // supersets never score lower
    for (int trial = 0; trial < 20; ++trial) {
        Rng trial_rng(1000 + trial);
        TestSuite small = random_suite(g.inports, 2, trial_rng);
        TestSuite big = small;
        const TestSuite extra = random_suite(g.inports, 3, trial_rng);
        big.insert(big.end(), extra.begin(), extra.end());
        CHECK(mutation_score(big, g, kept) >= mutation_score(small, g, kept));
    }

    // determinism for a fixed seed and suite
    CHECK(mutation_score(suite, g, kept) == mutation_score(suite, g, kept));
}

TEST_CASE("kill matrix CSV shape" * doctest::test_suite("mutation")) {
    const ModelGraph g = load_model(kSumOnlyModel);
    const auto mutants = enumerate_mutants(g, SumCountingMode::exclude_original);
    Rng rng(4);
    const TestSuite suite = random_suite(g.inports, 3, rng);
    const KillMatrix km = compute_kill_matrix(suite, g, mutants);
    CHECK(km.tests() == 3);
    CHECK(km.mutants() == mutants.size());
    const std::string csv = km.to_csv(mutants);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);  // header + 3 rows
    CHECK(csv.rfind("test,", 0) == 0);
}

TEST_CASE("mutant JSON round trip" * doctest::test_suite("mutation")) {
    const ModelGraph g = load_model(kGuardedModel);
    const auto mutants = enumerate_mutants(g);
    const auto back = mutants_from_json(mutants_to_json(mutants));
    REQUIRE(back.size() == mutants.size());
    for (std::size_t i = 0; i < back.size(); ++i) {
        CHECK(back[i].id == mutants[i].id);
        CHECK(back[i].block_id == mutants[i].block_id);
        CHECK(back[i].op == mutants[i].op);
        CHECK(back[i].params == mutants[i].params);
    }
    // a reloaded mutant still applies cleanly
    const ModelGraph mutated = apply_mutant(g, back.front());
    CHECK(mutated.name == g.name);
}
