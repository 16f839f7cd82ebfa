// Acceptance suite: one self-contained check per criterion, one PASS/FAIL
// line each. Run with no arguments for everything, or name criteria to run
// a subset (as the ctest entries do). Exits non-zero if anything fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <vector>

#include "tgen/antipatterns.hpp"
#include "tgen/baselines.hpp"
#include "tgen/domination.hpp"
#include "tgen/experiment.hpp"
#include "tgen/genclu.hpp"
#include "tgen/model.hpp"
#include "tgen/mutation.hpp"
#include "tgen/rng.hpp"
#include "tgen/stats.hpp"

using namespace tgen;

namespace {

int g_failures = 0;
std::vector<std::string> g_notes;

void expect(bool ok, const std::string& what) {
    if (!ok) {
        ++g_failures;
        if (std::find(g_notes.begin(), g_notes.end(), what) == g_notes.end())
            g_notes.push_back(what);
    }
}

std::string models_dir() { return TGEN_MODELS_DIR; }

Signal sig_of(std::vector<double> values, double dt) {
    Signal s;
    s.dt = dt;
    s.duration = dt * static_cast<double>(values.size() - 1);
    s.values = std::move(values);
    return s;
}

// ---------------------------------------------------------------------------
// naive single-purpose references, independent of the library implementations

double ref_discontinuity(const Signal& s) {
    const int k = static_cast<int>(s.values.size()) - 1;
    double best = 0.0;
    for (int dt = 1; dt <= 3; ++dt)
        for (int j = dt; j <= k - dt; ++j) {
            const double lc = std::fabs(s.values[j] - s.values[j - dt]) / s.dt;
            const double rc = std::fabs(s.values[j + dt] - s.values[j]) / s.dt;
            best = std::max(best, std::min(lc, rc));
        }
    return best;
}

double ref_instability(const Signal& s) {
    double sum = 0.0;
    for (std::size_t j = 1; j < s.values.size(); ++j)
        sum += std::fabs(s.values[j] - s.values[j - 1]);
    return sum;
}

double ref_growth(const Signal& s) {
    double best = 0.0;
    for (std::size_t j = 1; j < s.values.size(); ++j)
        best = std::max(best, std::fabs(s.values[j]));
    return best;
}

double ref_minmax(const Signal& s) {
    double lo = s.values[1], hi = s.values[1];
    for (std::size_t j = 2; j < s.values.size(); ++j) {
        lo = std::min(lo, s.values[j]);
        hi = std::max(hi, s.values[j]);
    }
    return std::fabs(hi - lo);
}

// ---------------------------------------------------------------------------

bool criterion_metric_oracle() {
    Rng rng(90210);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t len = 3 + rng.index(48);  // <= 50 samples
        const double dt = rng.index(2) == 0 ? 0.1 : 1.0;
        std::vector<double> v(len);
        for (double& x : v) x = rng.uniform(-100, 100);
        const Signal s = sig_of(std::move(v), dt);
        expect(std::fabs(discontinuity(s) - ref_discontinuity(s)) <= 1e-12,
               "discontinuity differs from the naive reference");
        expect(std::fabs(instability(s) - ref_instability(s)) <= 1e-12,
               "instability differs from the naive reference");
        expect(std::fabs(growth_to_infinity(s) - ref_growth(s)) <= 1e-12,
               "growth_to_infinity differs from the naive reference");
        expect(std::fabs(minmax(s) - ref_minmax(s)) <= 1e-12,
               "minmax differs from the naive reference");
    }
    expect(discontinuity(sig_of({0, 0, 5, 0, 0}, 1.0)) == 5.0,
           "dis([0,0,5,0,0]) must be exactly 5");
    expect(instability(sig_of({0, 1, 0, 1}, 1.0)) == 3.0,
           "ins([0,1,0,1]) must be exactly 3");
    return g_failures == 0;
}

bool criterion_domination_consistency() {
    Rng rng(777);
    long dominated = 0;
    for (int trial = 0; trial < 10000; ++trial) {
        const std::size_t n = 2 + rng.index(7);  // 2..8 goals
        std::vector<double> weights(n);
        for (double& w : weights) w = rng.index(2) == 0 ? 1.0 : -1.0;
        GoalVector a(n), b(n);
        for (std::size_t i = 0; i < n; ++i) {
            a[i] = rng.uniform(-5, 5);
            b[i] = rng.index(5) == 0 ? a[i] : rng.uniform(-5, 5);
        }
        const std::vector<GoalVector> pop = {a, b};
        const auto ctx = DominationContext::for_population(pop, weights);
        const bool ab = better(a, b, ctx), ba = better(b, a, ctx);
        expect(!(ab && ba), "better must be antisymmetric");
        expect(!better(a, a, ctx) && !binary_dominates(a, a, ctx),
               "better/dominates must be irreflexive");
        if (binary_dominates(a, b, ctx)) {
            ++dominated;
            expect(ab, "binary dominance must imply continuous-domination better");
        }
    }
    expect(dominated > 200, "random pairs exercised too few dominated cases");
    return g_failures == 0;
}

bool criterion_split_cluster() {
    Rng gen(5150);
    for (int m : {3, 4, 5, 9, 17, 50, 128, 177, 300}) {
        const std::size_t dims = 1 + gen.index(12);
        std::vector<std::vector<double>> pts;
        for (int i = 0; i < m; ++i) {
            std::vector<double> p(dims);
            for (double& x : p) x = gen.uniform();
            pts.push_back(std::move(p));
        }
        std::vector<int> members(static_cast<std::size_t>(m));
        std::iota(members.begin(), members.end(), 0);
        Rng rng(static_cast<std::uint64_t>(m));
        const SplitResult split = fastmap_split(pts, members, rng);
        expect(split.east_items.size() == static_cast<std::size_t>(m / 2),
               "east half must hold floor(m/2) members");
        expect(split.west_items.size() == static_cast<std::size_t>(m - m / 2),
               "west half must hold ceil(m/2) members");
        expect(split.distance_evals <= 4L * m,
               "a split may use at most 4m distance evaluations");

        ClusterStats stats;
        Rng rng2(static_cast<std::uint64_t>(m) + 1);
        const auto tree = cluster(pts, 4, rng2, &stats);
        for (const auto& [size, evals] : stats.per_split)
            expect(evals <= 4L * size, "per-split distance budget exceeded");
        std::set<int> seen;
        std::size_t total = 0;
        for (const ClusterNode* leaf : collect_leaves(*tree)) {
            total += leaf->members.size();
            for (int idx : leaf->members)
                expect(seen.insert(idx).second, "leaves must be disjoint");
        }
        expect(total == static_cast<std::size_t>(m),
               "leaves must cover the whole population");
    }

    // 256 samples at enough=4: exactly 64 leaves, one simulation each
    const ModelGraph model = load_model_file(models_dir() + "/tiny_controller.json");
    GenCluConfig config;
    config.initial_samples = 256;
    config.enough = 4;
    config.seed = 1;
    CaseSimulator sim = CaseSimulator::for_model(model);
    Rng rng(config.seed);
    const auto res = generate_suite(model, config, sim, rng);
    expect(res.report.leaves == 64, "256/enough=4 must produce 64 leaves");
    expect(res.report.simulations == 64, "one representative simulation per leaf");
    expect(sim.count() == 64, "budget report must match the simulator counter");
    return g_failures == 0;
}

bool criterion_mutation_engine() {
    const char* sum_model = R"({
      "name": "sum_only", "dt": 1.0, "duration": 3.0,
      "inports": [
        {"name": "a", "range": [-10, 10], "control_points": 2},
        {"name": "b", "range": [-10, 10], "control_points": 2},
        {"name": "c", "range": [-10, 10], "control_points": 2}
      ],
      "outports": ["y"],
      "blocks": [{"id": "s", "kind": "Sum", "params": {"signs": "++-"}}],
      "connections": [
        {"from": "a", "to": "s.in1"}, {"from": "b", "to": "s.in2"},
        {"from": "c", "to": "s.in3"}, {"from": "s.out", "to": "y"}
      ]
    })";
    const ModelGraph sums = load_model(sum_model);
    expect(enumerate_mutants(sums, SumCountingMode::include_original).size() == 9,
           "3-input sum must yield 9 mutants in the default counting mode");
    expect(enumerate_mutants(sums, SumCountingMode::exclude_original).size() == 8,
           "3-input sum must yield 8 mutants when the original is excluded");

    // monotonicity on the bundled tiny model
    const ModelGraph tiny = load_model_file(models_dir() + "/tiny_controller.json");
    Rng filter_rng(42);
    const auto kept = filter_mutants(enumerate_mutants(tiny), tiny, 200, filter_rng).kept;
    expect(!kept.empty(), "tiny model must keep some filtered mutants");
    for (int trial = 0; trial < 100; ++trial) {
        Rng rng(9000 + trial);
        TestSuite small = random_suite(tiny.inports, 2, rng);
        TestSuite big = small;
        const TestSuite extra = random_suite(tiny.inports, 3, rng);
        big.insert(big.end(), extra.begin(), extra.end());
        expect(mutation_score(big, tiny, kept) >= mutation_score(small, tiny, kept),
               "a superset suite must never score lower");
    }

    // a never-killed mutant (dead switch branch) and a duplicate-signature
    // pair (two constants behind the same guard) both fall to the filter
    const char* guarded = R"({
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
        {"id": "gate", "kind": "RelationalOp", "params": {"op": ">="}},
        {"id": "sw", "kind": "Switch", "params": {"threshold": 0.5}},
        {"id": "on", "kind": "Constant", "params": {"value": 1.0}},
        {"id": "dead", "kind": "Constant", "params": {"value": 0.0}},
        {"id": "sw2", "kind": "Switch", "params": {"threshold": 0.5}}
      ],
      "connections": [
        {"from": "ca.out", "to": "add.in1"}, {"from": "cb.out", "to": "add.in2"},
        {"from": "u", "to": "gate.in1"}, {"from": "w", "to": "gate.in2"},
        {"from": "add.out", "to": "sw.in1"}, {"from": "gate.out", "to": "sw.in2"},
        {"from": "u", "to": "sw.in3"},
        {"from": "sw.out", "to": "sw2.in1"}, {"from": "on.out", "to": "sw2.in2"},
        {"from": "dead.out", "to": "sw2.in3"},
        {"from": "sw2.out", "to": "y"}
      ]
    })";
    const ModelGraph g = load_model(guarded);
    const auto mutants = enumerate_mutants(g);
    Rng rng(2718);
    const auto outcome = filter_mutants(mutants, g, 200, rng);
    expect(outcome.dropped_never_killed > 0,
           "the dead-branch constant must be filtered as never killed");
    expect(outcome.dropped_duplicate > 0,
           "guard-sharing constants must be deduplicated by kill signature");
    for (const Mutant& m : outcome.kept)
        expect(m.block_id != "dead", "no mutant of the dead branch may survive");
    int guard_family = 0;
    for (const Mutant& m : outcome.kept)
        if (m.block_id == "ca" || m.block_id == "cb") ++guard_family;
    expect(guard_family <= 1, "at most one of the duplicate family may survive");
    return g_failures == 0;
}

bool criterion_stats_fixtures() {
    const std::vector<double> low = {1, 2, 3}, high = {4, 5, 6};
    expect(cliffs_delta(low, high) == -1.0, "cliffs_delta([1,2,3],[4,5,6]) must be -1");
    expect(cliffs_delta(high, low) == 1.0, "cliffs_delta([4,5,6],[1,2,3]) must be +1");

    const auto two = scott_knott({{"A", {1, 1, 1}}, {"B", {5, 5, 5}}});
    expect(two.size() == 2 && two[0].rank == 1 && two[1].rank == 2,
           "clearly separated groups must land in two ranks");
    const auto one = scott_knott({{"A", {1, 1, 1}}, {"B", {1, 1, 1}}});
    expect(one.size() == 2 && one[0].rank == 1 && one[1].rank == 1,
           "identical groups must share one rank");

    const std::vector<double> c1 = {1, 2}, c2 = {9, 10};
    expect(split_gain(c1, c2) == 4.0, "split gain of [1,2]|[9,10] must be exactly 4");
    return g_failures == 0;
}

bool criterion_trend_reproduction() {
    ExperimentConfig config;
    config.model_paths = {
        models_dir() + "/tiny_controller.json", models_dir() + "/twotank_level.json",
        models_dir() + "/cruise_speed.json", models_dir() + "/clutch_lockup.json",
        models_dir() + "/window_lift.json"};
    config.generators = {"random", "epicurus", "genclu"};
    config.suite_sizes = {4, 16};
    config.repeats = 20;
    config.master_seed = 1;
    config.output_dir = "/tmp/tgen_acceptance_trend";
    std::filesystem::remove_all(config.output_dir);

    const auto out = run_experiment(config);

    std::vector<std::string> rich;  // models with >= 10 filtered mutants
    for (const auto& m : out.models) {
        std::cout << "    " << m.name << ": mutants " << m.original_mutants << " -> "
                  << m.filtered_mutants << "\n";
        if (m.filtered_mutants >= 10) rich.push_back(m.name);
    }
    expect(rich.size() >= 3, "need at least three models with >= 10 filtered mutants");

    auto scores = [&](const std::string& model, const std::string& gen, int size) {
        std::vector<double> v;
        for (const auto& r : out.records)
            if (r.model == model && r.generator == gen && r.suite_size == size &&
                r.status == "ok")
                v.push_back(r.mutation_score);
        return v;
    };

    for (const std::string& model : rich) {
        const double genclu_med = median(scores(model, "genclu", 4));
        const double random_med = median(scores(model, "random", 4));
        std::cout << "    " << model << " size 4: genclu median " << genclu_med
                  << ", random median " << random_med << "\n";
        expect(genclu_med >= random_med,
               model + ": genclu median must not trail random at size 4");

        const auto ranked = scott_knott({{"random", scores(model, "random", 4)},
                                         {"epicurus", scores(model, "epicurus", 4)},
                                         {"genclu", scores(model, "genclu", 4)}});
        int genclu_rank = 0, random_rank = 0;
        for (const auto& r : ranked) {
            if (r.name == "genclu") genclu_rank = r.rank;
            if (r.name == "random") random_rank = r.rank;
        }
        expect(genclu_rank <= random_rank,
               model + ": genclu's Scott-Knott rank must not be worse than random's");
    }

    for (const auto& m : out.models) {
        const double med16 = median(scores(m.name, "genclu", 16));
        std::cout << "    " << m.name << " size 16: genclu median " << med16 << "\n";
        expect(med16 >= 0.9, m.name + ": genclu median at size 16 must reach 0.9");
    }

    // budget direction: per repeat, the cluster pipeline runs strictly fewer
    // simulations than the iterative range-narrowing baseline
    for (const auto& m : out.models) {
        for (int rep = 0; rep < config.repeats; ++rep) {
            long genclu_total = -1, epicurus_total = -1;
            for (const auto& r : out.records) {
                if (r.model != m.name || r.suite_size != 4 || r.repeat != rep ||
                    r.status != "ok")
                    continue;
                if (r.generator == "genclu")
                    genclu_total = r.generation_sims + r.scoring_sims;
                if (r.generator == "epicurus")
                    epicurus_total = r.generation_sims + r.scoring_sims;
            }
            expect(genclu_total > 0 && epicurus_total > 0,
                   m.name + ": both budget records must exist");
            expect(genclu_total < epicurus_total,
                   m.name + ": genclu must spend strictly fewer simulations");
        }
    }
    return g_failures == 0;
}

bool criterion_determinism() {
    ExperimentConfig config;
    config.model_paths = {models_dir() + "/tiny_controller.json",
                          models_dir() + "/cruise_speed.json"};
    config.generators = {"random", "genclu"};
    config.suite_sizes = {4};
    config.repeats = 5;
    config.master_seed = 20240601;
    config.params.probe_count = 80;

    auto run_into = [&](const std::string& dir) {
        std::filesystem::remove_all(dir);
        config.output_dir = dir;
        run_experiment(config);
        std::ifstream in(dir + "/records.csv", std::ios::binary);
        std::stringstream buf;
        buf << in.rdbuf();
        return buf.str();
    };
    const std::string a = run_into("/tmp/tgen_acceptance_det1");
    const std::string b = run_into("/tmp/tgen_acceptance_det2");
    expect(!a.empty(), "records.csv must not be empty");
    expect(a == b, "two runs with one master seed must emit identical records.csv");
    return g_failures == 0;
}

struct Criterion {
    const char* name;
    double budget_seconds;
    std::function<bool()> run;
};

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> criteria = {
        {"metric_oracle", 5.0, criterion_metric_oracle},
        {"domination_consistency", 5.0, criterion_domination_consistency},
        {"split_cluster", 10.0, criterion_split_cluster},
        {"mutation_engine", 60.0, criterion_mutation_engine},
        {"stats_fixtures", 1.0, criterion_stats_fixtures},
        {"trend_reproduction", 600.0, criterion_trend_reproduction},
        {"determinism", 600.0, criterion_determinism},
    };

    std::vector<std::string> wanted;
    for (int i = 1; i < argc; ++i) wanted.emplace_back(argv[i]);

    int failed = 0, ran = 0;
    for (const Criterion& c : criteria) {
        if (!wanted.empty() &&
            std::find(wanted.begin(), wanted.end(), c.name) == wanted.end())
            continue;
        ++ran;
        g_failures = 0;
        g_notes.clear();
        const auto start = std::chrono::steady_clock::now();
        bool ok = false;
        try {
            ok = c.run();
        } catch (const std::exception& e) {
            g_notes.push_back(std::string("exception: ") + e.what());
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        if (elapsed > c.budget_seconds) {
            ok = false;
            g_notes.push_back("exceeded the runtime budget of " +
                              std::to_string(c.budget_seconds) + " s");
        }
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << c.name << "  ("
                  << static_cast<int>(elapsed * 1000) << " ms)\n";
        for (const std::string& note : g_notes) std::cout << "       - " << note << "\n";
        if (!ok) ++failed;
    }

    if (ran == 0) {
        std::cerr << "no matching criterion; known:";
        for (const Criterion& c : criteria) std::cerr << " " << c.name;
        std::cerr << "\n";
        return 2;
    }
    return failed == 0 ? 0 : 1;
}
