// tgen: test-generation workbench for discrete-time block-diagram models.
//
// Subcommands:
//   simulate <model> <testcase>    run one test case, print the trace
//   mutants prepare <model>        enumerate + probe-filter mutants
//   generate <model> --algo ...    emit a test suite with a budget record
//   score <model> <suite>          mutation score against prepared mutants
//   experiment <config>            full models x generators x sizes x repeats
//   stats <records.csv>            Scott-Knott rank table per model/size

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "tgen/antipatterns.hpp"
#include "tgen/baselines.hpp"
#include "tgen/errors.hpp"
#include "tgen/experiment.hpp"
#include "tgen/genclu.hpp"
#include "tgen/model.hpp"
#include "tgen/mutation.hpp"
#include "tgen/stats.hpp"

namespace {

nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw tgen::ConfigError("cannot open '" + path + "'");
    nlohmann::json j;
    in >> j;
    return j;
}

void write_or_print(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << "\n";
    } else {
        std::ofstream out(out_path);
        out << text;
    }
}

nlohmann::json trace_to_json(const tgen::ModelGraph& model,
                             const tgen::SimulationTrace& trace) {
    nlohmann::json outputs = nlohmann::json::object();
    for (std::size_t o = 0; o < model.outports.size(); ++o)
        outputs[model.outports[o]] = trace.outputs[o].values;
    nlohmann::json coverage = nlohmann::json::array();
    for (const auto& [block, tag] : trace.coverage)
        coverage.push_back(block + ":" + tag);
    nlohmann::json j = {{"model", model.name},
                        {"outputs", outputs},
                        {"coverage", coverage},
                        {"goals", tgen::goal_vector(trace)}};
    if (trace.fault)
        j["fault"] = {{"step", trace.fault->step}, {"block", trace.fault->block_id}};
    return j;
}

int cmd_simulate(const std::string& model_path, const std::string& case_path,
                 const std::string& out_path) {
    const tgen::ModelGraph model = tgen::load_model_file(model_path);
    const tgen::TestCase tc =
        tgen::test_case_from_json(read_json_file(case_path), model.inports);
    const auto trace = tgen::simulate(model, tgen::render_inputs(model, tc));
    write_or_print(out_path, trace_to_json(model, trace).dump(2));
    return 0;
}

int cmd_mutants_prepare(const std::string& model_path, std::uint64_t seed,
                        int probes, const std::string& out_dir) {
    const auto prep = tgen::prepare_mutants(model_path, seed, probes, out_dir);
    const auto& s = prep.summary;
    const double pct = s.original_mutants == 0
                           ? 0.0
                           : 100.0 * s.filtered_mutants / s.original_mutants;
    std::cout << s.name << ": " << s.original_mutants << " -> " << s.filtered_mutants
              << " (" << static_cast<int>(pct + 0.5) << "%)\n"
              << "written to " << prep.json_path << "\n";
    return 0;
}

int cmd_generate(const std::string& model_path, const std::string& algo, int size,
                 std::uint64_t seed, const tgen::GeneratorParams& params,
                 const std::string& out_path) {
    const tgen::ModelGraph model = tgen::load_model_file(model_path);
    tgen::Rng rng(seed);
    tgen::CaseSimulator sim = tgen::CaseSimulator::for_model(model);

    tgen::TestSuite suite;
    nlohmann::json budget = {{"seed", seed}};
    if (algo == "random") {
        suite = tgen::random_suite(model.inports, size, rng);
        budget["simulations"] = 0;
    } else if (algo == "genclu") {
        tgen::GenCluConfig config;
        config.initial_samples = params.genclu_initial_samples;
        config.enough = size;
        config.seed = seed;
        const auto res = tgen::generate_suite(model, config, sim, rng);
        suite = res.suite;
        budget = res.report.to_json();
    } else if (algo == "epicurus") {
        tgen::EpicurusConfig config;
        config.iterations = params.epicurus_iterations;
        config.min_leaf = params.epicurus_min_leaf;
        const auto res = tgen::epicurus_suite(model, size, config, sim, rng);
        suite = res.suite;
        budget["simulations"] = res.simulations;
        budget["narrowed_ranges"] = res.ranges.to_json(model.inports);
    } else if (algo == "od") {
        tgen::ODConfig config;
        config.timeout_seconds = params.od_timeout_seconds * params.od_timeout_scale;
        config.max_iterations = params.od_max_iterations;
        const auto res = tgen::od_suite(model, size, config, sim, rng);
        suite = res.suite;
        budget["simulations"] = res.simulations;
        budget["iterations"] = res.iterations;
        budget["pieces"] = res.pieces;
        budget["best_objective"] = res.best_objective;
    } else {
        std::cerr << "unknown algorithm '" << algo << "'\n";
        return 2;
    }

    nlohmann::json doc = {{"model", model.name},
                          {"algo", algo},
                          {"tests", tgen::suite_to_json(suite, model.inports)},
                          {"budget", budget}};
    write_or_print(out_path, doc.dump(2));
    return 0;
}

int cmd_score(const std::string& model_path, const std::string& suite_path,
              const std::string& mutants_path, const std::string& kill_matrix_path) {
    const tgen::ModelGraph model = tgen::load_model_file(model_path);

    std::string mpath = mutants_path;
    if (mpath.empty()) mpath = "out/mutants/" + model.name + ".json";
    const auto mdoc = read_json_file(mpath);
    const auto mutants = tgen::mutants_from_json(mdoc.at("mutants"));
    if (mutants.empty()) {
        std::cerr << "no mutants in " << mpath << "\n";
        return 2;
    }

    const auto sdoc = read_json_file(suite_path);
    const auto& tests = sdoc.contains("tests") ? sdoc["tests"] : sdoc;
    const tgen::TestSuite suite = tgen::suite_from_json(tests, model.inports);

    if (!kill_matrix_path.empty()) {
        const auto km = tgen::compute_kill_matrix(suite, model, mutants);
        std::ofstream out(kill_matrix_path);
        out << km.to_csv(mutants);
    }
    const double score = tgen::mutation_score(suite, model, mutants);
    std::cout << score << "\n";
    return 0;
}

int cmd_experiment(const std::string& config_path) {
    const auto config = tgen::ExperimentConfig::from_file(config_path);
    const auto output = tgen::run_experiment(config);
    int ok = 0, skipped = 0, failed = 0;
    for (const auto& r : output.records) {
        if (r.status == "ok") ++ok;
        if (r.status == "skipped") ++skipped;
        if (r.status == "failed") ++failed;
    }
    std::cout << "records: " << output.records.size() << " (" << ok << " ok, "
              << skipped << " skipped, " << failed << " failed)\n"
              << "wrote " << output.records_csv_path << "\n"
              << "wrote " << output.timings_csv_path << "\n"
              << "wrote " << output.summary_path << "\n";
    return failed == 0 ? 0 : 1;
}

int cmd_stats(const std::string& records_path, const std::string& out_path) {
    std::ifstream in(records_path);
    if (!in) {
        std::cerr << "cannot open '" << records_path << "'\n";
        return 2;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    const auto records = tgen::records_from_csv(buf.str());
    write_or_print(out_path, tgen::rank_report_csv(records));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"test-generation workbench for block-diagram models"};
    app.require_subcommand(1);

    std::string model_path, case_path, suite_path, config_path, records_path;
    std::string out_path, mutants_path, kill_matrix_path;
    std::string out_dir = "out", algo = "genclu";
    std::uint64_t seed = 1;
    int size = 4, probes = 200;
    tgen::GeneratorParams params;

    auto* sim = app.add_subcommand("simulate", "simulate one test case");
    sim->add_option("model", model_path)->required();
    sim->add_option("testcase", case_path)->required();
    sim->add_option("--out", out_path);

    auto* mutants = app.add_subcommand("mutants", "mutant management");
    auto* prepare = mutants->add_subcommand("prepare", "enumerate and filter mutants");
    prepare->add_option("model", model_path)->required();
    prepare->add_option("--seed", seed);
    prepare->add_option("--probes", probes);
    prepare->add_option("--out-dir", out_dir);

    auto* gen = app.add_subcommand("generate", "generate a test suite");
    gen->add_option("model", model_path)->required();
    gen->add_option("--algo", algo)
        ->check(CLI::IsMember({"random", "epicurus", "od", "genclu"}));
    gen->add_option("--size", size);
    gen->add_option("--seed", seed);
    gen->add_option("--initial-samples", params.genclu_initial_samples);
    gen->add_option("--iterations", params.epicurus_iterations);
    gen->add_option("--od-timeout", params.od_timeout_seconds);
    gen->add_option("--od-timeout-scale", params.od_timeout_scale);
    gen->add_option("--od-max-iters", params.od_max_iterations);
    gen->add_option("--out", out_path);

    auto* score = app.add_subcommand("score", "mutation score of a suite");
    score->add_option("model", model_path)->required();
    score->add_option("suite", suite_path)->required();
    score->add_option("--mutants", mutants_path);
    score->add_option("--kill-matrix", kill_matrix_path,
                      "also write the test x mutant detection table (CSV)");

    auto* exp = app.add_subcommand("experiment", "run the full experiment");
    exp->add_option("config", config_path)->required();

    auto* st = app.add_subcommand("stats", "Scott-Knott ranks from records.csv");
    st->add_option("records", records_path)->required();
    st->add_option("--out", out_path);

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) return cmd_simulate(model_path, case_path, out_path);
        if (mutants->parsed() && prepare->parsed())
            return cmd_mutants_prepare(model_path, seed, probes, out_dir);
        if (gen->parsed())
            return cmd_generate(model_path, algo, size, seed, params, out_path);
        if (score->parsed())
            return cmd_score(model_path, suite_path, mutants_path, kill_matrix_path);
        if (exp->parsed()) return cmd_experiment(config_path);
        if (st->parsed()) return cmd_stats(records_path, out_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
