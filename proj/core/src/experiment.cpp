#include "tgen/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <thread>

#include "tgen/baselines.hpp"
#include "tgen/errors.hpp"
#include "tgen/genclu.hpp"

namespace tgen {

namespace fs = std::filesystem;

// --- config ------------------------------------------------------------------

void ExperimentConfig::validate() const {
    if (model_paths.empty()) throw ConfigError("experiment config lists no models");
    if (generators.empty()) throw ConfigError("experiment config lists no generators");
    for (const std::string& g : generators)
        if (g != "random" && g != "epicurus" && g != "od" && g != "genclu")
            throw ConfigError("unknown generator '" + g + "'");
    if (repeats < 1) throw ConfigError("repeats must be >= 1");
    for (int s : suite_sizes)
        if (s < 1) throw ConfigError("suite sizes must be positive");
    if (suite_sizes.empty()) throw ConfigError("experiment config lists no suite sizes");
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
    ExperimentConfig c;
    c.model_paths = j.at("models").get<std::vector<std::string>>();
    if (j.contains("generators"))
        c.generators = j["generators"].get<std::vector<std::string>>();
    if (j.contains("suite_sizes"))
        c.suite_sizes = j["suite_sizes"].get<std::vector<int>>();
    c.repeats = j.value("repeats", 20);
    c.master_seed = j.value("master_seed", std::uint64_t{1});
    c.output_dir = j.value("output_dir", "out");
    c.workers = j.value("workers", 0);
    if (j.contains("params")) {
        const auto& p = j["params"];
        c.params.epicurus_iterations =
            p.value("epicurus_iterations", c.params.epicurus_iterations);
        c.params.epicurus_min_leaf =
            p.value("epicurus_min_leaf", c.params.epicurus_min_leaf);
        c.params.od_timeout_seconds =
            p.value("od_timeout_seconds", c.params.od_timeout_seconds);
        c.params.od_timeout_scale =
            p.value("od_timeout_scale", c.params.od_timeout_scale);
        c.params.od_max_iterations =
            p.value("od_max_iterations", c.params.od_max_iterations);
        c.params.genclu_initial_samples =
            p.value("genclu_initial_samples", c.params.genclu_initial_samples);
        c.params.scoring_suites = p.value("scoring_suites", c.params.scoring_suites);
        c.params.probe_count = p.value("probe_count", c.params.probe_count);
    }
    c.validate();
    return c;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open experiment config '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("experiment config is not valid JSON: " + std::string(e.what()));
    }
    return from_json(j);
}

nlohmann::json ExperimentConfig::to_json() const {
    return {{"models", model_paths},
            {"generators", generators},
            {"suite_sizes", suite_sizes},
            {"repeats", repeats},
            {"master_seed", master_seed},
            {"output_dir", output_dir},
            {"workers", workers},
            {"params",
             {{"epicurus_iterations", params.epicurus_iterations},
              {"epicurus_min_leaf", params.epicurus_min_leaf},
              {"od_timeout_seconds", params.od_timeout_seconds},
              {"od_timeout_scale", params.od_timeout_scale},
              {"od_max_iterations", params.od_max_iterations},
              {"genclu_initial_samples", params.genclu_initial_samples},
              {"scoring_suites", params.scoring_suites},
              {"probe_count", params.probe_count}}}};
}

std::uint64_t record_seed(std::uint64_t master, const std::string& model,
                          const std::string& generator, int size, int repeat) {
    return derive_seed(master, model + "|" + generator + "|" + std::to_string(size) +
                                   "|" + std::to_string(repeat));
}

// --- CSV ---------------------------------------------------------------------

namespace {

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(std::move(cur));
    return fields;
}

}  // namespace

std::string records_to_csv(const std::vector<ExperimentRecord>& records) {
    std::ostringstream os;
    os << "model,generator,suite_size,repeat,seed,status,mutation_score,"
          "generation_sims,scoring_sims,mutant_sims\n";
    for (const ExperimentRecord& r : records) {
        os << csv_escape(r.model) << "," << r.generator << "," << r.suite_size << ","
           << r.repeat << "," << r.seed << "," << r.status << ","
           << (r.status == "ok" ? format_double(r.mutation_score) : "") << ","
           << r.generation_sims << "," << r.scoring_sims << "," << r.mutant_sims
           << "\n";
    }
    return os.str();
}

std::string timings_to_csv(const std::vector<ExperimentRecord>& records) {
    std::ostringstream os;
    os << "model,generator,suite_size,repeat,generation_seconds,scoring_seconds,"
          "total_seconds\n";
    for (const ExperimentRecord& r : records) {
        os << csv_escape(r.model) << "," << r.generator << "," << r.suite_size << ","
           << r.repeat << "," << format_double(r.generation_seconds) << ","
           << format_double(r.scoring_seconds) << ","
           << format_double(r.generation_seconds + r.scoring_seconds) << "\n";
    }
    return os.str();
}

std::vector<ExperimentRecord> records_from_csv(const std::string& csv) {
    std::vector<ExperimentRecord> records;
    std::istringstream in(csv);
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (header) {
            header = false;
            continue;
        }
        const auto f = split_csv_line(line);
        if (f.size() < 10) throw ConfigError("records CSV row with too few fields");
        ExperimentRecord r;
        r.model = f[0];
        r.generator = f[1];
        r.suite_size = std::stoi(f[2]);
        r.repeat = std::stoi(f[3]);
        r.seed = std::stoull(f[4]);
        r.status = f[5];
        r.mutation_score = f[6].empty() ? 0.0 : std::stod(f[6]);
        r.generation_sims = std::stol(f[7]);
        r.scoring_sims = std::stol(f[8]);
        r.mutant_sims = std::stol(f[9]);
        records.push_back(std::move(r));
    }
    return records;
}

// --- mutant preparation --------------------------------------------------------

PreparedMutants prepare_mutants(const std::string& model_path, std::uint64_t seed,
                                int probe_count, const std::string& out_dir) {
    const ModelGraph graph = load_model_file(model_path);
    const std::vector<Mutant> all = enumerate_mutants(graph);

    PreparedMutants prep;
    prep.summary.name = graph.name;
    prep.summary.path = model_path;
    prep.summary.blocks = static_cast<int>(graph.blocks.size());
    prep.summary.inports = static_cast<int>(graph.inports.size());
    prep.summary.outports = static_cast<int>(graph.outports.size());
    prep.summary.original_mutants = static_cast<int>(all.size());

    FilterOutcome outcome;
    if (!all.empty()) {
        Rng rng(derive_seed(seed, "mutant-filter|" + graph.name));
        outcome = filter_mutants(all, graph, probe_count, rng);
    }
    prep.mutants = outcome.kept;
    prep.summary.filtered_mutants = static_cast<int>(outcome.kept.size());

    const fs::path dir = fs::path(out_dir) / "mutants";
    fs::create_directories(dir);
    const fs::path json_path = dir / (graph.name + ".json");

    const double percent =
        all.empty() ? 0.0
                    : std::round(1000.0 * static_cast<double>(outcome.kept.size()) /
                                 static_cast<double>(all.size())) /
                          1000.0;
    nlohmann::json doc = {
        {"model", graph.name},
        {"seed", seed},
        {"probe_count", probe_count},
        {"original_count", all.size()},
        {"filtered_count", outcome.kept.size()},
        {"filtered_percent", percent},
        {"dropped",
         {{"all_killed", outcome.dropped_all_killed},
          {"never_killed", outcome.dropped_never_killed},
          {"duplicate_signature", outcome.dropped_duplicate}}},
        {"mutants", mutants_to_json(outcome.kept)},
    };
    std::ofstream out(json_path);
    out << doc.dump(2) << "\n";
    prep.json_path = json_path.string();

    if (outcome.kept.empty()) {
        std::ofstream warn(dir / (graph.name + ".warning.txt"));
        warn << "model '" << graph.name << "': no mutants survived the "
             << probe_count << "-probe filter (" << all.size()
             << " enumerated)\n";
    }
    return prep;
}

// --- experiment runner ---------------------------------------------------------

namespace {

int resolve_workers(int configured) {
    if (const char* env = std::getenv("TGEN_WORKERS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    if (configured > 0) return configured;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(std::min(hw, 8u));
}

void run_parallel(int workers, std::size_t n,
                  const std::function<void(std::size_t)>& fn) {
    if (workers <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const int count = std::min<std::size_t>(static_cast<std::size_t>(workers), n);
    pool.reserve(static_cast<std::size_t>(count));
    for (int w = 0; w < count; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1))
                fn(i);
        });
    }
    for (std::thread& t : pool) t.join();
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
}

struct ScoredSuite {
    double score = 0.0;
    long scoring_sims = 0;
    long mutant_sims = 0;
};

ScoredSuite score_suite(const TestSuite& suite, const ModelGraph& graph,
                        const std::vector<Mutant>& mutants) {
    ScoredSuite s;
    s.score = mutation_score(suite, graph, mutants);
    s.scoring_sims = static_cast<long>(suite.size());
    s.mutant_sims = static_cast<long>(suite.size() * mutants.size());
    return s;
}

ExperimentRecord run_one(const ModelGraph& graph, const std::vector<Mutant>& mutants,
                         const std::string& generator, int size, int repeat,
                         const ExperimentConfig& config) {
    ExperimentRecord rec;
    rec.model = graph.name;
    rec.generator = generator;
    rec.suite_size = size;
    rec.repeat = repeat;
    rec.seed = record_seed(config.master_seed, graph.name, generator, size, repeat);

    if (generator == "od" && graph.all_inputs_constant()) {
        rec.status = "skipped";
        rec.note = "od not applicable: all inputs constant";
        return rec;
    }

    Rng rng(rec.seed);
    CaseSimulator simulator = CaseSimulator::for_model(graph);
    const auto gen_start = std::chrono::steady_clock::now();

    TestSuite suite;
    std::optional<RangeAssumption> ranges;
    if (generator == "random") {
        suite = random_suite(graph.inports, size, rng);
    } else if (generator == "genclu") {
        GenCluConfig gc;
        gc.initial_samples = config.params.genclu_initial_samples;
        gc.enough = size;
        gc.seed = rec.seed;
        suite = generate_suite(graph, gc, simulator, rng).suite;
    } else if (generator == "epicurus") {
        EpicurusConfig ec;
        ec.iterations = config.params.epicurus_iterations;
        ec.min_leaf = config.params.epicurus_min_leaf;
        EpicurusResult res = epicurus_suite(graph, size, ec, simulator, rng);
        suite = std::move(res.suite);
        ranges = std::move(res.ranges);
    } else {  // od
        ODConfig oc;
        oc.timeout_seconds =
            config.params.od_timeout_seconds * config.params.od_timeout_scale;
        oc.max_iterations = config.params.od_max_iterations;
        suite = od_suite(graph, size, oc, simulator, rng).suite;
    }
    rec.generation_sims = simulator.count();
    rec.generation_seconds = seconds_since(gen_start);

    const auto score_start = std::chrono::steady_clock::now();
    if (ranges) {
        // range-narrowing generators are scored on fresh suites drawn from
        // the final ranges, median of scoring_suites draws
        std::vector<double> scores;
        for (int s = 0; s < config.params.scoring_suites; ++s) {
            TestSuite drawn;
            for (int t = 0; t < size; ++t)
                drawn.push_back(sample_in_ranges(graph.inports, *ranges, rng));
            const ScoredSuite sc = score_suite(drawn, graph, mutants);
            scores.push_back(sc.score);
            rec.scoring_sims += sc.scoring_sims;
            rec.mutant_sims += sc.mutant_sims;
        }
        rec.mutation_score = median(scores);
    } else {
        const ScoredSuite sc = score_suite(suite, graph, mutants);
        rec.mutation_score = sc.score;
        rec.scoring_sims = sc.scoring_sims;
        rec.mutant_sims = sc.mutant_sims;
    }
    rec.scoring_seconds = seconds_since(score_start);
    return rec;
}

void write_summary(std::ostream& os, const ExperimentConfig& config,
                   const std::vector<ModelSummary>& models,
                   const std::vector<ExperimentRecord>& records) {
    os << "# Experiment summary\n\n";
    os << "- repeats: " << config.repeats << "\n";
    os << "- master seed: " << config.master_seed << "\n";
    os << "- generators:";
    for (const auto& g : config.generators) os << " " << g;
    os << "\n\n";

    os << "## Models\n\n";
    os << "| model | in/out | blocks | mutants (original -> filtered) |\n";
    os << "|---|---|---|---|\n";
    for (const ModelSummary& m : models) {
        const double pct = m.original_mutants == 0
                               ? 0.0
                               : 100.0 * m.filtered_mutants / m.original_mutants;
        os << "| " << m.name << " | " << m.inports << "/" << m.outports << " | "
           << m.blocks << " | " << m.original_mutants << " -> "
           << m.filtered_mutants << " (" << format_double(std::round(pct * 10) / 10)
           << "%) |\n";
    }
    os << "\n";

    for (const ModelSummary& m : models) {
        for (int size : config.suite_sizes) {
            std::vector<GroupSamples> groups;
            std::map<std::string, std::vector<double>> times;
            for (const std::string& gen : config.generators) {
                GroupSamples g{gen, {}};
                for (const ExperimentRecord& r : records) {
                    if (r.model != m.name || r.generator != gen ||
                        r.suite_size != size || r.status != "ok")
                        continue;
                    g.values.push_back(r.mutation_score);
                    times[gen].push_back(r.generation_seconds + r.scoring_seconds);
                }
                if (!g.values.empty()) groups.push_back(std::move(g));
            }
            if (groups.empty()) continue;

            const auto ranked = scott_knott(groups, /*maximize=*/true);
            std::map<std::string, double> med_time;
            for (auto& [gen, ts] : times) med_time[gen] = median(ts);

            os << "## " << m.name << ", suite size " << size << "\n\n";
            os << "| generator | median score | IQR | rank | median time (s) |"
                  " faster than epicurus | faster than od |\n";
            os << "|---|---|---|---|---|---|---|\n";
            for (const RankedGroup& r : ranked) {
                os << "| " << r.name << " | " << format_double(r.median) << " | "
                   << format_double(r.iqr) << " | " << r.rank << " | "
                   << format_double(med_time[r.name]) << " | ";
                for (const char* ref : {"epicurus", "od"}) {
                    if (r.name == ref || med_time.find(ref) == med_time.end() ||
                        med_time[r.name] <= 0.0) {
                        os << "/ | ";
                    } else {
                        os << "x" << format_double(std::round(10.0 * med_time[ref] /
                                                              med_time[r.name]) /
                                                   10.0)
                           << " | ";
                    }
                }
                os << "\n";
            }
            os << "\n";
        }
    }
}

}  // namespace

ExperimentOutput run_experiment(const ExperimentConfig& config) {
    config.validate();
    fs::create_directories(config.output_dir);

    ExperimentOutput output;

    // shared per-model state: every generator and repeat scores against the
    // same filtered mutant set
    struct ModelState {
        bool ok = false;
        std::string error;
        ModelGraph graph;
        std::vector<Mutant> mutants;
    };
    std::vector<ModelState> states(config.model_paths.size());
    for (std::size_t i = 0; i < config.model_paths.size(); ++i) {
        ModelState& st = states[i];
        try {
            const auto prep = prepare_mutants(
                config.model_paths[i],
                derive_seed(config.master_seed, "mutants|" + config.model_paths[i]),
                config.params.probe_count, config.output_dir);
            st.graph = load_model_file(config.model_paths[i]);
            st.mutants = prep.mutants;
            output.models.push_back(prep.summary);
            if (st.mutants.empty()) {
                st.error = "no filtered mutants";
            } else {
                st.ok = true;
            }
        } catch (const std::exception& e) {
            st.error = e.what();
        }
    }

    struct Task {
        std::size_t model = 0;
        std::string generator;
        int size = 0;
        int repeat = 0;
    };
    std::vector<Task> tasks;
    for (std::size_t mi = 0; mi < states.size(); ++mi) {
        if (!states[mi].ok) continue;
        for (const std::string& gen : config.generators)
            for (int size : config.suite_sizes)
                for (int rep = 0; rep < config.repeats; ++rep)
                    tasks.push_back(Task{mi, gen, size, rep});
    }

    std::vector<ExperimentRecord> results(tasks.size());
    run_parallel(resolve_workers(config.workers), tasks.size(), [&](std::size_t i) {
        const Task& t = tasks[i];
        const ModelState& st = states[t.model];
        try {
            results[i] = run_one(st.graph, st.mutants, t.generator, t.size, t.repeat,
                                 config);
        } catch (const std::exception& e) {
            ExperimentRecord rec;
            rec.model = st.graph.name;
            rec.generator = t.generator;
            rec.suite_size = t.size;
            rec.repeat = t.repeat;
            rec.seed = record_seed(config.master_seed, st.graph.name, t.generator,
                                   t.size, t.repeat);
            rec.status = "failed";
            rec.note = e.what();
            results[i] = std::move(rec);
        }
    });

    // per-model failure entries keep broken models visible in the CSV
    for (std::size_t mi = 0; mi < states.size(); ++mi) {
        if (states[mi].ok) continue;
        ExperimentRecord rec;
        rec.model = states[mi].graph.name.empty() ? config.model_paths[mi]
                                                  : states[mi].graph.name;
        rec.generator = "*";
        rec.status = "failed";
        rec.note = states[mi].error;
        output.records.push_back(std::move(rec));
    }
    output.records.insert(output.records.end(),
                          std::make_move_iterator(results.begin()),
                          std::make_move_iterator(results.end()));

    const fs::path dir(config.output_dir);
    output.records_csv_path = (dir / "records.csv").string();
    output.timings_csv_path = (dir / "timings.csv").string();
    output.summary_path = (dir / "summary.md").string();

    std::ofstream(output.records_csv_path) << records_to_csv(output.records);
    std::ofstream(output.timings_csv_path) << timings_to_csv(output.records);
    std::ofstream summary(output.summary_path);
    write_summary(summary, config, output.models, output.records);
    return output;
}

std::string rank_report_csv(const std::vector<ExperimentRecord>& records) {
    std::ostringstream os;
    os << "model,suite_size,generator,median,iqr,rank\n";

    std::vector<std::pair<std::string, int>> cells;
    for (const ExperimentRecord& r : records) {
        if (r.status != "ok") continue;
        const std::pair<std::string, int> key{r.model, r.suite_size};
        if (std::find(cells.begin(), cells.end(), key) == cells.end())
            cells.push_back(key);
    }

    for (const auto& [model, size] : cells) {
        std::map<std::string, std::vector<double>> by_gen;
        for (const ExperimentRecord& r : records)
            if (r.status == "ok" && r.model == model && r.suite_size == size)
                by_gen[r.generator].push_back(r.mutation_score);
        std::vector<GroupSamples> groups;
        for (auto& [gen, vals] : by_gen) groups.push_back({gen, std::move(vals)});
        for (const RankedGroup& r : scott_knott(std::move(groups), true))
            os << csv_escape(model) << "," << size << "," << r.name << ","
               << format_double(r.median) << "," << format_double(r.iqr) << ","
               << r.rank << "\n";
    }
    return os.str();
}

}  // namespace tgen
