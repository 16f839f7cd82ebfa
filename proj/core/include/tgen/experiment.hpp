#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tgen/mutation.hpp"
#include "tgen/stats.hpp"

#include "json.hpp"

namespace tgen {

struct GeneratorParams {
    int epicurus_iterations = 30;
    int epicurus_min_leaf = 2;
    double od_timeout_seconds = 600.0;
    double od_timeout_scale = 1.0;  // desk-scale runs shrink the 600 s budget
    int od_max_iterations = 50;
    int genclu_initial_samples = 256;
    int scoring_suites = 5;  // median-of-n protocol for range-based generators
    int probe_count = 200;   // mutant filtering probes
};

struct ExperimentConfig {
    std::vector<std::string> model_paths;
    std::vector<std::string> generators = {"random", "epicurus", "od", "genclu"};
    std::vector<int> suite_sizes = {4, 16, 32};
    int repeats = 20;
    std::uint64_t master_seed = 1;
    GeneratorParams params;
    std::string output_dir = "out";
    int workers = 0;  // 0 = hardware concurrency; TGEN_WORKERS overrides

    static ExperimentConfig from_json(const nlohmann::json& j);
    static ExperimentConfig from_file(const std::string& path);
    nlohmann::json to_json() const;
    void validate() const;
};

struct ExperimentRecord {
    std::string model;
    std::string generator;
    int suite_size = 0;
    int repeat = 0;
    std::uint64_t seed = 0;
    std::string status = "ok";  // ok | skipped | failed
    std::string note;
    double mutation_score = 0.0;
    long generation_sims = 0;
    long scoring_sims = 0;
    long mutant_sims = 0;
    double generation_seconds = 0.0;
    double scoring_seconds = 0.0;
};

struct ModelSummary {
    std::string name;
    std::string path;
    int blocks = 0;
    int inports = 0;
    int outports = 0;
    int original_mutants = 0;
    int filtered_mutants = 0;
};

struct ExperimentOutput {
    std::vector<ExperimentRecord> records;
    std::vector<ModelSummary> models;
    std::string records_csv_path;
    std::string timings_csv_path;
    std::string summary_path;
};

/// Filters a model's mutants with random probes and persists the survivor
/// set plus filter statistics under <out_dir>/mutants/.
struct PreparedMutants {
    ModelSummary summary;
    std::vector<Mutant> mutants;
    std::string json_path;
};
PreparedMutants prepare_mutants(const std::string& model_path, std::uint64_t seed,
                                int probe_count, const std::string& out_dir);

/// The full cross product: models x generators x suite sizes x repeats, each
/// record scored against the model's shared filtered mutants, written out as
/// records.csv (deterministic columns), timings.csv (wall clock), and a
/// markdown summary with medians, IQRs, Scott-Knott ranks, and speedups.
ExperimentOutput run_experiment(const ExperimentConfig& config);

/// Derives the per-record seed from the master seed and the record identity.
std::uint64_t record_seed(std::uint64_t master, const std::string& model,
                          const std::string& generator, int size, int repeat);

std::string records_to_csv(const std::vector<ExperimentRecord>& records);
std::string timings_to_csv(const std::vector<ExperimentRecord>& records);
std::vector<ExperimentRecord> records_from_csv(const std::string& csv);

/// Scott-Knott rank tables per (model, suite size) from a record list, as
/// the `stats` subcommand prints them.
std::string rank_report_csv(const std::vector<ExperimentRecord>& records);

}  // namespace tgen
