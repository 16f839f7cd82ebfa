#include <benchmark/benchmark.h>

#include "tgen/model.hpp"
#include "tgen/rng.hpp"

namespace {

const tgen::ModelGraph& tiny_model() {
    static const tgen::ModelGraph model =
        tgen::load_model_file(std::string(TGEN_MODELS_DIR) + "/tiny_controller.json");
    return model;
}

void BM_Simulate(benchmark::State& state) {
    const auto& model = tiny_model();
    tgen::Rng rng(1);
    const tgen::TestCase tc = tgen::sample_test_case(model.inports, rng);
    const auto inputs = tgen::render_inputs(model, tc);
    for (auto _ : state) {
        benchmark::DoNotOptimize(tgen::simulate(model, inputs));
    }
}
BENCHMARK(BM_Simulate);

void BM_RenderInputs(benchmark::State& state) {
    const auto& model = tiny_model();
    tgen::Rng rng(2);
    const tgen::TestCase tc = tgen::sample_test_case(model.inports, rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(tgen::render_inputs(model, tc));
    }
}
BENCHMARK(BM_RenderInputs);

void BM_LoadModel(benchmark::State& state) {
    const std::string path = std::string(TGEN_MODELS_DIR) + "/cruise_speed.json";
    for (auto _ : state) {
        benchmark::DoNotOptimize(tgen::load_model_file(path));
    }
}
BENCHMARK(BM_LoadModel);

}  // namespace
