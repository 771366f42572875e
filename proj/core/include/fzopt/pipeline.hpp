#ifndef FZOPT_PIPELINE_HPP
#define FZOPT_PIPELINE_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fzopt/ensemble.hpp"
#include "fzopt/nsga.hpp"
#include "fzopt/report.hpp"

namespace fzopt {

/// Everything one end-to-end run needs. All seeds derive from `seed`;
/// no stage consults the wall clock.
struct PipelineConfig {
    int version = 1;
    std::uint64_t seed = 42;
    int threads = 1;

    // sampling + simulation
    std::size_t samples = 1000;
    LhsMode lhs_mode = LhsMode::Jitter;

    // surrogate
    double test_fraction = 0.1;
    bool run_hpo = true;
    std::size_t hpo_trials = 100;
    HpoMethod hpo_method = HpoMethod::Tpe;
    std::size_t cv_folds = 10;
    int hpo_epochs = 15; // CV passes per fold training during the search
    Architecture arch{{32, 32, 32}};
    std::size_t ensemble_size = 10;
    TrainConfig train;

    // optimization
    GaConfig ga;

    // validation + report
    std::size_t validation_cases = 6;
};

/// CI-scale settings: S=1000, 100 TPE trials, population 100, 50
/// generations, NSGA-II, granularity 3.
PipelineConfig desk_profile(std::uint64_t seed = 42);

/// Production-scale settings: S=2500, 1000 TPE trials, population 500,
/// 250 generations, granularity 12.
PipelineConfig paper_profile(std::uint64_t seed = 42);

std::string pipeline_config_to_json(const PipelineConfig& cfg);
PipelineConfig pipeline_config_from_json(const std::string& text);
PipelineConfig read_pipeline_config(const std::string& path);

/// Split into (train, test) index sets by seeded shuffle.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split_train_test(
    std::size_t n, double test_fraction, std::uint64_t seed);

struct SurrogateMetrics {
    std::array<double, kNumOutputs> test_mse{}; // on scaled data
    std::array<std::optional<double>, kNumOutputs> test_r2{};
    std::size_t train_rows = 0;
    std::size_t test_rows = 0;
};

/// Feasible view -> 90/10 split -> scale on train -> M-member ensemble;
/// metrics come from the held-out split.
std::pair<EnsembleModel, SurrogateMetrics> train_surrogate(const Dataset& data,
                                                           const Architecture& arch,
                                                           std::size_t ensemble_size,
                                                           double test_fraction,
                                                           const TrainConfig& train_cfg,
                                                           std::uint64_t seed);

/// ObjectiveVector evaluator backed by the ensemble (physical units in).
GaEvaluator make_surrogate_evaluator(const EnsembleModel& model, const ObjectiveTable& table);

/// Predictor view of the ensemble for the validation loop.
Predictor make_predictor(const EnsembleModel& model);

struct PipelineResult {
    std::string out_dir;
    Architecture arch;
    SurrogateMetrics metrics;
    std::size_t dataset_rows = 0;
    std::size_t feasible_rows = 0;
    std::size_t pareto_size = 0;
    double validation_mean_discrepancy = 0.0;
};

/// Runs sample -> simulate -> (hpo) -> train -> optimize -> validate ->
/// report, writing every artifact under out_dir: space.json,
/// objectives.json, design.csv, dataset.csv, hpo_report.csv,
/// best_per_depth.csv, model.json, metrics.json, solutions.csv,
/// stats.csv, pareto.csv, parallel_coords.csv, parallel_coords.meta.json,
/// violin.json, validation.csv. Bitwise reproducible per (config, seed).
PipelineResult run_pipeline(const PipelineConfig& cfg, const std::string& out_dir);

} // namespace fzopt

#endif
