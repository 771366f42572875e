// fzopt: surrogate-based many-objective optimization of floating-zone
// crystal growth process parameters. Stages are subcommands; every stage
// is deterministic given its --seed and writes only documented formats.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "fzopt/dataset.hpp"
#include "fzopt/ensemble.hpp"
#include "fzopt/errors.hpp"
#include "fzopt/nsga.hpp"
#include "fzopt/objectives.hpp"
#include "fzopt/oracle.hpp"
#include "fzopt/param_space.hpp"
#include "fzopt/pipeline.hpp"
#include "fzopt/report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitNumeric = 4;

fzopt::ParameterSpace load_space(const std::string& path) {
    return path.empty() ? fzopt::table1_space() : fzopt::read_space_json(path);
}

fzopt::ObjectiveTable load_objectives(const std::string& path) {
    return path.empty() ? fzopt::table2_objectives() : fzopt::read_objectives_json(path);
}

fzopt::Architecture parse_arch(const std::vector<int>& widths) {
    fzopt::Architecture arch;
    arch.hidden = widths;
    arch.validate();
    return arch;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"surrogate-based many-objective optimization for floating-zone crystal growth"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "print help for every subcommand");

    // ---- sample ----
    auto* sample = app.add_subcommand("sample", "draw a Latin hypercube design");
    std::size_t sample_n = 1000;
    std::uint64_t sample_seed = 42;
    std::string sample_space, sample_out = "design.csv", sample_mode = "jitter";
    sample->add_option("--n", sample_n, "number of samples")->capture_default_str();
    sample->add_option("--seed", sample_seed, "RNG seed")->capture_default_str();
    sample->add_option("--space", sample_space, "space definition JSON (default: built-in table)");
    sample->add_option("--mode", sample_mode, "stratum position: jitter|midpoint")
        ->check(CLI::IsMember({"jitter", "midpoint"}))
        ->capture_default_str();
    sample->add_option("--out", sample_out, "output design CSV")->capture_default_str();

    // ---- simulate ----
    auto* simulate = app.add_subcommand("simulate", "evaluate a design with the built-in physics proxy");
    std::string sim_design, sim_ingest, sim_space, sim_out = "dataset.csv";
    simulate->add_option("--design", sim_design, "design CSV to evaluate");
    simulate->add_option("--ingest", sim_ingest, "ingest an externally computed dataset CSV instead");
    simulate->add_option("--space", sim_space, "space definition JSON");
    simulate->add_option("--out", sim_out, "output dataset CSV")->capture_default_str();

    // ---- hpo ----
    auto* hpo = app.add_subcommand("hpo", "architecture search by cross-validated loss");
    std::string hpo_data, hpo_method = "tpe", hpo_out = "hpo_report.csv", hpo_best = "best_per_depth.csv";
    std::size_t hpo_trials = 100, hpo_folds = 10;
    int hpo_epochs = 15;
    double hpo_test_fraction = 0.1;
    std::uint64_t hpo_seed = 42;
    hpo->add_option("--data", hpo_data, "dataset CSV")->required();
    hpo->add_option("--trials", hpo_trials, "architectures to evaluate")->capture_default_str();
    hpo->add_option("--method", hpo_method, "search method: tpe|random")
        ->check(CLI::IsMember({"tpe", "random"}))
        ->capture_default_str();
    hpo->add_option("--folds", hpo_folds, "cross-validation folds")->capture_default_str();
    hpo->add_option("--epochs", hpo_epochs, "training passes per fold")->capture_default_str();
    hpo->add_option("--test-fraction", hpo_test_fraction, "held-out fraction excluded from the search")
        ->capture_default_str();
    hpo->add_option("--seed", hpo_seed, "RNG seed")->capture_default_str();
    hpo->add_option("--out", hpo_out, "trial report CSV")->capture_default_str();
    hpo->add_option("--best-out", hpo_best, "best-per-depth table CSV")->capture_default_str();

    // ---- train ----
    auto* train_cmd = app.add_subcommand("train", "train the deep-ensemble surrogate");
    std::string train_data, train_out = "model.json", train_metrics = "metrics.json";
    std::vector<int> train_arch = {32, 32, 32};
    std::size_t train_members = 10;
    int train_epochs = 100, train_batch = 32;
    double train_lr = 1e-3, train_test_fraction = 0.1;
    std::uint64_t train_seed = 42;
    train_cmd->add_option("--data", train_data, "dataset CSV")->required();
    train_cmd->add_option("--arch", train_arch, "hidden layer widths")->capture_default_str();
    train_cmd->add_option("--members", train_members, "ensemble size M")->capture_default_str();
    train_cmd->add_option("--epochs", train_epochs, "training passes")->capture_default_str();
    train_cmd->add_option("--batch", train_batch, "mini-batch size")->capture_default_str();
    train_cmd->add_option("--lr", train_lr, "Adam learning rate")->capture_default_str();
    train_cmd->add_option("--test-fraction", train_test_fraction, "held-out fraction")
        ->capture_default_str();
    train_cmd->add_option("--seed", train_seed, "RNG seed")->capture_default_str();
    train_cmd->add_option("--out", train_out, "model JSON")->capture_default_str();
    train_cmd->add_option("--metrics-out", train_metrics, "metrics JSON")->capture_default_str();

    // ---- optimize ----
    auto* optimize = app.add_subcommand("optimize", "run NSGA-II/III on the trained surrogate");
    std::string opt_model, opt_algo = "nsga2", opt_objectives, opt_out = "solutions.csv",
                opt_stats = "stats.csv";
    std::size_t opt_pop = 100;
    int opt_gens = 50, opt_g = 3, opt_threads = 1;
    std::uint64_t opt_seed = 42;
    optimize->add_option("--model", opt_model, "ensemble model JSON")->required();
    optimize->add_option("--algo", opt_algo, "nsga2|nsga3")
        ->check(CLI::IsMember({"nsga2", "nsga3"}))
        ->capture_default_str();
    optimize->add_option("--objectives", opt_objectives, "objective table JSON (default: built-in)");
    optimize->add_option("--pop", opt_pop, "population size (even)")->capture_default_str();
    optimize->add_option("--gens", opt_gens, "generations")->capture_default_str();
    optimize->add_option("--g", opt_g, "reference-point granularity (nsga3)")->capture_default_str();
    optimize->add_option("--threads", opt_threads, "evaluation workers")->capture_default_str();
    optimize->add_option("--seed", opt_seed, "RNG seed")->capture_default_str();
    optimize->add_option("--out", opt_out, "solutions CSV")->capture_default_str();
    optimize->add_option("--stats-out", opt_stats, "per-generation stats CSV")->capture_default_str();

    // ---- validate ----
    auto* validate = app.add_subcommand("validate", "recompute selected candidates with the physics proxy");
    std::string val_solutions, val_model, val_objectives, val_out = "validation.csv";
    std::size_t val_n = 6;
    validate->add_option("--solutions", val_solutions, "solutions CSV")->required();
    validate->add_option("--model", val_model, "ensemble model JSON")->required();
    validate->add_option("--objectives", val_objectives, "objective table JSON");
    validate->add_option("--n", val_n, "number of candidates")->capture_default_str();
    validate->add_option("--out", val_out, "validation CSV")->capture_default_str();

    // ---- report ----
    auto* report = app.add_subcommand("report", "export Pareto front and trade-off artifacts");
    std::string rep_solutions, rep_dataset, rep_model, rep_objectives, rep_dir = "report";
    report->add_option("--solutions", rep_solutions, "solutions CSV")->required();
    report->add_option("--dataset", rep_dataset, "dataset CSV")->required();
    report->add_option("--model", rep_model, "ensemble model JSON")->required();
    report->add_option("--objectives", rep_objectives, "objective table JSON");
    report->add_option("--out-dir", rep_dir, "output directory")->capture_default_str();

    // ---- pipeline ----
    auto* pipeline = app.add_subcommand("pipeline", "run every stage end to end");
    std::string pipe_profile = "desk", pipe_config, pipe_dir = "run";
    std::uint64_t pipe_seed = 42;
    int pipe_threads = 1;
    bool pipe_seed_set = false, pipe_threads_set = false;
    pipeline->add_option("--profile", pipe_profile, "desk|paper")
        ->check(CLI::IsMember({"desk", "paper"}))
        ->capture_default_str();
    pipeline->add_option("--config", pipe_config, "pipeline config JSON (overrides --profile)");
    pipeline->add_option("--seed", pipe_seed, "RNG seed")
        ->capture_default_str()
        ->each([&](const std::string&) { pipe_seed_set = true; });
    pipeline->add_option("--threads", pipe_threads, "evaluation workers")
        ->capture_default_str()
        ->each([&](const std::string&) { pipe_threads_set = true; });
    pipeline->add_option("--out-dir", pipe_dir, "output directory")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*sample) {
            auto space = load_space(sample_space);
            auto mode = sample_mode == "midpoint" ? fzopt::LhsMode::Midpoint : fzopt::LhsMode::Jitter;
            auto design = fzopt::lhs_sample(space, sample_n, sample_seed, mode);
            fzopt::write_design_csv(design, space, sample_out);
            std::printf("wrote %zu samples to %s\n", design.rows.size(), sample_out.c_str());
        } else if (*simulate) {
            if (sim_ingest.empty() == sim_design.empty())
                throw fzopt::ValidationError("simulate: pass exactly one of --design or --ingest");
            if (!sim_ingest.empty()) {
                auto data = fzopt::ingest_csv(sim_ingest);
                fzopt::write_dataset_csv(data, sim_out);
                std::printf("ingested %zu rows (%zu feasible) to %s\n", data.rows.size(),
                            data.feasible_count(), sim_out.c_str());
            } else {
                auto space = load_space(sim_space);
                auto design = fzopt::read_design_csv(space, sim_design);
                fzopt::Dataset data;
                for (const auto& x : design.rows) {
                    auto o = fzopt::oracle_evaluate(space, x);
                    data.rows.push_back({x, o.y, o.feasible});
                }
                fzopt::write_dataset_csv(data, sim_out);
                std::printf("simulated %zu rows (%zu feasible) to %s\n", data.rows.size(),
                            data.feasible_count(), sim_out.c_str());
            }
        } else if (*hpo) {
            auto data = fzopt::ingest_csv(hpo_data).feasible_view();
            auto [train_idx, test_idx] =
                fzopt::split_train_test(data.rows.size(), hpo_test_fraction, fzopt::mix_seed(hpo_seed, 2));
            fzopt::Dataset train_split;
            for (auto i : train_idx) train_split.rows.push_back(data.rows[i]);
            auto [scaled, scaler] = fzopt::scale_fit_transform(train_split);
            auto [X, Y] = fzopt::to_matrices(scaled);
            fzopt::TrainConfig cfg;
            cfg.epochs = hpo_epochs;
            cfg.seed = fzopt::mix_seed(hpo_seed, 3);
            auto method = hpo_method == "tpe" ? fzopt::HpoMethod::Tpe : fzopt::HpoMethod::Random;
            auto result = fzopt::search_architectures({}, hpo_trials, method, X, Y, hpo_folds, cfg,
                                                      fzopt::mix_seed(hpo_seed, 30));
            fzopt::write_hpo_report_csv(result.trials, hpo_out);
            fzopt::write_best_per_depth_csv(result.best_per_depth, hpo_best);
            const auto& best = result.trials.front();
            std::printf("best architecture after %zu trials: depth %zu, mean CV loss %g\n",
                        result.trials.size(), best.arch.hidden.size(), best.mean_loss);
        } else if (*train_cmd) {
            auto data = fzopt::ingest_csv(train_data);
            fzopt::TrainConfig cfg;
            cfg.epochs = train_epochs;
            cfg.batch_size = train_batch;
            cfg.learning_rate = train_lr;
            auto [model, metrics] = fzopt::train_surrogate(data, parse_arch(train_arch), train_members,
                                                           train_test_fraction, cfg, train_seed);
            fzopt::save_ensemble_json(model, train_out);
            nlohmann::ordered_json m;
            m["test_mse"] = metrics.test_mse;
            m["test_r2"] = nlohmann::ordered_json::array();
            for (const auto& r2 : metrics.test_r2)
                m["test_r2"].push_back(r2 ? nlohmann::ordered_json(*r2) : nlohmann::ordered_json());
            std::ofstream mout(train_metrics, std::ios::binary);
            mout << m.dump(2) << '\n';
            std::printf("trained %zu members on %zu rows; wrote %s\n", model.size(),
                        metrics.train_rows, train_out.c_str());
        } else if (*optimize) {
            auto model = fzopt::load_ensemble_json(opt_model);
            auto table = load_objectives(opt_objectives);
            fzopt::GaConfig cfg;
            cfg.population = opt_pop;
            cfg.generations = opt_gens;
            cfg.algorithm = opt_algo == "nsga3" ? fzopt::Algo::Nsga3 : fzopt::Algo::Nsga2;
            cfg.granularity = opt_g;
            cfg.seed = opt_seed;
            cfg.threads = opt_threads;
            if (cfg.algorithm == fzopt::Algo::Nsga3) {
                auto count = fzopt::das_dennis_count(static_cast<int>(table.size()), opt_g);
                if (count > 1000)
                    std::fprintf(stderr,
                                 "warning: nsga3 with g=%d generates %llu reference points; "
                                 "expect a substantial slowdown\n",
                                 opt_g, static_cast<unsigned long long>(count));
            }
            auto space = fzopt::table1_space();
            auto result = fzopt::nsga_run(cfg, space, fzopt::make_surrogate_evaluator(model, table));
            fzopt::write_solutions_csv(result, space, opt_out);
            fzopt::write_stats_csv(result, opt_stats);
            const auto& last = result.stats.back();
            std::printf("final population: %zu individuals, %zu feasible, front-1 size %zu\n",
                        result.population.size(), last.feasible, last.front1);
        } else if (*validate) {
            auto rows = fzopt::read_solutions_csv(val_solutions);
            auto model = fzopt::load_ensemble_json(val_model);
            auto table = load_objectives(val_objectives);
            auto space = fzopt::table1_space();
            fzopt::OracleFn oracle = [&space](std::span<const double> x) {
                return fzopt::oracle_evaluate(space, x);
            };
            auto summary = fzopt::validate_candidates(rows, table, fzopt::make_predictor(model),
                                                      oracle, val_n);
            fzopt::write_validation_csv(summary, val_out);
            std::printf("validated %zu candidates, mean discrepancy %.4g\n", summary.records.size(),
                        summary.overall_mean);
        } else if (*report) {
            namespace fs = std::filesystem;
            fs::create_directories(rep_dir);
            auto rows = fzopt::read_solutions_csv(rep_solutions);
            auto dataset = fzopt::ingest_csv(rep_dataset);
            auto model = fzopt::load_ensemble_json(rep_model);
            auto table = load_objectives(rep_objectives);
            auto space = fzopt::table1_space();
            auto out = [&](const std::string& name) { return (fs::path(rep_dir) / name).string(); };

            auto pareto = fzopt::build_pareto_report(rows, table);
            fzopt::write_pareto_csv(pareto, space, table, out("pareto.csv"));
            fzopt::export_parallel_coordinates(pareto.solutions, table, space,
                                               out("parallel_coords.csv"),
                                               out("parallel_coords.meta.json"));
            fzopt::Dataset solution_set;
            for (const auto& row : rows) {
                fzopt::DataRow r;
                r.x = row.x;
                auto y = fzopt::ensemble_predict_physical(model, row.x);
                std::copy(y.begin(), y.end(), r.y.begin());
                r.feasible = row.obj.feasible;
                solution_set.rows.push_back(std::move(r));
            }
            std::map<std::string, fzopt::Dataset> sets;
            sets[rows.empty() ? "solutions" : rows.front().algo] = std::move(solution_set);
            fzopt::write_violin_json(dataset, sets, out("violin.json"));
            std::printf("wrote report artifacts to %s (%zu Pareto solutions)\n", rep_dir.c_str(),
                        pareto.solutions.size());
        } else if (*pipeline) {
            fzopt::PipelineConfig cfg;
            if (!pipe_config.empty()) {
                cfg = fzopt::read_pipeline_config(pipe_config);
            } else {
                cfg = pipe_profile == "paper" ? fzopt::paper_profile() : fzopt::desk_profile();
            }
            if (pipe_seed_set) cfg.seed = pipe_seed;
            if (pipe_threads_set) cfg.threads = pipe_threads;
            if (cfg.ga.algorithm == fzopt::Algo::Nsga3) {
                auto count = fzopt::das_dennis_count(8, cfg.ga.granularity);
                if (count > 1000)
                    std::fprintf(stderr, "warning: nsga3 granularity %d generates %llu reference points\n",
                                 cfg.ga.granularity, static_cast<unsigned long long>(count));
            }
            auto result = fzopt::run_pipeline(cfg, pipe_dir);
            std::printf("pipeline complete: %zu/%zu feasible rows, pareto size %zu, "
                        "validation discrepancy %.4g\n",
                        result.feasible_rows, result.dataset_rows, result.pareto_size,
                        result.validation_mean_discrepancy);
        }
    } catch (const fzopt::NumericError& e) {
        std::fprintf(stderr, "numeric error: %s\n", e.what());
        return kExitNumeric;
    } catch (const fzopt::DataError& e) {
        std::fprintf(stderr, "data error: %s\n", e.what());
        return kExitData;
    } catch (const fzopt::ValidationError& e) {
        std::fprintf(stderr, "data error: %s\n", e.what());
        return kExitData;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitData;
    }
    return kExitOk;
}
