#include "fzopt/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

#include "fzopt/errors.hpp"
#include "fzopt/io_util.hpp"
#include "fzopt/oracle.hpp"

namespace fzopt {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

PipelineConfig desk_profile(std::uint64_t seed) {
    PipelineConfig cfg;
    cfg.seed = seed;
    cfg.samples = 1000;
    cfg.hpo_trials = 100;
    cfg.ga.population = 100;
    cfg.ga.generations = 50;
    cfg.ga.granularity = 3;
    return cfg;
}

PipelineConfig paper_profile(std::uint64_t seed) {
    PipelineConfig cfg;
    cfg.seed = seed;
    cfg.samples = 2500;
    cfg.hpo_trials = 1000;
    cfg.hpo_epochs = 100;
    cfg.ga.population = 500;
    cfg.ga.generations = 250;
    cfg.ga.granularity = 12;
    return cfg;
}

std::string pipeline_config_to_json(const PipelineConfig& cfg) {
    json j;
    j["version"] = cfg.version;
    j["seed"] = cfg.seed;
    j["threads"] = cfg.threads;
    j["samples"] = cfg.samples;
    j["lhs_mode"] = cfg.lhs_mode == LhsMode::Jitter ? "jitter" : "midpoint";
    j["test_fraction"] = cfg.test_fraction;
    j["hpo"] = {{"enabled", cfg.run_hpo},
                {"trials", cfg.hpo_trials},
                {"method", cfg.hpo_method == HpoMethod::Tpe ? "tpe" : "random"},
                {"folds", cfg.cv_folds},
                {"epochs", cfg.hpo_epochs}};
    j["architecture"] = cfg.arch.hidden;
    j["ensemble_size"] = cfg.ensemble_size;
    j["train"] = {{"epochs", cfg.train.epochs},
                  {"learning_rate", cfg.train.learning_rate},
                  {"batch_size", cfg.train.batch_size}};
    j["ga"] = {{"algorithm", cfg.ga.algorithm == Algo::Nsga2 ? "nsga2" : "nsga3"},
               {"population", cfg.ga.population},
               {"generations", cfg.ga.generations},
               {"crossover_prob", cfg.ga.crossover_prob},
               {"mutation_prob", cfg.ga.mutation_prob},
               {"eta_c", cfg.ga.eta_c},
               {"eta_m", cfg.ga.eta_m},
               {"granularity", cfg.ga.granularity}};
    j["validation_cases"] = cfg.validation_cases;
    return j.dump(2) + "\n";
}

PipelineConfig pipeline_config_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw DataError(std::string("config JSON parse error: ") + e.what());
    }
    PipelineConfig cfg;
    if (j.value("version", 1) != 1) throw DataError("config: unsupported version");
    cfg.seed = j.value("seed", cfg.seed);
    cfg.threads = j.value("threads", cfg.threads);
    cfg.samples = j.value("samples", cfg.samples);
    std::string mode = j.value("lhs_mode", "jitter");
    if (mode == "jitter") cfg.lhs_mode = LhsMode::Jitter;
    else if (mode == "midpoint") cfg.lhs_mode = LhsMode::Midpoint;
    else throw DataError("config: bad lhs_mode '" + mode + "'");
    cfg.test_fraction = j.value("test_fraction", cfg.test_fraction);
    if (j.contains("hpo")) {
        const auto& h = j["hpo"];
        cfg.run_hpo = h.value("enabled", cfg.run_hpo);
        cfg.hpo_trials = h.value("trials", cfg.hpo_trials);
        std::string method = h.value("method", "tpe");
        if (method == "tpe") cfg.hpo_method = HpoMethod::Tpe;
        else if (method == "random") cfg.hpo_method = HpoMethod::Random;
        else throw DataError("config: bad hpo method '" + method + "'");
        cfg.cv_folds = h.value("folds", cfg.cv_folds);
        cfg.hpo_epochs = h.value("epochs", cfg.hpo_epochs);
    }
    if (j.contains("architecture")) cfg.arch.hidden = j["architecture"].get<std::vector<int>>();
    cfg.ensemble_size = j.value("ensemble_size", cfg.ensemble_size);
    if (j.contains("train")) {
        const auto& t = j["train"];
        cfg.train.epochs = t.value("epochs", cfg.train.epochs);
        cfg.train.learning_rate = t.value("learning_rate", cfg.train.learning_rate);
        cfg.train.batch_size = t.value("batch_size", cfg.train.batch_size);
    }
    if (j.contains("ga")) {
        const auto& g = j["ga"];
        std::string algo = g.value("algorithm", "nsga2");
        if (algo == "nsga2") cfg.ga.algorithm = Algo::Nsga2;
        else if (algo == "nsga3") cfg.ga.algorithm = Algo::Nsga3;
        else throw DataError("config: bad ga algorithm '" + algo + "'");
        cfg.ga.population = g.value("population", cfg.ga.population);
        cfg.ga.generations = g.value("generations", cfg.ga.generations);
        cfg.ga.crossover_prob = g.value("crossover_prob", cfg.ga.crossover_prob);
        cfg.ga.mutation_prob = g.value("mutation_prob", cfg.ga.mutation_prob);
        cfg.ga.eta_c = g.value("eta_c", cfg.ga.eta_c);
        cfg.ga.eta_m = g.value("eta_m", cfg.ga.eta_m);
        cfg.ga.granularity = g.value("granularity", cfg.ga.granularity);
    }
    cfg.validation_cases = j.value("validation_cases", cfg.validation_cases);
    return cfg;
}

PipelineConfig read_pipeline_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return pipeline_config_from_json(ss.str());
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split_train_test(
    std::size_t n, double test_fraction, std::uint64_t seed) {
    if (n < 2) throw ValidationError("split_train_test: need at least 2 rows");
    if (test_fraction <= 0.0 || test_fraction >= 1.0)
        throw ValidationError("split_train_test: fraction must be in (0,1)");
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng rng(seed);
    rng.shuffle(order);
    std::size_t n_test = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::llround(test_fraction * static_cast<double>(n))));
    std::vector<std::size_t> test(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_test));
    std::vector<std::size_t> train(order.begin() + static_cast<std::ptrdiff_t>(n_test), order.end());
    return {std::move(train), std::move(test)};
}

namespace {

Dataset take_rows(const Dataset& data, const std::vector<std::size_t>& idx) {
    Dataset out;
    out.provenance = data.provenance;
    out.rows.reserve(idx.size());
    for (std::size_t i : idx) out.rows.push_back(data.rows[i]);
    return out;
}

} // namespace

std::pair<EnsembleModel, SurrogateMetrics> train_surrogate(const Dataset& data,
                                                           const Architecture& arch,
                                                           std::size_t ensemble_size,
                                                           double test_fraction,
                                                           const TrainConfig& train_cfg,
                                                           std::uint64_t seed) {
    Dataset usable = data.feasible_view();
    if (usable.rows.size() < 10) throw ValidationError("train_surrogate: too few feasible rows");

    auto [train_idx, test_idx] = split_train_test(usable.rows.size(), test_fraction, mix_seed(seed, 2));
    Dataset train_split = take_rows(usable, train_idx);
    Dataset test_split = take_rows(usable, test_idx);

    auto [train_scaled, scaler] = scale_fit_transform(train_split);
    Dataset test_scaled = scale_with(test_split, scaler);

    auto [Xtr, Ytr] = to_matrices(train_scaled);
    auto [Xte, Yte] = to_matrices(test_scaled);

    TrainConfig cfg = train_cfg;
    EnsembleModel model = train_ensemble(arch, Xtr, Ytr, scaler, ensemble_size, mix_seed(seed, 4), cfg);

    // ensemble-mean predictions on the held-out split
    Eigen::MatrixXd pred = Eigen::MatrixXd::Zero(Yte.rows(), Yte.cols());
    for (const auto& net : model.members) pred += forward(net, Xte);
    pred /= static_cast<double>(model.members.size());

    SurrogateMetrics metrics;
    metrics.train_rows = train_split.rows.size();
    metrics.test_rows = test_split.rows.size();
    LossBreakdown loss = mse_loss(pred, Yte);
    auto r2 = r_squared(pred, Yte);
    for (std::size_t j = 0; j < kNumOutputs; ++j) {
        metrics.test_mse[j] = loss.per_output(static_cast<Eigen::Index>(j));
        metrics.test_r2[j] = r2[j];
    }
    return {std::move(model), metrics};
}

GaEvaluator make_surrogate_evaluator(const EnsembleModel& model, const ObjectiveTable& table) {
    return [&model, table](std::span<const double> x) {
        auto y = ensemble_predict_physical(model, x);
        std::array<double, kNumOutputs> ya{};
        std::copy(y.begin(), y.end(), ya.begin());
        return evaluate_objectives(table, x, std::span<const double, kNumOutputs>(ya));
    };
}

Predictor make_predictor(const EnsembleModel& model) {
    return [&model](std::span<const double> x) {
        auto y = ensemble_predict_physical(model, x);
        std::array<double, kNumOutputs> ya{};
        std::copy(y.begin(), y.end(), ya.begin());
        return ya;
    };
}

PipelineResult run_pipeline(const PipelineConfig& cfg, const std::string& out_dir) {
    fs::create_directories(out_dir);
    auto path = [&](const std::string& name) { return (fs::path(out_dir) / name).string(); };

    ParameterSpace space = table1_space();
    ObjectiveTable table = table2_objectives();
    write_space_json(space, path("space.json"));
    write_objectives_json(table, path("objectives.json"));
    {
        std::ofstream out(path("config.json"), std::ios::binary);
        out << pipeline_config_to_json(cfg);
    }

    // sample + simulate
    DesignMatrix design = lhs_sample(space, cfg.samples, cfg.seed, cfg.lhs_mode);
    write_design_csv(design, space, path("design.csv"));
    Dataset dataset;
    dataset.provenance = Provenance::BuiltinOracle;
    dataset.rows.reserve(design.rows.size());
    for (const auto& x : design.rows) {
        OracleOutputs o = oracle_evaluate(space, x);
        dataset.rows.push_back({x, o.y, o.feasible});
    }
    write_dataset_csv(dataset, path("dataset.csv"));

    // architecture search on the scaled training split
    Architecture arch = cfg.arch;
    if (cfg.run_hpo) {
        Dataset usable = dataset.feasible_view();
        auto [train_idx, test_idx] =
            split_train_test(usable.rows.size(), cfg.test_fraction, mix_seed(cfg.seed, 2));
        auto [train_scaled, scaler] = scale_fit_transform(take_rows(usable, train_idx));
        auto [Xtr, Ytr] = to_matrices(train_scaled);
        TrainConfig hpo_cfg = cfg.train;
        hpo_cfg.epochs = cfg.hpo_epochs;
        hpo_cfg.seed = mix_seed(cfg.seed, 3);
        HpoReport hpo = search_architectures({}, cfg.hpo_trials, cfg.hpo_method, Xtr, Ytr,
                                             cfg.cv_folds, hpo_cfg, mix_seed(cfg.seed, 30));
        write_hpo_report_csv(hpo.trials, path("hpo_report.csv"));
        write_best_per_depth_csv(hpo.best_per_depth, path("best_per_depth.csv"));
        arch = hpo.trials.front().arch;
    }

    // deep ensemble
    auto [model, metrics] =
        train_surrogate(dataset, arch, cfg.ensemble_size, cfg.test_fraction, cfg.train, cfg.seed);
    save_ensemble_json(model, path("model.json"));
    {
        json m;
        m["architecture"] = arch.hidden;
        m["train_rows"] = metrics.train_rows;
        m["test_rows"] = metrics.test_rows;
        m["test_mse"] = metrics.test_mse;
        json r2 = json::array();
        for (const auto& v : metrics.test_r2) r2.push_back(v ? json(*v) : json());
        m["test_r2"] = std::move(r2);
        std::ofstream out(path("metrics.json"), std::ios::binary);
        out << m.dump(2) << '\n';
    }

    // optimization on the surrogate
    GaConfig ga = cfg.ga;
    ga.seed = mix_seed(cfg.seed, 5);
    ga.threads = cfg.threads;
    GaResult result = nsga_run(ga, space, make_surrogate_evaluator(model, table));
    write_solutions_csv(result, space, path("solutions.csv"));
    write_stats_csv(result, path("stats.csv"));

    // validation against the oracle
    auto rows = read_solutions_csv(path("solutions.csv"));
    OracleFn oracle = [&space](std::span<const double> x) { return oracle_evaluate(space, x); };
    ValidationSummary validation =
        validate_candidates(rows, table, make_predictor(model), oracle, cfg.validation_cases);
    write_validation_csv(validation, path("validation.csv"));

    // reports
    ParetoReport pareto = build_pareto_report(rows, table);
    write_pareto_csv(pareto, space, table, path("pareto.csv"));
    export_parallel_coordinates(pareto.solutions, table, space, path("parallel_coords.csv"),
                                path("parallel_coords.meta.json"));
    Dataset solution_set;
    solution_set.provenance = Provenance::BuiltinOracle;
    for (const auto& row : rows) {
        DataRow r;
        r.x = row.x;
        auto y = ensemble_predict_physical(model, row.x);
        std::copy(y.begin(), y.end(), r.y.begin());
        r.feasible = row.obj.feasible;
        solution_set.rows.push_back(std::move(r));
    }
    std::map<std::string, Dataset> sets;
    sets[cfg.ga.algorithm == Algo::Nsga2 ? "nsga2" : "nsga3"] = std::move(solution_set);
    write_violin_json(dataset, sets, path("violin.json"));

    PipelineResult out;
    out.out_dir = out_dir;
    out.arch = arch;
    out.metrics = metrics;
    out.dataset_rows = dataset.rows.size();
    out.feasible_rows = dataset.feasible_count();
    out.pareto_size = pareto.solutions.size();
    out.validation_mean_discrepancy = validation.overall_mean;
    return out;
}

} // namespace fzopt
