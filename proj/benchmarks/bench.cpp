#include <benchmark/benchmark.h>

#include "fzopt/ensemble.hpp"
#include "fzopt/nsga.hpp"
#include "fzopt/oracle.hpp"
#include "fzopt/param_space.hpp"

namespace {

using namespace fzopt;

void bm_lhs_sample(benchmark::State& state) {
    auto space = table1_space();
    std::uint64_t seed = 0;
    for (auto _ : state) {
        auto m = lhs_sample(space, static_cast<std::size_t>(state.range(0)), seed++);
        benchmark::DoNotOptimize(m.rows.data());
    }
}
BENCHMARK(bm_lhs_sample)->Arg(100)->Arg(2500);

void bm_oracle_evaluate(benchmark::State& state) {
    auto space = table1_space();
    auto design = lhs_sample(space, 256, 3);
    std::size_t i = 0;
    for (auto _ : state) {
        auto out = oracle_evaluate(space, design.rows[i++ % design.rows.size()]);
        benchmark::DoNotOptimize(out.y);
    }
}
BENCHMARK(bm_oracle_evaluate);

void bm_das_dennis(benchmark::State& state) {
    for (auto _ : state) {
        auto set = das_dennis(8, static_cast<int>(state.range(0)));
        benchmark::DoNotOptimize(set.points.data());
    }
}
BENCHMARK(bm_das_dennis)->Arg(3)->Arg(6)->Arg(12);

std::vector<Individual> random_population(std::size_t n, std::size_t o, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Individual> pop(n);
    for (auto& ind : pop) {
        ind.obj.values.resize(o);
        for (auto& v : ind.obj.values) v = rng.uniform(0.0, 1.0);
        ind.obj.feasible = rng.uniform() >= 0.1;
        ind.obj.total_violation = ind.obj.feasible ? 0.0 : rng.uniform(0.0, 1.0);
    }
    return pop;
}

void bm_nondominated_sort(benchmark::State& state) {
    auto pop = random_population(static_cast<std::size_t>(state.range(0)), 8, 11);
    for (auto _ : state) {
        auto fronts = fast_nondominated_sort(pop);
        benchmark::DoNotOptimize(fronts.data());
    }
}
BENCHMARK(bm_nondominated_sort)->Arg(100)->Arg(200)->Arg(500);

void bm_crowding_distance(benchmark::State& state) {
    auto pop = random_population(static_cast<std::size_t>(state.range(0)), 8, 12);
    std::vector<std::vector<double>> values;
    values.reserve(pop.size());
    for (const auto& ind : pop) values.push_back(ind.obj.values);
    for (auto _ : state) {
        auto dist = crowding_distance(values);
        benchmark::DoNotOptimize(dist.data());
    }
}
BENCHMARK(bm_crowding_distance)->Arg(200)->Arg(500);

void bm_variation(benchmark::State& state) {
    auto space = table1_space();
    auto box = genome_box(space);
    auto design = lhs_sample(space, 64, 9);
    Rng rng(21);
    std::size_t i = 0;
    for (auto _ : state) {
        const auto& p1 = design.rows[i % design.rows.size()];
        const auto& p2 = design.rows[(i + 1) % design.rows.size()];
        ++i;
        auto [c1, c2] = sbx_crossover(p1, p2, 15.0, box, rng);
        auto m = polynomial_mutation(c1, 20.0, 0.05, box, rng);
        benchmark::DoNotOptimize(m.data());
    }
}
BENCHMARK(bm_variation);

void bm_network_forward(benchmark::State& state) {
    Architecture arch{{32, 32, 32}};
    Network net = init_network(arch, 5);
    Eigen::MatrixXd X = Eigen::MatrixXd::Random(12, state.range(0));
    for (auto _ : state) {
        Eigen::MatrixXd y = forward(net, X);
        benchmark::DoNotOptimize(y.data());
    }
}
BENCHMARK(bm_network_forward)->Arg(1)->Arg(32)->Arg(256);

void bm_train_epochs(benchmark::State& state) {
    auto data = generate_dataset(table1_space(), 500, 2).feasible_view();
    auto [scaled, scaler] = scale_fit_transform(data);
    auto [X, Y] = to_matrices(scaled);
    Architecture arch{{32, 32, 32}};
    TrainConfig cfg;
    cfg.epochs = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto result = train(arch, X, Y, cfg);
        benchmark::DoNotOptimize(result.loss_history.data());
    }
}
BENCHMARK(bm_train_epochs)->Arg(1)->Arg(10)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
