#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "fzopt/nsga.hpp"
#include "fzopt/objectives.hpp"
#include "fzopt/oracle.hpp"

using namespace fzopt;

namespace {

Individual make_ind(std::vector<double> values, bool feasible = true, double violation = 0.0) {
    Individual ind;
    ind.obj.values = std::move(values);
    ind.obj.feasible = feasible;
    ind.obj.total_violation = violation;
    return ind;
}

// reference stratification: repeatedly peel the non-dominated subset
std::vector<std::vector<std::size_t>> brute_force_fronts(const std::vector<Individual>& pop) {
    std::vector<std::size_t> remaining(pop.size());
    std::iota(remaining.begin(), remaining.end(), std::size_t{0});
    std::vector<std::vector<std::size_t>> fronts;
    while (!remaining.empty()) {
        std::vector<std::size_t> front, rest;
        for (std::size_t i : remaining) {
            bool dominated = false;
            for (std::size_t j : remaining)
                if (j != i && dominates(pop[j], pop[i])) {
                    dominated = true;
                    break;
                }
            (dominated ? rest : front).push_back(i);
        }
        fronts.push_back(std::move(front));
        remaining = std::move(rest);
    }
    return fronts;
}

std::vector<Individual> random_population(std::size_t n, std::size_t o, Rng& rng,
                                          double infeasible_rate = 0.2) {
    std::vector<Individual> pop;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> v(o);
        for (auto& x : v) x = rng.uniform(0.0, 1.0);
        bool feasible = rng.uniform() >= infeasible_rate;
        pop.push_back(make_ind(std::move(v), feasible, feasible ? 0.0 : rng.uniform(0.0, 2.0)));
    }
    return pop;
}

} // namespace

TEST_CASE("constrained dominance rules") {
    auto a = make_ind({1.0, 2.0});
    auto b = make_ind({2.0, 2.0});
    CHECK(dominates(a, b));
    CHECK_FALSE(dominates(b, a));

    auto c = make_ind({2.0, 1.0});
    CHECK_FALSE(dominates(a, c));
    CHECK_FALSE(dominates(c, a));

    auto infeasible = make_ind({0.0, 0.0}, false, 0.5);
    CHECK(dominates(a, infeasible));
    CHECK_FALSE(dominates(infeasible, a));

    auto worse_infeasible = make_ind({0.0, 0.0}, false, 1.5);
    CHECK(dominates(infeasible, worse_infeasible));

    CHECK_FALSE(dominates(a, a)); // needs strict improvement somewhere
    CHECK_THROWS_AS(dominates(a, make_ind({1.0, 2.0, 3.0})), ValidationError);
}

TEST_CASE("fast sort on the four-point example") {
    std::vector<Individual> pop = {make_ind({1, 1}), make_ind({1, 2}), make_ind({2, 1}),
                                   make_ind({2, 2})};
    auto fronts = fast_nondominated_sort(pop);
    REQUIRE(fronts.size() == 3);
    CHECK(fronts[0] == std::vector<std::size_t>{0});
    CHECK(std::set<std::size_t>(fronts[1].begin(), fronts[1].end()) == std::set<std::size_t>{1, 2});
    CHECK(fronts[2] == std::vector<std::size_t>{3});
}

TEST_CASE("identical vectors form a single front") {
    std::vector<Individual> pop(5, make_ind({3.0, 3.0, 3.0}));
    auto fronts = fast_nondominated_sort(pop);
    REQUIRE(fronts.size() == 1);
    CHECK(fronts[0].size() == 5);
}

TEST_CASE("fast sort equals brute force on random 8-objective populations") {
    Rng rng(424242);
    for (int rep = 0; rep < 5; ++rep) {
        auto pop = random_population(200, 8, rng);
        auto fast = fast_nondominated_sort(pop);
        auto brute = brute_force_fronts(pop);
        REQUIRE(fast.size() == brute.size());
        for (std::size_t f = 0; f < fast.size(); ++f) {
            CHECK(std::set<std::size_t>(fast[f].begin(), fast[f].end()) ==
                  std::set<std::size_t>(brute[f].begin(), brute[f].end()));
        }
    }
}

TEST_CASE("crowding distance hand example") {
    std::vector<std::vector<double>> front = {{0.0, 1.0}, {0.4, 0.5}, {1.0, 0.0}};
    auto d = crowding_distance(front);
    CHECK(std::isinf(d[0]));
    CHECK(std::isinf(d[2]));
    CHECK(d[1] == doctest::Approx(2.0).epsilon(1e-12));

    // fronts of one or two individuals are all-boundary
    CHECK(std::isinf(crowding_distance({{1.0, 2.0}})[0]));
    auto two = crowding_distance({{1.0, 2.0}, {2.0, 1.0}});
    CHECK(std::isinf(two[0]));
    CHECK(std::isinf(two[1]));

    // duplicated interior points have zero gap
    std::vector<std::vector<double>> dup = {{0.0, 3.0}, {1.0, 1.0}, {1.0, 1.0}, {3.0, 0.0}};
    auto dd = crowding_distance(dup);
    CHECK(dd[1] + dd[2] > 0.0); // neighbors differ
    std::vector<std::vector<double>> dup3 = {{0.0, 3.0}, {1.0, 1.0}, {1.0, 1.0}, {1.0, 1.0},
                                             {3.0, 0.0}};
    auto d3 = crowding_distance(dup3);
    CHECK(d3[2] == 0.0); // fully surrounded by identical points
}

TEST_CASE("das-dennis counts and layouts") {
    CHECK(das_dennis_count(8, 12) == 50388);
    CHECK(das_dennis_count(3, 2) == 6);

    auto line = das_dennis(2, 4);
    REQUIRE(line.points.size() == 5);
    std::set<std::pair<double, double>> pts;
    for (const auto& p : line.points) pts.insert({p[0], p[1]});
    CHECK(pts == std::set<std::pair<double, double>>{
                     {0.0, 1.0}, {0.25, 0.75}, {0.5, 0.5}, {0.75, 0.25}, {1.0, 0.0}});

    auto six = das_dennis(3, 2);
    CHECK(six.points.size() == 6);
    for (const auto& p : six.points) {
        double sum = 0.0;
        for (double c : p) {
            CHECK(c >= 0.0);
            sum += c;
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK_THROWS_AS(das_dennis(1, 4), ValidationError);
}

TEST_CASE("niche selection keeps whole fronts and associates everyone") {
    auto refs = das_dennis(2, 4);
    std::vector<std::vector<double>> values = {{0.1, 0.9}, {0.5, 0.5}, {0.9, 0.1}, {0.3, 0.7}};
    std::vector<std::size_t> partial = {0, 1, 2, 3};

    auto all = niche_select(values, {}, partial, refs, 4, 1);
    CHECK(std::set<std::size_t>(all.begin(), all.end()) == std::set<std::size_t>{0, 1, 2, 3});

    // single reference point: selection ordered by perpendicular distance
    ReferencePointSet one;
    one.objectives = 2;
    one.granularity = 1;
    one.points = {{0.5, 0.5}};
    std::vector<std::vector<double>> vals2 = {{0.9, 0.1}, {0.5, 0.5}, {0.2, 0.8}};
    auto picked = niche_select(vals2, {}, {0, 1, 2}, one, 2, 1);
    REQUIRE(picked.size() == 2);
    CHECK(picked[0] == 1); // on the diagonal, distance 0 after normalization
}

TEST_CASE("sbx is mean-preserving and respects bounds") {
    GenomeBox wide;
    wide.low.assign(3, -10.0);
    wide.high.assign(3, 11.0);
    Rng rng(5);

    std::vector<double> p1 = {0.2, 0.5, 0.9};
    std::vector<double> p2 = {0.8, 0.5, 0.1};
    for (int rep = 0; rep < 200; ++rep) {
        auto [c1, c2] = sbx_crossover(p1, p2, 15.0, wide, rng);
        for (std::size_t g = 0; g < 3; ++g)
            CHECK(c1[g] + c2[g] == doctest::Approx(p1[g] + p2[g]).epsilon(1e-12));
    }

    // identical parents are a fixed point
    auto [s1, s2] = sbx_crossover(p1, p1, 15.0, wide, rng);
    CHECK(s1 == p1);
    CHECK(s2 == p1);

    // clipped variant stays in a tight box over many draws
    GenomeBox tight;
    tight.low.assign(3, 0.0);
    tight.high.assign(3, 1.0);
    Rng rng2(6);
    for (int rep = 0; rep < 100000; ++rep) {
        auto [c1, c2] = sbx_crossover(p1, p2, 15.0, tight, rng2);
        for (std::size_t g = 0; g < 3; ++g) {
            CHECK(c1[g] >= 0.0);
            CHECK(c1[g] <= 1.0);
            CHECK(c2[g] >= 0.0);
            CHECK(c2[g] <= 1.0);
        }
    }
}

TEST_CASE("polynomial mutation frequency and bounds") {
    GenomeBox box;
    box.low.assign(1, 0.0);
    box.high.assign(1, 1.0);

    Rng rng(9);
    std::vector<double> x = {0.5};
    auto same = polynomial_mutation(x, 20.0, 0.0, box, rng);
    CHECK(same == x);

    // gene at a bound moves inward only
    Rng rng2(10);
    std::vector<double> at_low = {0.0};
    std::vector<double> at_high = {1.0};
    for (int rep = 0; rep < 2000; ++rep) {
        auto m1 = polynomial_mutation(at_low, 20.0, 1.0, box, rng2);
        CHECK(m1[0] >= 0.0);
        CHECK(m1[0] <= 1.0);
        auto m2 = polynomial_mutation(at_high, 20.0, 1.0, box, rng2);
        CHECK(m2[0] >= 0.0);
        CHECK(m2[0] <= 1.0);
    }

    // empirical per-gene rate approximately p_m
    Rng rng3(11);
    std::size_t mutated = 0;
    const std::size_t draws = 100000;
    for (std::size_t rep = 0; rep < draws; ++rep) {
        auto m = polynomial_mutation(x, 20.0, 0.05, box, rng3);
        if (m[0] != x[0]) ++mutated;
    }
    double rate = static_cast<double>(mutated) / static_cast<double>(draws);
    CHECK(rate > 0.04);
    CHECK(rate < 0.06);
}

TEST_CASE("genome decoding floors the integer gene into its set") {
    auto space = table1_space();
    auto box = genome_box(space);
    CHECK(box.high[2] == doctest::Approx(5.999));
    std::vector<double> genome(12);
    for (std::size_t d = 0; d < 12; ++d) genome[d] = space.param(d).low;
    for (double g : {2.0, 2.4, 3.999, 5.0, 5.999}) {
        genome[2] = g;
        auto x = decode_genome(space, genome);
        CHECK(x[2] == std::floor(g));
        CHECK(validate_point(space, x).valid);
    }
}

namespace {

// cheap synthetic evaluator used by loop tests: three smooth objectives
// of the decoded point plus one constraint on x1
ObjectiveVector toy_evaluator(std::span<const double> x) {
    ObjectiveVector v;
    double u1 = (x[0] - 75.0) / 25.0;
    double u2 = (x[1] - 1.0) / 2.5;
    v.values = {u1 * u1, (u1 - 1.0) * (u1 - 1.0) + u2, std::abs(u2 - 0.5)};
    double violation = std::max(0.0, (80.0 - x[0]) / 80.0);
    v.total_violation = violation;
    v.feasible = violation == 0.0;
    return v;
}

} // namespace

TEST_CASE("run without variation keeps genomes constant") {
    GaConfig cfg;
    cfg.population = 20;
    cfg.generations = 4;
    cfg.crossover_prob = 0.0;
    cfg.mutation_prob = 0.0;
    cfg.seed = 12;
    auto space = table1_space();
    auto result = nsga_run(cfg, space, toy_evaluator);
    REQUIRE(result.population.size() == 20);

    auto initial = lhs_sample(space, 20, mix_seed(12, 0));
    std::set<std::vector<double>> allowed(initial.rows.begin(), initial.rows.end());
    for (const auto& ind : result.population) CHECK(allowed.count(ind.genome) == 1);
}

TEST_CASE("nsga2 loop output is stratified, in-box and reproducible") {
    GaConfig cfg;
    cfg.population = 30;
    cfg.generations = 8;
    cfg.seed = 3;
    auto space = table1_space();
    auto result = nsga_run(cfg, space, toy_evaluator);

    // every genome in the box, decoded integer gene in its set
    auto box = genome_box(space);
    for (const auto& ind : result.population) {
        for (std::size_t d = 0; d < 12; ++d) {
            CHECK(ind.genome[d] >= box.low[d]);
            CHECK(ind.genome[d] <= box.high[d]);
        }
        auto x = decode_genome(space, ind.genome);
        CHECK((x[2] == 2.0 || x[2] == 3.0 || x[2] == 4.0 || x[2] == 5.0));
    }

    // stored ranks agree with a post-hoc re-sort
    auto fronts = fast_nondominated_sort(result.population);
    for (std::size_t f = 0; f < fronts.size(); ++f)
        for (std::size_t i : fronts[f]) CHECK(result.population[i].rank == static_cast<int>(f));

    // elitism: best feasible stored value per objective is non-increasing
    for (std::size_t j = 0; j < 3; ++j) {
        for (std::size_t g = 1; g < result.stats.size(); ++g) {
            double prev = result.stats[g - 1].best[j];
            double cur = result.stats[g].best[j];
            if (!std::isnan(prev) && !std::isnan(cur)) CHECK(cur <= prev + 1e-12);
        }
    }

    // determinism
    auto again = nsga_run(cfg, space, toy_evaluator);
    REQUIRE(again.population.size() == result.population.size());
    for (std::size_t i = 0; i < result.population.size(); ++i)
        CHECK(again.population[i].genome == result.population[i].genome);

    // thread count does not change results
    GaConfig threaded = cfg;
    threaded.threads = 4;
    auto parallel = nsga_run(threaded, space, toy_evaluator);
    for (std::size_t i = 0; i < result.population.size(); ++i)
        CHECK(parallel.population[i].genome == result.population[i].genome);
}

TEST_CASE("nsga3 loop runs with das-dennis niching") {
    GaConfig cfg;
    cfg.population = 24;
    cfg.generations = 6;
    cfg.algorithm = Algo::Nsga3;
    cfg.granularity = 4;
    cfg.seed = 15;
    auto space = table1_space();
    auto result = nsga_run(cfg, space, toy_evaluator);
    REQUIRE(result.population.size() == 24);
    auto again = nsga_run(cfg, space, toy_evaluator);
    for (std::size_t i = 0; i < result.population.size(); ++i)
        CHECK(again.population[i].genome == result.population[i].genome);
}

TEST_CASE("non-finite evaluator output becomes worst-infeasible") {
    GaConfig cfg;
    cfg.population = 10;
    cfg.generations = 2;
    cfg.seed = 8;
    auto evaluator = [](std::span<const double> x) {
        ObjectiveVector v = toy_evaluator(x);
        if (x[0] < 87.5) v.values[0] = std::numeric_limits<double>::quiet_NaN();
        return v;
    };
    auto result = nsga_run(cfg, table1_space(), evaluator);
    REQUIRE(result.population.size() == 10);
    for (const auto& ind : result.population)
        for (double v : ind.obj.values) CHECK(std::isfinite(v));
}

TEST_CASE("solutions and stats csv round-trip") {
    GaConfig cfg;
    cfg.population = 16;
    cfg.generations = 3;
    cfg.seed = 77;
    auto space = table1_space();
    auto result = nsga_run(cfg, space, toy_evaluator);

    auto dir = std::filesystem::temp_directory_path();
    auto sol_path = (dir / "fzopt_solutions_test.csv").string();
    auto stats_path = (dir / "fzopt_stats_test.csv").string();
    write_solutions_csv(result, space, sol_path);
    write_stats_csv(result, stats_path);

    auto rows = read_solutions_csv(sol_path);
    REQUIRE(rows.size() == result.population.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].algo == "nsga2");
        CHECK(rows[i].idx == i);
        auto x = decode_genome(space, result.population[i].genome);
        for (std::size_t d = 0; d < 12; ++d) CHECK(rows[i].x[d] == x[d]);
        for (std::size_t j = 0; j < 3; ++j)
            CHECK(rows[i].obj.values[j] == result.population[i].obj.values[j]);
        CHECK(rows[i].rank == result.population[i].rank);
    }

    // identical run produces byte-identical files
    auto sol2 = (dir / "fzopt_solutions_test2.csv").string();
    write_solutions_csv(nsga_run(cfg, space, toy_evaluator), space, sol2);
    std::ifstream a(sol_path), b(sol2);
    std::stringstream sa, sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    CHECK(sa.str() == sb.str());

    std::filesystem::remove(sol_path);
    std::filesystem::remove(sol2);
    std::filesystem::remove(stats_path);
}
