#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "fzopt/objectives.hpp"
#include "fzopt/rng.hpp"

using namespace fzopt;

TEST_CASE("voronkov penalty branches") {
    CHECK(std::abs(voronkov_penalty(1.0e-3) - 3.0e-4) <= 1e-15);
    CHECK(voronkov_penalty(1.5e-3) == 0.0);
    CHECK(std::abs(voronkov_penalty(3.0e-3) - 8.0e-4) <= 1e-15);
    // zero exactly on the closed interval, continuous at the knees
    CHECK(voronkov_penalty(kVoronkovLower) == 0.0);
    CHECK(voronkov_penalty(kVoronkovUpper) == 0.0);
    for (double g = 0.0; g <= 5e-3; g += 1e-5) {
        double p = voronkov_penalty(g);
        CHECK(p >= 0.0);
        if (g >= kVoronkovLower && g <= kVoronkovUpper) CHECK(p == 0.0);
    }
    // piecewise linear: slope magnitude 1 outside the window
    CHECK(voronkov_penalty(1.0e-3) - voronkov_penalty(1.1e-3) ==
          doctest::Approx(1e-4).epsilon(1e-9));
}

TEST_CASE("constraint violations are normalized by the bound") {
    Constraint ge85{Cmp::Ge, 85.0, "mm"};
    CHECK(constraint_violation(ge85, 80.0) == doctest::Approx((85.0 - 80.0) / 85.0).epsilon(1e-12));
    CHECK(constraint_violation(ge85, 90.0) == 0.0);

    Constraint le1200{Cmp::Le, 1200.0, "V"};
    CHECK(constraint_violation(le1200, 1250.0) == doctest::Approx(50.0 / 1200.0).epsilon(1e-12));
    CHECK(constraint_violation(le1200, 1100.0) == 0.0);

    Constraint ge0{Cmp::Ge, 0.0, "W/m^2"};
    CHECK(constraint_violation(ge0, 0.3) == 0.0);
    CHECK(constraint_violation(ge0, -0.2) == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("table rows match the production objective set") {
    auto table = table2_objectives();
    REQUIRE(table.size() == 8);
    const auto& rows = table.rows();
    CHECK(rows[0].source == ObjectiveSpec::Source::Input);
    CHECK(rows[0].index == 0);
    CHECK(rows[0].direction == Direction::Maximize);
    CHECK(rows[0].constraint->bound == 85.0);
    CHECK(rows[1].constraint->bound == 1.5);
    CHECK(rows[2].direction == Direction::Maximize);
    CHECK_FALSE(rows[2].constraint.has_value());
    CHECK(rows[3].constraint->bound == 70.0);
    CHECK(rows[4].constraint->bound == 80.0);
    CHECK(rows[5].constraint->bound == 1200.0);
    CHECK(rows[6].constraint->cmp == Cmp::Ge);
    CHECK(rows[6].constraint->bound == 0.0);
    CHECK(rows[7].direction == Direction::Interval);
    CHECK(rows[7].penalty->lower == 1.3e-3);
    CHECK(rows[7].penalty->upper == 2.2e-3);
}

TEST_CASE("objective evaluation follows direction and constraint rules") {
    auto table = table2_objectives();
    std::vector<double> x = {90.0, 2.0, 3, 40, 2, 1, 2, 2.5, 50, 20, 0, 0.5};
    std::array<double, 6> y = {25.0, 40.0, 60.0, 1000.0, 1.0, 1.5e-3};
    auto v = evaluate_objectives(table, x, std::span<const double, 6>(y));
    REQUIRE(v.values.size() == 8);
    CHECK(v.values[0] == -90.0);
    CHECK(v.values[1] == -2.0);
    CHECK(v.values[2] == -25.0);
    CHECK(v.values[3] == 40.0);
    CHECK(v.values[4] == 60.0);
    CHECK(v.values[5] == 1000.0);
    CHECK(v.values[6] == 1.0);
    CHECK(v.values[7] == 0.0);
    CHECK(v.total_violation == 0.0);
    CHECK(v.feasible);

    SUBCASE("single active constraint flips feasibility") {
        x[0] = 80.0;
        auto v2 = evaluate_objectives(table, x, std::span<const double, 6>(y));
        CHECK_FALSE(v2.feasible);
        CHECK(v2.total_violation == doctest::Approx(5.0 / 85.0).epsilon(1e-12));
    }

    SUBCASE("penalty value does not affect feasibility") {
        y[5] = 3.0e-3;
        auto v3 = evaluate_objectives(table, x, std::span<const double, 6>(y));
        CHECK(v3.values[7] == doctest::Approx(8.0e-4).epsilon(1e-12));
        CHECK(v3.feasible);
    }
}

TEST_CASE("feasibility iff every bound holds") {
    auto table = table2_objectives();
    Rng rng(88);
    for (int rep = 0; rep < 300; ++rep) {
        std::vector<double> x = {rng.uniform(75.0, 100.0), rng.uniform(1.0, 3.5), 3, 40, 2, 1,
                                 2,                        2.5,                   50, 20, 0, 0.5};
        std::array<double, 6> y = {rng.uniform(10.0, 40.0), rng.uniform(0.0, 100.0),
                                   rng.uniform(0.0, 120.0), rng.uniform(600.0, 1400.0),
                                   rng.uniform(0.0, 4.0),   rng.uniform(5e-4, 7e-3)};
        auto v = evaluate_objectives(table, x, std::span<const double, 6>(y));
        bool all_bounds = x[0] >= 85.0 && x[1] >= 1.5 && y[1] <= 70.0 && y[2] <= 80.0 &&
                          y[3] <= 1200.0 && y[4] >= 0.0;
        CHECK(v.feasible == all_bounds);
        CHECK((v.total_violation == 0.0) == all_bounds);
    }
}

TEST_CASE("argmin of stored values is argmax of raw maximize quantities") {
    auto table = table2_objectives();
    Rng rng(17);
    std::vector<std::vector<double>> xs;
    std::vector<ObjectiveVector> vs;
    for (int i = 0; i < 40; ++i) {
        std::vector<double> x = {rng.uniform(75.0, 100.0), rng.uniform(1.0, 3.5), 3, 40, 2, 1,
                                 2,                        2.5,                   50, 20, 0, 0.5};
        std::array<double, 6> y = {rng.uniform(10.0, 40.0), 30.0, 50.0, 900.0, 1.0, 1.5e-3};
        xs.push_back(x);
        vs.push_back(evaluate_objectives(table, x, std::span<const double, 6>(y)));
    }
    auto argmin_stored = [&](std::size_t j) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < vs.size(); ++i)
            if (vs[i].values[j] < vs[best].values[j]) best = i;
        return best;
    };
    // objective 1 stores -x1: minimizing it maximizes the raw radius
    std::size_t best_o1 = argmin_stored(0);
    for (const auto& x : xs) CHECK(x[0] <= xs[best_o1][0]);
    // display values un-negate maximize rows
    CHECK(display_value(table.rows()[0], vs[best_o1].values[0]) == xs[best_o1][0]);
}

TEST_CASE("objective table json round-trips and validates") {
    auto table = table2_objectives();
    auto text = objectives_to_json(table);
    auto back = objectives_from_json(text);
    CHECK(objectives_to_json(back) == text);
    REQUIRE(back.size() == 8);
    CHECK(back.rows()[7].penalty->lower == 1.3e-3);
    CHECK(back.rows()[5].constraint->bound == 1200.0);

    CHECK_THROWS_AS(objectives_from_json("{"), DataError);
    CHECK_THROWS_AS(objectives_from_json("{\"objectives\":[{\"id\":1,\"name\":\"a\","
                                         "\"quantity\":\"z9\",\"direction\":\"minimize\"}]}"),
                    DataError);
}
