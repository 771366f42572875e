#ifndef FZOPT_NSGA_HPP
#define FZOPT_NSGA_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "fzopt/objectives.hpp"
#include "fzopt/param_space.hpp"
#include "fzopt/rng.hpp"

namespace fzopt {

/// One candidate solution. The genome stays in physical units; integer
/// dimensions are carried as continuous genes and decoded by floor at
/// evaluation and export time.
struct Individual {
    std::vector<double> genome;
    ObjectiveVector obj;
    int rank = 0;          // 0-based front index
    double crowding = 0.0; // +inf at front boundaries
    int niche = -1;        // reference-point index (NSGA-III)
};

enum class Algo { Nsga2, Nsga3 };

struct GaConfig {
    std::size_t population = 500;
    int generations = 250;
    double crossover_prob = 0.7; // per pair
    double mutation_prob = 0.05; // per gene
    double eta_c = 15.0;
    double eta_m = 20.0;
    Algo algorithm = Algo::Nsga2;
    int granularity = 12; // NSGA-III reference-point granularity
    std::uint64_t seed = 0;
    int threads = 1; // evaluation workers; results independent of count

    void validate() const;
};

/// Uniform simplex lattice directions used for NSGA-III niching.
struct ReferencePointSet {
    std::vector<std::vector<double>> points;
    int objectives = 0;
    int granularity = 0;
};

/// C(o+g-1, g), throwing on overflow rather than wrapping.
std::uint64_t das_dennis_count(int o, int g);

/// All compositions of g into o non-negative parts, scaled by 1/g.
ReferencePointSet das_dennis(int o, int g);

/// Constrained dominance: feasible beats infeasible, infeasibles compare
/// by total violation, feasibles by Pareto dominance on stored values.
bool dominates(const Individual& a, const Individual& b);

/// Deb's O(o n^2) front stratification under constrained dominance.
std::vector<std::vector<std::size_t>> fast_nondominated_sort(const std::vector<Individual>& pop);

/// NSGA-II diversity metric on one front's stored objective values.
/// Boundary individuals get +inf; zero-range objectives contribute 0.
std::vector<double> crowding_distance(const std::vector<std::vector<double>>& front_values);

/// NSGA-III last-front selection. `values` holds stored objectives for
/// every index mentioned in `already_selected` and `partial_front`;
/// normalization uses the per-objective min/max over that merged set.
/// Returns k indices drawn from partial_front, deterministic given seed.
std::vector<std::size_t> niche_select(const std::vector<std::vector<double>>& values,
                                      const std::vector<std::size_t>& already_selected,
                                      const std::vector<std::size_t>& partial_front,
                                      const ReferencePointSet& refs, std::size_t k,
                                      std::uint64_t seed);

/// Variation-operator box: continuous range per gene. Integer dimensions
/// widen to [low, high+0.999] so floor decoding reaches every value.
struct GenomeBox {
    std::vector<double> low;
    std::vector<double> high;
};
GenomeBox genome_box(const ParameterSpace& space);

/// Physical point from a genome: floor + clamp on integer dimensions.
std::vector<double> decode_genome(const ParameterSpace& space, std::span<const double> genome);

/// Simulated binary crossover, per-gene index eta_c, children clipped to
/// the box. Pre-clip children preserve the per-gene parent sum.
std::pair<std::vector<double>, std::vector<double>> sbx_crossover(std::span<const double> p1,
                                                                  std::span<const double> p2,
                                                                  double eta_c, const GenomeBox& box,
                                                                  Rng& rng);

/// Bounded polynomial mutation, per-gene probability p_m, result in box.
std::vector<double> polynomial_mutation(std::span<const double> x, double eta_m, double p_m,
                                        const GenomeBox& box, Rng& rng);

using GaEvaluator = std::function<ObjectiveVector(std::span<const double>)>;

struct GenStats {
    int gen = 0;
    std::size_t feasible = 0;
    std::size_t front1 = 0;
    std::vector<double> best; // per-objective best stored value among feasible
};

struct GaResult {
    std::vector<Individual> population; // final, with rank/crowding filled in
    std::vector<GenStats> stats;
    Algo algorithm = Algo::Nsga2;
    int final_generation = 0;
};

/// Full generational loop: LHS initialization, binary tournament, SBX +
/// polynomial mutation, (mu+lambda) environmental selection by fronts
/// then crowding (NSGA-II) or Das-Dennis niching (NSGA-III). The
/// evaluator receives decoded physical points. Non-finite evaluator
/// output marks the individual worst-infeasible and the run continues.
GaResult nsga_run(const GaConfig& cfg, const ParameterSpace& space, const GaEvaluator& evaluator);

// --- file formats ---

/// Solutions CSV: algo,gen,idx,x1..x12,O1..O8,violation,rank,crowding.
void write_solutions_csv(const GaResult& result, const ParameterSpace& space,
                         const std::string& path);
/// Per-generation stats CSV: gen,feasible,front1,best_O1..best_O8.
void write_stats_csv(const GaResult& result, const std::string& path);

/// Rows of a solutions CSV read back for reporting.
struct SolutionRow {
    std::string algo;
    int gen = 0;
    std::size_t idx = 0;
    std::vector<double> x;
    ObjectiveVector obj;
    int rank = 0;
    double crowding = 0.0;
};
std::vector<SolutionRow> read_solutions_csv(const std::string& path);

} // namespace fzopt

#endif
