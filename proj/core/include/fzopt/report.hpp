#ifndef FZOPT_REPORT_HPP
#define FZOPT_REPORT_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fzopt/dataset.hpp"
#include "fzopt/ensemble.hpp"
#include "fzopt/nsga.hpp"
#include "fzopt/objectives.hpp"
#include "fzopt/oracle.hpp"

namespace fzopt {

/// Constrained dominance on bare objective vectors (same rules as the
/// Individual overload).
bool dominates(const ObjectiveVector& a, const ObjectiveVector& b);

/// Maximal mutually non-dominated subset under constrained dominance.
/// Duplicate genomes collapse to their first occurrence. Idempotent.
std::vector<SolutionRow> extract_pareto(const std::vector<SolutionRow>& solutions);

/// Non-dominated feasible solutions plus the per-objective top-5
/// highlight sets (best raw value per objective).
struct ParetoReport {
    std::vector<SolutionRow> solutions;
    std::vector<std::vector<std::size_t>> top5; // per objective, indices into solutions
};
ParetoReport build_pareto_report(const std::vector<SolutionRow>& all, const ObjectiveTable& table);

void write_pareto_csv(const ParetoReport& report, const ParameterSpace& space,
                      const ObjectiveTable& table, const std::string& path);

/// Parallel-coordinate export: one row per solution, objective columns in
/// raw display direction (maximize un-negated) followed by the inputs.
/// The sidecar JSON carries per-axis min/max for plotting tools.
void export_parallel_coordinates(const std::vector<SolutionRow>& solutions,
                                 const ObjectiveTable& table, const ParameterSpace& space,
                                 const std::string& csv_path, const std::string& meta_path);

/// Five-number summary plus a fixed 32-bin histogram of one column.
struct ColumnSummary {
    double min = 0.0, q1 = 0.0, median = 0.0, q3 = 0.0, max = 0.0;
    std::array<std::size_t, 32> histogram{};
};
ColumnSummary summarize_column(std::vector<double> values);

/// Distribution summary JSON: x/y columns of the dataset next to each
/// named solution set (violin-plot source data).
void write_violin_json(const Dataset& dataset,
                       const std::map<std::string, Dataset>& solution_sets,
                       const std::string& path);

using OracleFn = std::function<OracleOutputs(std::span<const double>)>;

struct ValidationRecord {
    std::size_t solution_idx = 0;
    std::vector<double> x;
    std::array<double, kNumOutputs> predicted{};
    std::array<double, kNumOutputs> recomputed{};
    std::array<double, kNumOutputs> discrepancy{}; // |pred-true|/max(|true|,1e-12)
    double case_mean = 0.0;
    bool recomputation_feasible = true;
    bool failed = false;
    std::string error;
};

struct ValidationSummary {
    std::vector<ValidationRecord> records;
    std::array<double, kNumOutputs> mean_discrepancy{}; // over non-failed cases
    double overall_mean = 0.0;                          // mean of case means
};

/// Picks n candidates (per-objective best among feasible front-1 rows,
/// deduplicated, then filled by descending crowding), queries the
/// predictor, recomputes with the oracle and reports per-output relative
/// discrepancies. Oracle failures are recorded per candidate, not fatal.
ValidationSummary validate_candidates(const std::vector<SolutionRow>& solutions,
                                      const ObjectiveTable& table, const Predictor& predictor,
                                      const OracleFn& oracle, std::size_t n);

void write_validation_csv(const ValidationSummary& summary, const std::string& path);

} // namespace fzopt

#endif
