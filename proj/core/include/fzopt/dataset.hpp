#ifndef FZOPT_DATASET_HPP
#define FZOPT_DATASET_HPP

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fzopt/param_space.hpp"

namespace fzopt {

inline constexpr std::size_t kNumInputs = 12;
inline constexpr std::size_t kNumOutputs = 6;

enum class Provenance { BuiltinOracle, Ingested };

struct DataRow {
    std::vector<double> x;              // physical units, arity kNumInputs
    std::array<double, kNumOutputs> y{};
    bool feasible = true;
};

/// Rows of (x, y, feasible). Infeasible rows are kept in files and in
/// memory but excluded from the training view.
struct Dataset {
    std::vector<DataRow> rows;
    Provenance provenance = Provenance::BuiltinOracle;

    std::size_t size() const { return rows.size(); }
    std::size_t feasible_count() const;

    /// Feasible rows only; what the surrogate trains on.
    Dataset feasible_view() const;
};

/// Fits per-column min-max on this dataset's x and y columns and returns
/// the dataset mapped to [0,1] together with the fitted scaler. Requires
/// >= 2 distinct values per column.
std::pair<Dataset, Scaler> scale_fit_transform(const Dataset& data);

/// Applies an already fitted scaler (e.g. to a held-out test split).
Dataset scale_with(const Dataset& data, const Scaler& scaler);

/// CSV header `x1..x12,y1..y6,feasible`, feasible in {0,1}, LF newlines.
void write_dataset_csv(const Dataset& data, const std::string& path);

/// Parses a dataset CSV. A missing `feasible` column defaults to true.
/// Malformed rows are reported with their line numbers.
Dataset ingest_csv(const std::string& path);

} // namespace fzopt

#endif
