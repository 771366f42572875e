#ifndef FZOPT_OBJECTIVES_HPP
#define FZOPT_OBJECTIVES_HPP

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fzopt/dataset.hpp"

namespace fzopt {

enum class Direction { Maximize, Minimize, Interval };
enum class Cmp { Ge, Le };

struct Constraint {
    Cmp cmp = Cmp::Ge;
    double bound = 0.0;
    std::string unit;
};

/// Zero inside [lower, upper], linear outside; units disregarded.
struct IntervalPenalty {
    double lower = 0.0;
    double upper = 0.0;
};

/// One objective row: which quantity it reads (input or output column),
/// which way it is optimized, and the optional constraint/penalty.
struct ObjectiveSpec {
    int id = 0; // 1-based, O1..O8
    std::string name;
    enum class Source { Input, Output } source = Source::Input;
    std::size_t index = 0; // 0-based column into x or y
    Direction direction = Direction::Minimize;
    std::optional<Constraint> constraint;
    std::optional<IntervalPenalty> penalty;
};

/// Ordered objective list, data-driven; the shipped default is the
/// eight-row production table (see table2_objectives).
class ObjectiveTable {
public:
    ObjectiveTable() = default;
    explicit ObjectiveTable(std::vector<ObjectiveSpec> rows);

    const std::vector<ObjectiveSpec>& rows() const { return rows_; }
    std::size_t size() const { return rows_.size(); }
    void validate() const;

private:
    std::vector<ObjectiveSpec> rows_;
};

/// The eight production objectives: maximize crystal radius (x1 >= 85 mm),
/// maximize pulling rate (x2 >= 1.5 mm/min), maximize radial thermal
/// gradient (y1), minimize interface deflection (y2 <= 70 mm), minimize
/// exceed stress (y3 <= 80 MPa), minimize voltage (y4 <= 1200 V), minimize
/// EM inhomogeneity (y5 >= 0 W/m^2), and keep the Voronkov ratio (y6)
/// inside [1.3e-3, 2.2e-3] cm^2/(min K) via an interval penalty.
ObjectiveTable table2_objectives();

inline constexpr double kVoronkovLower = 1.3e-3;
inline constexpr double kVoronkovUpper = 2.2e-3;

/// (lower-gamma) below the window, (gamma-upper) above it, 0 inside.
/// Continuous, piecewise linear, unit magnitude disregarded.
double voronkov_penalty(double gamma, double lower = kVoronkovLower, double upper = kVoronkovUpper);

/// Normalized violation of one bound: max(0, (b-v)/|b|) for v >= b,
/// max(0, (v-b)/|b|) for v <= b; falls back to the raw excess when b = 0
/// so different units stay commensurable.
double constraint_violation(const Constraint& c, double value);

/// All entries in minimization orientation: maximize rows store the
/// negated raw value, interval rows store the penalty. feasible means
/// total_violation == 0.
struct ObjectiveVector {
    std::vector<double> values;
    double total_violation = 0.0;
    bool feasible = true;
};

using Predictor = std::function<std::array<double, kNumOutputs>(std::span<const double>)>;

ObjectiveVector evaluate_objectives(const ObjectiveTable& table, std::span<const double> x,
                                    std::span<const double, kNumOutputs> y);
ObjectiveVector evaluate_objectives(const ObjectiveTable& table, std::span<const double> x,
                                    const Predictor& predictor);

/// Display value of one objective entry as a user reads it (maximize rows
/// un-negated); used by the report exports.
double display_value(const ObjectiveSpec& spec, double stored);

// --- file format ---

/// JSON objective table: {"objectives":[{id,name,quantity,direction,
/// constraint?,penalty?}]} with quantity "x1".."x12" or "y1".."y6".
std::string objectives_to_json(const ObjectiveTable& table);
ObjectiveTable objectives_from_json(const std::string& text);
void write_objectives_json(const ObjectiveTable& table, const std::string& path);
ObjectiveTable read_objectives_json(const std::string& path);

} // namespace fzopt

#endif
