#ifndef FZOPT_PARAM_SPACE_HPP
#define FZOPT_PARAM_SPACE_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fzopt/errors.hpp"

namespace fzopt {

enum class ParamKind { Continuous, Integer };

/// One input dimension: closed physical range [low, high].
struct ParameterSpec {
    std::string name;
    ParamKind kind = ParamKind::Continuous;
    double low = 0.0;
    double high = 1.0;
    std::string unit;

    /// Number of admissible integer values (Integer kind only).
    int integer_count() const { return static_cast<int>(high - low) + 1; }
};

/// Ordered list of input dimensions. The shipped default (table1_space)
/// has the twelve floating-zone inputs; the sampling and scaling code is
/// dimension-agnostic.
class ParameterSpace {
public:
    ParameterSpace() = default;
    explicit ParameterSpace(std::vector<ParameterSpec> params);

    const std::vector<ParameterSpec>& params() const { return params_; }
    const ParameterSpec& param(std::size_t i) const { return params_[i]; }
    std::size_t size() const { return params_.size(); }

    /// Throws ValidationError on empty spaces, low >= high, duplicate
    /// names, or non-integral bounds on integer dimensions.
    void validate() const;

    /// Min-max normalization of one coordinate to [0,1].
    double to_unit(std::size_t dim, double v) const {
        const auto& p = params_[dim];
        return (v - p.low) / (p.high - p.low);
    }
    double from_unit(std::size_t dim, double u) const {
        const auto& p = params_[dim];
        return p.low + u * (p.high - p.low);
    }

private:
    std::vector<ParameterSpec> params_;
};

/// The twelve model inputs: crystal radius/pulling rate, inductor geometry
/// (side slit count/length/width, main slit width, bottom angle, frequency)
/// and reflector geometry (height, radial offset, position, emissivity).
/// x3 (side slit count) is the sole integer dimension, values {2,3,4,5}.
ParameterSpace table1_space();

struct PointVerdict {
    bool valid = true;
    std::string reason;
};

/// True iff every entry is within range and integer dimensions hold
/// integral values. Names the first offending column otherwise.
PointVerdict validate_point(const ParameterSpace& space, std::span<const double> x);

/// Per-column min-max state for inputs and outputs. scale/unscale is the
/// identity within 1e-12 relative; unseen points may map outside [0,1].
struct Scaler {
    struct Range {
        double min = 0.0;
        double max = 1.0;
    };
    std::vector<Range> x_ranges;
    std::vector<Range> y_ranges;

    static double to_unit(double v, Range r) { return (v - r.min) / (r.max - r.min); }
    static double from_unit(double u, Range r) { return r.min + u * (r.max - r.min); }

    std::vector<double> scale_x(std::span<const double> x) const;
    std::vector<double> unscale_x(std::span<const double> x) const;
    std::vector<double> scale_y(std::span<const double> y) const;
    std::vector<double> unscale_y(std::span<const double> y) const;
};

/// Fits one Range per column. Throws ValidationError when a column is
/// constant (degenerate scale) or has fewer than two rows.
std::vector<Scaler::Range> fit_ranges(const std::vector<std::vector<double>>& rows);

enum class LhsMode {
    Jitter,   // uniform position within each stratum (default)
    Midpoint, // stratum centers, for reproducible documentation figures
};

/// Sampled input combinations in physical units.
struct DesignMatrix {
    std::vector<std::vector<double>> rows;
    std::uint64_t seed = 0;
};

/// Latin hypercube sample of s points. Each dimension gets an independent
/// random stratum permutation; integer dimensions stratify the unit
/// interval and decode by floor(u*count)+low, clamped to high. Pure
/// function of (space, s, seed, mode).
DesignMatrix lhs_sample(const ParameterSpace& space, std::size_t s, std::uint64_t seed,
                        LhsMode mode = LhsMode::Jitter);

// --- file formats ---

/// CSV with header `x1..x12` (the space's names), LF newlines.
void write_design_csv(const DesignMatrix& m, const ParameterSpace& space, const std::string& path);
DesignMatrix read_design_csv(const ParameterSpace& space, const std::string& path);

/// JSON space definition: {"params":[{name,kind,low,high,unit},...]}.
std::string space_to_json(const ParameterSpace& space);
ParameterSpace space_from_json(const std::string& text);
void write_space_json(const ParameterSpace& space, const std::string& path);
ParameterSpace read_space_json(const std::string& path);

} // namespace fzopt

#endif
