#ifndef FZOPT_ORACLE_HPP
#define FZOPT_ORACLE_HPP

#include <array>
#include <cstdint>
#include <span>

#include "fzopt/dataset.hpp"
#include "fzopt/param_space.hpp"

namespace fzopt {

/// Ground-truth outputs for one input combination. y holds the six model
/// outputs; gz is the axial thermal gradient behind y6, kept as a
/// diagnostic so the Voronkov identity y6 = (x2/10)/gz stays checkable.
struct OracleOutputs {
    std::array<double, kNumOutputs> y{};
    bool feasible = true;
    double gz = 0.0;
};

/// Analytic stand-in for the finite-element simulator. Emits the six
/// outputs of the production schema with ranges and qualitative trends
/// matching the process (stress grows with radius and pulling rate,
/// voltage falls with main slit width and grows with frequency, EM
/// inhomogeneity falls with slit count/length). Pure: same x, same bits.
///
/// Infeasible combinations model melt-core freezing: a highly emissive
/// reflector (u12 high) combined with a narrow main slit (u6 low) starves
/// the melt of heating power. Threshold u12*(1-u6) > 0.72 reproduces a
/// ~4.35% rejection rate under uniform sampling.
OracleOutputs oracle_evaluate(const ParameterSpace& space, std::span<const double> x);

/// lhs_sample + oracle_evaluate over s points. Infeasible rows are kept
/// (flagged) so files mirror the raw simulation campaign.
Dataset generate_dataset(const ParameterSpace& space, std::size_t s, std::uint64_t seed,
                         LhsMode mode = LhsMode::Jitter);

} // namespace fzopt

#endif
