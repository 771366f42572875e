#include "fzopt/oracle.hpp"

#include <cmath>

#include "fzopt/errors.hpp"

namespace fzopt {

OracleOutputs oracle_evaluate(const ParameterSpace& space, std::span<const double> x) {
    auto verdict = validate_point(space, x);
    if (!verdict.valid) throw ValidationError("oracle: " + verdict.reason);

    // Everything below works on min-max normalized coordinates.
    std::array<double, kNumInputs> u{};
    for (std::size_t i = 0; i < kNumInputs; ++i) u[i] = space.to_unit(i, x[i]);
    const double u1 = u[0], u2 = u[1], u3 = u[2], u4 = u[3], u5 = u[4], u6 = u[5],
                 u7 = u[6], u8 = u[7], u9 = u[8], u10 = u[9], u11 = u[10], u12 = u[11];

    OracleOutputs out;
    out.gz = 95.0 - 35.0 * u1 + 12.0 * u12 - 8.0 * u10;
    out.y[0] = 16.0 + 14.0 * (1.0 - u1) * (0.4 + 0.6 * u12) + 5.0 * u9 * u11 - 4.0 * u10 + 3.0 * u2;
    out.y[1] = 8.0 + 40.0 * u1 * u2 + 14.0 * u2 * u2 + 6.0 * u1 - 3.0 * u11;
    out.y[2] = 20.0 + 58.0 * u1 * u1 + 24.0 * u2 + 12.0 * u1 * u2 - 6.0 * u12;
    out.y[3] = 640.0 + 300.0 * u8 - 270.0 * u6 + 170.0 * u1 + 60.0 * u5 - 45.0 * u7 + 55.0 * u1 * u8;
    out.y[4] = 0.18 + 3.6 * u6 * u6 * (1.0 - 0.55 * u3) * (1.0 - 0.45 * u4) + 0.25 * u2 * u6;
    // Steady-state growth: crystallization rate at the axis equals the
    // pulling rate, so the Voronkov ratio is (x2/10)/Gz in cm^2/(min K)
    // (x2 in mm/min, Gz in K/cm).
    out.y[5] = (x[1] / 10.0) / out.gz;
    out.feasible = u12 * (1.0 - u6) <= 0.72;
    return out;
}

Dataset generate_dataset(const ParameterSpace& space, std::size_t s, std::uint64_t seed, LhsMode mode) {
    DesignMatrix design = lhs_sample(space, s, seed, mode);
    Dataset data;
    data.provenance = Provenance::BuiltinOracle;
    data.rows.reserve(design.rows.size());
    for (const auto& x : design.rows) {
        OracleOutputs o = oracle_evaluate(space, x);
        DataRow row;
        row.x = x;
        row.y = o.y;
        row.feasible = o.feasible;
        data.rows.push_back(std::move(row));
    }
    return data;
}

} // namespace fzopt
