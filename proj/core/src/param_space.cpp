#include "fzopt/param_space.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "fzopt/io_util.hpp"
#include "fzopt/rng.hpp"

namespace fzopt {

using json = nlohmann::ordered_json;

ParameterSpace::ParameterSpace(std::vector<ParameterSpec> params) : params_(std::move(params)) {
    validate();
}

void ParameterSpace::validate() const {
    if (params_.empty()) throw ValidationError("parameter space is empty");
    std::set<std::string> names;
    for (const auto& p : params_) {
        if (p.name.empty()) throw ValidationError("parameter with empty name");
        if (!names.insert(p.name).second)
            throw ValidationError("duplicate parameter name '" + p.name + "'");
        if (!(p.low < p.high))
            throw ValidationError("parameter '" + p.name + "': low must be < high");
        if (p.kind == ParamKind::Integer) {
            if (p.low != std::floor(p.low) || p.high != std::floor(p.high))
                throw ValidationError("integer parameter '" + p.name + "' has non-integral bounds");
        }
    }
}

ParameterSpace table1_space() {
    auto c = [](std::string name, double lo, double hi, std::string unit) {
        return ParameterSpec{std::move(name), ParamKind::Continuous, lo, hi, std::move(unit)};
    };
    return ParameterSpace{{
        c("x1", 75.0, 100.0, "mm"),                            // crystal radius
        c("x2", 1.0, 3.5, "mm/min"),                           // crystal pulling rate
        {"x3", ParamKind::Integer, 2.0, 5.0, "1"},             // inductor side slit count
        c("x4", 30.0, 60.0, "mm"),                             // side slit length
        c("x5", 1.5, 4.0, "mm"),                               // side slit width
        c("x6", 0.5, 4.0, "mm"),                               // main slit width
        c("x7", 1.0, 4.0, "deg"),                              // inductor bottom angle
        c("x8", 2.0, 3.5, "MHz"),                              // inductor frequency
        c("x9", 20.0, 80.0, "mm"),                             // reflector height
        c("x10", 5.0, 40.0, "mm"),                             // reflector radial offset
        c("x11", -5.0, 10.0, "mm"),                            // reflector position vs TPL
        c("x12", 0.10, 0.85, "1"),                             // reflector emissivity
    }};
}

PointVerdict validate_point(const ParameterSpace& space, std::span<const double> x) {
    if (x.size() != space.size())
        throw ValidationError("point has " + std::to_string(x.size()) + " entries, space has " +
                              std::to_string(space.size()));
    for (std::size_t i = 0; i < x.size(); ++i) {
        const auto& p = space.param(i);
        if (!std::isfinite(x[i]) || x[i] < p.low || x[i] > p.high)
            return {false, p.name + "=" + fmt_double(x[i]) + " outside [" + fmt_double(p.low) +
                               ", " + fmt_double(p.high) + "] " + p.unit};
        if (p.kind == ParamKind::Integer && x[i] != std::floor(x[i]))
            return {false, p.name + "=" + fmt_double(x[i]) + " is not integral"};
    }
    return {};
}

std::vector<Scaler::Range> fit_ranges(const std::vector<std::vector<double>>& rows) {
    if (rows.size() < 2) throw ValidationError("need at least 2 rows to fit a scaler");
    std::size_t cols = rows.front().size();
    std::vector<Scaler::Range> ranges(cols);
    for (std::size_t c = 0; c < cols; ++c) {
        double lo = rows[0][c], hi = rows[0][c];
        for (const auto& r : rows) {
            lo = std::min(lo, r[c]);
            hi = std::max(hi, r[c]);
        }
        if (!(hi > lo))
            throw ValidationError("column " + std::to_string(c) + " is constant, cannot scale");
        ranges[c] = {lo, hi};
    }
    return ranges;
}

namespace {
std::vector<double> apply(std::span<const double> v, const std::vector<Scaler::Range>& r, bool fwd) {
    if (v.size() != r.size()) throw ValidationError("scaler arity mismatch");
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out[i] = fwd ? Scaler::to_unit(v[i], r[i]) : Scaler::from_unit(v[i], r[i]);
    return out;
}
} // namespace

std::vector<double> Scaler::scale_x(std::span<const double> x) const { return apply(x, x_ranges, true); }
std::vector<double> Scaler::unscale_x(std::span<const double> x) const { return apply(x, x_ranges, false); }
std::vector<double> Scaler::scale_y(std::span<const double> y) const { return apply(y, y_ranges, true); }
std::vector<double> Scaler::unscale_y(std::span<const double> y) const { return apply(y, y_ranges, false); }

DesignMatrix lhs_sample(const ParameterSpace& space, std::size_t s, std::uint64_t seed, LhsMode mode) {
    space.validate();
    if (s == 0) throw ValidationError("empty design: sample count must be >= 1");

    Rng rng(seed);
    DesignMatrix m;
    m.seed = seed;
    m.rows.assign(s, std::vector<double>(space.size()));

    std::vector<std::size_t> perm(s);
    for (std::size_t d = 0; d < space.size(); ++d) {
        const auto& p = space.param(d);
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        rng.shuffle(perm);
        for (std::size_t i = 0; i < s; ++i) {
            double offset = (mode == LhsMode::Jitter) ? rng.uniform() : 0.5;
            double u = (static_cast<double>(perm[i]) + offset) / static_cast<double>(s);
            if (p.kind == ParamKind::Integer) {
                int n = p.integer_count();
                double v = p.low + std::floor(u * n);
                m.rows[i][d] = std::min(v, p.high);
            } else {
                m.rows[i][d] = space.from_unit(d, u);
            }
        }
    }
    return m;
}

void write_design_csv(const DesignMatrix& m, const ParameterSpace& space, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot open '" + path + "' for writing");
    for (std::size_t d = 0; d < space.size(); ++d)
        out << (d ? "," : "") << space.param(d).name;
    out << '\n';
    for (const auto& row : m.rows) {
        for (std::size_t d = 0; d < row.size(); ++d)
            out << (d ? "," : "") << fmt_double(row[d]);
        out << '\n';
    }
}

DesignMatrix read_design_csv(const ParameterSpace& space, const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open design file '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw DataError("design file '" + path + "' is empty");
    auto header = split_csv_line(line);
    if (header.size() != space.size()) throw DataError("design header arity mismatch in '" + path + "'");
    for (std::size_t d = 0; d < space.size(); ++d)
        if (header[d] != space.param(d).name)
            throw DataError("design header mismatch in '" + path + "': expected '" +
                            space.param(d).name + "', got '" + std::string(header[d]) + "'");
    DesignMatrix m;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto cells = split_csv_line(line);
        if (cells.size() != space.size())
            throw DataError(path + ":" + std::to_string(lineno) + ": expected " +
                            std::to_string(space.size()) + " cells, got " + std::to_string(cells.size()));
        std::vector<double> row(space.size());
        for (std::size_t d = 0; d < cells.size(); ++d)
            row[d] = parse_double(cells[d], path + ":" + std::to_string(lineno));
        m.rows.push_back(std::move(row));
    }
    return m;
}

std::string space_to_json(const ParameterSpace& space) {
    json j;
    j["params"] = json::array();
    for (const auto& p : space.params()) {
        j["params"].push_back({
            {"name", p.name},
            {"kind", p.kind == ParamKind::Integer ? "integer" : "continuous"},
            {"low", p.low},
            {"high", p.high},
            {"unit", p.unit},
        });
    }
    return j.dump(2) + "\n";
}

ParameterSpace space_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw DataError(std::string("space JSON parse error: ") + e.what());
    }
    if (!j.contains("params") || !j["params"].is_array())
        throw DataError("space JSON: missing 'params' array");
    std::vector<ParameterSpec> params;
    for (const auto& e : j["params"]) {
        ParameterSpec p;
        p.name = e.at("name").get<std::string>();
        std::string kind = e.at("kind").get<std::string>();
        if (kind == "integer") p.kind = ParamKind::Integer;
        else if (kind == "continuous") p.kind = ParamKind::Continuous;
        else throw DataError("space JSON: unknown kind '" + kind + "'");
        p.low = e.at("low").get<double>();
        p.high = e.at("high").get<double>();
        p.unit = e.value("unit", "");
        params.push_back(std::move(p));
    }
    return ParameterSpace{std::move(params)};
}

void write_space_json(const ParameterSpace& space, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot open '" + path + "' for writing");
    out << space_to_json(space);
}

ParameterSpace read_space_json(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open space file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return space_from_json(ss.str());
}

} // namespace fzopt
