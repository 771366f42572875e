#include "fzopt/objectives.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "fzopt/errors.hpp"

namespace fzopt {

using json = nlohmann::ordered_json;

ObjectiveTable::ObjectiveTable(std::vector<ObjectiveSpec> rows) : rows_(std::move(rows)) {
    validate();
}

void ObjectiveTable::validate() const {
    if (rows_.empty()) throw ValidationError("objective table is empty");
    std::set<int> ids;
    for (const auto& r : rows_) {
        if (!ids.insert(r.id).second)
            throw ValidationError("duplicate objective id " + std::to_string(r.id));
        if (r.direction == Direction::Interval && !r.penalty)
            throw ValidationError("objective " + r.name + ": interval direction needs a penalty");
        std::size_t max_index = r.source == ObjectiveSpec::Source::Input ? kNumInputs : kNumOutputs;
        if (r.index >= max_index)
            throw ValidationError("objective " + r.name + ": column index out of range");
        if (r.penalty && !(r.penalty->lower < r.penalty->upper))
            throw ValidationError("objective " + r.name + ": penalty interval is empty");
    }
}

ObjectiveTable table2_objectives() {
    using Src = ObjectiveSpec::Source;
    std::vector<ObjectiveSpec> rows;
    rows.push_back({1, "crystal_radius", Src::Input, 0, Direction::Maximize,
                    Constraint{Cmp::Ge, 85.0, "mm"}, std::nullopt});
    rows.push_back({2, "pulling_rate", Src::Input, 1, Direction::Maximize,
                    Constraint{Cmp::Ge, 1.5, "mm/min"}, std::nullopt});
    rows.push_back({3, "radial_thermal_gradient", Src::Output, 0, Direction::Maximize, std::nullopt,
                    std::nullopt});
    rows.push_back({4, "interface_deflection", Src::Output, 1, Direction::Minimize,
                    Constraint{Cmp::Le, 70.0, "mm"}, std::nullopt});
    rows.push_back({5, "exceed_stress", Src::Output, 2, Direction::Minimize,
                    Constraint{Cmp::Le, 80.0, "MPa"}, std::nullopt});
    rows.push_back({6, "voltage", Src::Output, 3, Direction::Minimize,
                    Constraint{Cmp::Le, 1200.0, "V"}, std::nullopt});
    rows.push_back({7, "em_homogeneity", Src::Output, 4, Direction::Minimize,
                    Constraint{Cmp::Ge, 0.0, "W/m^2"}, std::nullopt});
    rows.push_back({8, "voronkov_criterion", Src::Output, 5, Direction::Interval, std::nullopt,
                    IntervalPenalty{kVoronkovLower, kVoronkovUpper}});
    return ObjectiveTable{std::move(rows)};
}

double voronkov_penalty(double gamma, double lower, double upper) {
    if (gamma < lower) return lower - gamma;
    if (gamma > upper) return gamma - upper;
    return 0.0;
}

double constraint_violation(const Constraint& c, double value) {
    if (c.cmp == Cmp::Ge) {
        if (c.bound == 0.0) return std::max(0.0, -value);
        return std::max(0.0, (c.bound - value) / std::abs(c.bound));
    }
    if (c.bound == 0.0) return std::max(0.0, value);
    return std::max(0.0, (value - c.bound) / std::abs(c.bound));
}

ObjectiveVector evaluate_objectives(const ObjectiveTable& table, std::span<const double> x,
                                    std::span<const double, kNumOutputs> y) {
    ObjectiveVector out;
    out.values.reserve(table.size());
    for (const auto& spec : table.rows()) {
        double raw = spec.source == ObjectiveSpec::Source::Input ? x[spec.index] : y[spec.index];
        switch (spec.direction) {
            case Direction::Maximize: out.values.push_back(-raw); break;
            case Direction::Minimize: out.values.push_back(raw); break;
            case Direction::Interval:
                out.values.push_back(voronkov_penalty(raw, spec.penalty->lower, spec.penalty->upper));
                break;
        }
        if (spec.constraint) out.total_violation += constraint_violation(*spec.constraint, raw);
    }
    out.feasible = out.total_violation == 0.0;
    return out;
}

ObjectiveVector evaluate_objectives(const ObjectiveTable& table, std::span<const double> x,
                                    const Predictor& predictor) {
    std::array<double, kNumOutputs> y = predictor(x);
    return evaluate_objectives(table, x, std::span<const double, kNumOutputs>(y));
}

double display_value(const ObjectiveSpec& spec, double stored) {
    return spec.direction == Direction::Maximize ? -stored : stored;
}

namespace {

std::string quantity_name(const ObjectiveSpec& spec) {
    return (spec.source == ObjectiveSpec::Source::Input ? "x" : "y") + std::to_string(spec.index + 1);
}

std::string direction_name(Direction d) {
    switch (d) {
        case Direction::Maximize: return "maximize";
        case Direction::Minimize: return "minimize";
        case Direction::Interval: return "interval";
    }
    return "";
}

} // namespace

std::string objectives_to_json(const ObjectiveTable& table) {
    json arr = json::array();
    for (const auto& r : table.rows()) {
        json j{{"id", r.id}, {"name", r.name}, {"quantity", quantity_name(r)},
               {"direction", direction_name(r.direction)}};
        if (r.constraint)
            j["constraint"] = {{"op", r.constraint->cmp == Cmp::Ge ? ">=" : "<="},
                               {"bound", r.constraint->bound},
                               {"unit", r.constraint->unit}};
        if (r.penalty) j["penalty"] = {{"lower", r.penalty->lower}, {"upper", r.penalty->upper}};
        arr.push_back(std::move(j));
    }
    return json{{"objectives", std::move(arr)}}.dump(2) + "\n";
}

ObjectiveTable objectives_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw DataError(std::string("objective JSON parse error: ") + e.what());
    }
    if (!j.contains("objectives") || !j["objectives"].is_array())
        throw DataError("objective JSON: missing 'objectives' array");
    std::vector<ObjectiveSpec> rows;
    for (const auto& e : j["objectives"]) {
        ObjectiveSpec spec;
        spec.id = e.at("id").get<int>();
        spec.name = e.at("name").get<std::string>();
        std::string q = e.at("quantity").get<std::string>();
        if (q.size() < 2 || (q[0] != 'x' && q[0] != 'y'))
            throw DataError("objective JSON: bad quantity '" + q + "'");
        spec.source = q[0] == 'x' ? ObjectiveSpec::Source::Input : ObjectiveSpec::Source::Output;
        spec.index = static_cast<std::size_t>(std::stoi(q.substr(1))) - 1;
        std::string dir = e.at("direction").get<std::string>();
        if (dir == "maximize") spec.direction = Direction::Maximize;
        else if (dir == "minimize") spec.direction = Direction::Minimize;
        else if (dir == "interval") spec.direction = Direction::Interval;
        else throw DataError("objective JSON: bad direction '" + dir + "'");
        if (e.contains("constraint")) {
            const auto& c = e["constraint"];
            std::string op = c.at("op").get<std::string>();
            if (op != ">=" && op != "<=") throw DataError("objective JSON: bad op '" + op + "'");
            spec.constraint = Constraint{op == ">=" ? Cmp::Ge : Cmp::Le, c.at("bound").get<double>(),
                                         c.value("unit", "")};
        }
        if (e.contains("penalty"))
            spec.penalty = IntervalPenalty{e["penalty"].at("lower").get<double>(),
                                           e["penalty"].at("upper").get<double>()};
        rows.push_back(std::move(spec));
    }
    return ObjectiveTable{std::move(rows)};
}

void write_objectives_json(const ObjectiveTable& table, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot open '" + path + "' for writing");
    out << objectives_to_json(table);
}

ObjectiveTable read_objectives_json(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open objectives file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return objectives_from_json(ss.str());
}

} // namespace fzopt
