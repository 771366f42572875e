#include "fzopt/dataset.hpp"

#include <cmath>
#include <fstream>

#include "fzopt/io_util.hpp"

namespace fzopt {

std::size_t Dataset::feasible_count() const {
    std::size_t n = 0;
    for (const auto& r : rows) n += r.feasible ? 1 : 0;
    return n;
}

Dataset Dataset::feasible_view() const {
    Dataset out;
    out.provenance = provenance;
    for (const auto& r : rows)
        if (r.feasible) out.rows.push_back(r);
    return out;
}

std::pair<Dataset, Scaler> scale_fit_transform(const Dataset& data) {
    std::vector<std::vector<double>> xs, ys;
    xs.reserve(data.rows.size());
    ys.reserve(data.rows.size());
    for (const auto& r : data.rows) {
        xs.push_back(r.x);
        ys.emplace_back(r.y.begin(), r.y.end());
    }
    Scaler scaler;
    scaler.x_ranges = fit_ranges(xs);
    scaler.y_ranges = fit_ranges(ys);
    return {scale_with(data, scaler), scaler};
}

Dataset scale_with(const Dataset& data, const Scaler& scaler) {
    Dataset out;
    out.provenance = data.provenance;
    out.rows.reserve(data.rows.size());
    for (const auto& r : data.rows) {
        DataRow s;
        s.feasible = r.feasible;
        s.x = scaler.scale_x(r.x);
        auto y = scaler.scale_y(std::vector<double>(r.y.begin(), r.y.end()));
        std::copy(y.begin(), y.end(), s.y.begin());
        out.rows.push_back(std::move(s));
    }
    return out;
}

void write_dataset_csv(const Dataset& data, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot open '" + path + "' for writing");
    for (std::size_t i = 1; i <= kNumInputs; ++i) out << "x" << i << ",";
    for (std::size_t i = 1; i <= kNumOutputs; ++i) out << "y" << i << ",";
    out << "feasible\n";
    for (const auto& r : data.rows) {
        for (double v : r.x) out << fmt_double(v) << ",";
        for (double v : r.y) out << fmt_double(v) << ",";
        out << (r.feasible ? '1' : '0') << '\n';
    }
}

Dataset ingest_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open dataset file '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw DataError("dataset file '" + path + "' is empty");

    auto header = split_csv_line(line);
    bool has_feasible = false;
    if (header.size() == kNumInputs + kNumOutputs + 1) {
        has_feasible = true;
    } else if (header.size() != kNumInputs + kNumOutputs) {
        throw DataError("dataset header in '" + path + "': expected x1..x12,y1..y6[,feasible], got " +
                        std::to_string(header.size()) + " columns");
    }
    for (std::size_t i = 0; i < kNumInputs; ++i)
        if (header[i] != "x" + std::to_string(i + 1))
            throw DataError("dataset header mismatch in '" + path + "' at column " + std::to_string(i + 1));
    for (std::size_t i = 0; i < kNumOutputs; ++i)
        if (header[kNumInputs + i] != "y" + std::to_string(i + 1))
            throw DataError("dataset header mismatch in '" + path + "' at column " +
                            std::to_string(kNumInputs + i + 1));
    if (has_feasible && header.back() != "feasible")
        throw DataError("dataset header mismatch in '" + path + "': last column must be 'feasible'");

    Dataset data;
    data.provenance = Provenance::Ingested;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        auto cells = split_csv_line(line);
        std::string where = path + ":" + std::to_string(lineno);
        if (cells.size() != header.size())
            throw DataError(where + ": expected " + std::to_string(header.size()) + " cells, got " +
                            std::to_string(cells.size()));
        DataRow row;
        row.x.resize(kNumInputs);
        for (std::size_t i = 0; i < kNumInputs; ++i) {
            row.x[i] = parse_double(cells[i], where);
            if (!std::isfinite(row.x[i])) throw DataError(where + ": non-finite value in x" + std::to_string(i + 1));
        }
        for (std::size_t i = 0; i < kNumOutputs; ++i) {
            row.y[i] = parse_double(cells[kNumInputs + i], where);
            if (!std::isfinite(row.y[i])) throw DataError(where + ": non-finite value in y" + std::to_string(i + 1));
        }
        if (has_feasible) {
            auto f = cells.back();
            if (f == "1") row.feasible = true;
            else if (f == "0") row.feasible = false;
            else throw DataError(where + ": feasible must be 0 or 1, got '" + std::string(f) + "'");
        }
        data.rows.push_back(std::move(row));
    }
    return data;
}

} // namespace fzopt
