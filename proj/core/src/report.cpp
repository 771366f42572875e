#include "fzopt/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>

#include <nlohmann/json.hpp>

#include "fzopt/errors.hpp"
#include "fzopt/io_util.hpp"

namespace fzopt {

using json = nlohmann::ordered_json;

bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
    if (a.values.size() != b.values.size())
        throw ValidationError("dominates: objective arity mismatch");
    if (a.feasible != b.feasible) return a.feasible;
    if (!a.feasible) return a.total_violation < b.total_violation;
    bool strictly_better = false;
    for (std::size_t j = 0; j < a.values.size(); ++j) {
        if (a.values[j] > b.values[j]) return false;
        if (a.values[j] < b.values[j]) strictly_better = true;
    }
    return strictly_better;
}

std::vector<SolutionRow> extract_pareto(const std::vector<SolutionRow>& solutions) {
    if (solutions.empty()) throw ValidationError("extract_pareto: empty input");
    // collapse exact-genome duplicates, keeping first occurrence
    std::vector<const SolutionRow*> unique;
    for (const auto& s : solutions) {
        bool dup = std::any_of(unique.begin(), unique.end(),
                               [&](const SolutionRow* u) { return u->x == s.x; });
        if (!dup) unique.push_back(&s);
    }
    std::vector<SolutionRow> out;
    for (std::size_t i = 0; i < unique.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < unique.size() && !dominated; ++j)
            dominated = j != i && dominates(unique[j]->obj, unique[i]->obj);
        if (!dominated) out.push_back(*unique[i]);
    }
    return out;
}

ParetoReport build_pareto_report(const std::vector<SolutionRow>& all, const ObjectiveTable& table) {
    ParetoReport report;
    report.solutions = extract_pareto(all);
    report.top5.resize(table.size());
    std::vector<std::size_t> feasible;
    for (std::size_t i = 0; i < report.solutions.size(); ++i)
        if (report.solutions[i].obj.feasible) feasible.push_back(i);
    for (std::size_t j = 0; j < table.size(); ++j) {
        std::vector<std::size_t> order = feasible;
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return report.solutions[a].obj.values[j] < report.solutions[b].obj.values[j];
        });
        if (order.size() > 5) order.resize(5);
        report.top5[j] = std::move(order);
    }
    return report;
}

void write_pareto_csv(const ParetoReport& report, const ParameterSpace& space,
                      const ObjectiveTable& table, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot open '" + path + "' for writing");
    out << "algo,gen,idx";
    for (std::size_t d = 0; d < space.size(); ++d) out << ',' << space.param(d).name;
    for (std::size_t j = 1; j <= table.size(); ++j) out << ",O" << j;
    out << ",violation,rank,crowding,top5_of\n";
    for (std::size_t i = 0; i < report.solutions.size(); ++i) {
        const auto& s = report.solutions[i];
        out << s.algo << ',' << s.gen << ',' << s.idx;
        for (double v : s.x) out << ',' << fmt_double(v);
        for (double v : s.obj.values) out << ',' << fmt_double(v);
        out << ',' << fmt_double(s.obj.total_violation) << ',' << s.rank << ','
            << fmt_double(s.crowding) << ',';
        bool first = true;
        for (std::size_t j = 0; j < report.top5.size(); ++j) {
            if (std::find(report.top5[j].begin(), report.top5[j].end(), i) == report.top5[j].end())
                continue;
            if (!first) out << ';';
            out << 'O' << table.rows()[j].id;
            first = false;
        }
        out << '\n';
    }
}

void export_parallel_coordinates(const std::vector<SolutionRow>& solutions,
                                 const ObjectiveTable& table, const ParameterSpace& space,
                                 const std::string& csv_path, const std::string& meta_path) {
    std::ofstream out(csv_path, std::ios::binary);
    if (!out) throw DataError("cannot open '" + csv_path + "' for writing");

    std::vector<std::string> axes;
    for (std::size_t j = 1; j <= table.size(); ++j) axes.push_back("O" + std::to_string(j));
    for (std::size_t d = 0; d < space.size(); ++d) axes.push_back(space.param(d).name);
    for (std::size_t a = 0; a < axes.size(); ++a) out << (a ? "," : "") << axes[a];
    out << '\n';

    std::vector<double> lo(axes.size(), std::numeric_limits<double>::infinity());
    std::vector<double> hi(axes.size(), -std::numeric_limits<double>::infinity());
    for (const auto& s : solutions) {
        std::vector<double> row;
        row.reserve(axes.size());
        for (std::size_t j = 0; j < table.size(); ++j)
            row.push_back(display_value(table.rows()[j], s.obj.values[j]));
        for (double v : s.x) row.push_back(v);
        for (std::size_t a = 0; a < row.size(); ++a) {
            out << (a ? "," : "") << fmt_double(row[a]);
            lo[a] = std::min(lo[a], row[a]);
            hi[a] = std::max(hi[a], row[a]);
        }
        out << '\n';
    }

    json meta;
    meta["rows"] = solutions.size();
    meta["axes"] = json::array();
    for (std::size_t a = 0; a < axes.size(); ++a) {
        json axis{{"name", axes[a]}};
        if (!solutions.empty()) {
            axis["min"] = lo[a];
            axis["max"] = hi[a];
        }
        meta["axes"].push_back(std::move(axis));
    }
    std::ofstream mout(meta_path, std::ios::binary);
    if (!mout) throw DataError("cannot open '" + meta_path + "' for writing");
    mout << meta.dump(2) << '\n';
}

ColumnSummary summarize_column(std::vector<double> values) {
    if (values.empty()) throw ValidationError("summarize_column: empty column");
    std::sort(values.begin(), values.end());
    auto quantile = [&](double p) {
        double h = p * static_cast<double>(values.size() - 1);
        std::size_t lo = static_cast<std::size_t>(h);
        double frac = h - static_cast<double>(lo);
        if (lo + 1 >= values.size()) return values.back();
        return values[lo] + frac * (values[lo + 1] - values[lo]);
    };
    ColumnSummary s;
    s.min = values.front();
    s.max = values.back();
    s.q1 = quantile(0.25);
    s.median = quantile(0.5);
    s.q3 = quantile(0.75);
    double range = s.max - s.min;
    for (double v : values) {
        std::size_t bin = 0;
        if (range > 0.0)
            bin = std::min<std::size_t>(31, static_cast<std::size_t>((v - s.min) / range * 32.0));
        s.histogram[bin] += 1;
    }
    return s;
}

namespace {

json summary_to_json(const ColumnSummary& s) {
    return {{"min", s.min},    {"q1", s.q1},   {"median", s.median},
            {"q3", s.q3},      {"max", s.max}, {"histogram", s.histogram}};
}

json dataset_columns_json(const Dataset& data) {
    json cols;
    for (std::size_t d = 0; d < kNumInputs; ++d) {
        std::vector<double> col;
        col.reserve(data.rows.size());
        for (const auto& r : data.rows) col.push_back(r.x[d]);
        cols["x" + std::to_string(d + 1)] = summary_to_json(summarize_column(std::move(col)));
    }
    for (std::size_t d = 0; d < kNumOutputs; ++d) {
        std::vector<double> col;
        col.reserve(data.rows.size());
        for (const auto& r : data.rows) col.push_back(r.y[d]);
        cols["y" + std::to_string(d + 1)] = summary_to_json(summarize_column(std::move(col)));
    }
    return cols;
}

} // namespace

void write_violin_json(const Dataset& dataset, const std::map<std::string, Dataset>& solution_sets,
                       const std::string& path) {
    json j;
    j["rows"] = dataset.rows.size();
    j["dataset"] = dataset_columns_json(dataset);
    j["solutions"] = json::object();
    for (const auto& [name, set] : solution_sets) {
        json entry;
        entry["rows"] = set.rows.size();
        entry["columns"] = dataset_columns_json(set);
        j["solutions"][name] = std::move(entry);
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot open '" + path + "' for writing");
    out << j.dump(2) << '\n';
}

ValidationSummary validate_candidates(const std::vector<SolutionRow>& solutions,
                                      const ObjectiveTable& table, const Predictor& predictor,
                                      const OracleFn& oracle, std::size_t n) {
    if (n > solutions.size())
        throw ValidationError("validate_candidates: n exceeds solution count");

    // candidate pool: feasible front-1 rows, falling back to everything
    std::vector<std::size_t> pool;
    for (std::size_t i = 0; i < solutions.size(); ++i)
        if (solutions[i].rank == 0 && solutions[i].obj.feasible) pool.push_back(i);
    if (pool.empty())
        for (std::size_t i = 0; i < solutions.size(); ++i) pool.push_back(i);

    // per-objective best, deduplicated by genome
    std::vector<std::size_t> chosen;
    auto push_unique = [&](std::size_t idx) {
        for (std::size_t c : chosen)
            if (solutions[c].x == solutions[idx].x) return;
        if (chosen.size() < n) chosen.push_back(idx);
    };
    for (std::size_t j = 0; j < table.size() && chosen.size() < n; ++j) {
        std::size_t best = pool.front();
        for (std::size_t i : pool)
            if (solutions[i].obj.values[j] < solutions[best].obj.values[j]) best = i;
        push_unique(best);
    }
    // fill by descending crowding distance
    std::vector<std::size_t> by_crowding = pool;
    std::stable_sort(by_crowding.begin(), by_crowding.end(), [&](std::size_t a, std::size_t b) {
        return solutions[a].crowding > solutions[b].crowding;
    });
    for (std::size_t i : by_crowding) {
        if (chosen.size() >= n) break;
        push_unique(i);
    }

    ValidationSummary summary;
    std::array<double, kNumOutputs> acc{};
    std::size_t ok_cases = 0;
    for (std::size_t idx : chosen) {
        ValidationRecord rec;
        rec.solution_idx = solutions[idx].idx;
        rec.x = solutions[idx].x;
        try {
            rec.predicted = predictor(rec.x);
            OracleOutputs truth = oracle(rec.x);
            rec.recomputed = truth.y;
            rec.recomputation_feasible = truth.feasible;
            double case_acc = 0.0;
            for (std::size_t j = 0; j < kNumOutputs; ++j) {
                rec.discrepancy[j] = std::abs(rec.predicted[j] - rec.recomputed[j]) /
                                     std::max(std::abs(rec.recomputed[j]), 1e-12);
                case_acc += rec.discrepancy[j];
            }
            rec.case_mean = case_acc / static_cast<double>(kNumOutputs);
            for (std::size_t j = 0; j < kNumOutputs; ++j) acc[j] += rec.discrepancy[j];
            ++ok_cases;
        } catch (const std::exception& e) {
            rec.failed = true;
            rec.error = e.what();
        }
        summary.records.push_back(std::move(rec));
    }
    if (ok_cases > 0) {
        double overall = 0.0;
        for (std::size_t j = 0; j < kNumOutputs; ++j)
            summary.mean_discrepancy[j] = acc[j] / static_cast<double>(ok_cases);
        for (const auto& rec : summary.records)
            if (!rec.failed) overall += rec.case_mean;
        summary.overall_mean = overall / static_cast<double>(ok_cases);
    }
    return summary;
}

void write_validation_csv(const ValidationSummary& summary, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot open '" + path + "' for writing");
    out << "case,solution_idx";
    for (std::size_t i = 1; i <= kNumInputs; ++i) out << ",x" << i;
    for (std::size_t i = 1; i <= kNumOutputs; ++i) out << ",yhat" << i;
    for (std::size_t i = 1; i <= kNumOutputs; ++i) out << ",y" << i;
    for (std::size_t i = 1; i <= kNumOutputs; ++i) out << ",disc" << i;
    out << ",case_mean,oracle_feasible,error\n";
    for (std::size_t c = 0; c < summary.records.size(); ++c) {
        const auto& r = summary.records[c];
        out << c + 1 << ',' << r.solution_idx;
        for (double v : r.x) out << ',' << fmt_double(v);
        if (r.failed) {
            for (std::size_t i = 0; i < 3 * kNumOutputs; ++i) out << ',';
            out << ",,," << r.error << '\n';
            continue;
        }
        for (double v : r.predicted) out << ',' << fmt_double(v);
        for (double v : r.recomputed) out << ',' << fmt_double(v);
        for (double v : r.discrepancy) out << ',' << fmt_double(v);
        out << ',' << fmt_double(r.case_mean) << ',' << (r.recomputation_feasible ? '1' : '0') << ",\n";
    }
    out << "mean,";
    for (std::size_t i = 0; i < kNumInputs; ++i) out << ',';
    for (std::size_t i = 0; i < 2 * kNumOutputs; ++i) out << ',';
    for (double v : summary.mean_discrepancy) out << ',' << fmt_double(v);
    out << ',' << fmt_double(summary.overall_mean) << ",,\n";
}

} // namespace fzopt
