#include "fzopt/nsga.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numeric>
#include <thread>

#include "fzopt/errors.hpp"
#include "fzopt/io_util.hpp"

namespace fzopt {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kWorst = 1e30; // sentinel for non-finite evaluator output
} // namespace

void GaConfig::validate() const {
    if (population < 2 || population % 2 != 0)
        throw ValidationError("population must be even and >= 2");
    if (generations < 0) throw ValidationError("generations must be >= 0");
    if (crossover_prob < 0.0 || crossover_prob > 1.0 || mutation_prob < 0.0 || mutation_prob > 1.0)
        throw ValidationError("probabilities must be in [0,1]");
    if (eta_c <= 0.0 || eta_m <= 0.0) throw ValidationError("distribution indices must be positive");
    if (algorithm == Algo::Nsga3 && granularity < 1)
        throw ValidationError("granularity must be >= 1");
    if (threads < 1) throw ValidationError("threads must be >= 1");
}

std::uint64_t das_dennis_count(int o, int g) {
    if (o < 2 || g < 1) throw ValidationError("das_dennis needs o >= 2, g >= 1");
    // C(o+g-1, g) = prod_{i=1..g} (o-1+i)/i, integral at every step when
    // multiplied before dividing pairwise; guard against overflow.
    std::uint64_t result = 1;
    for (int i = 1; i <= g; ++i) {
        std::uint64_t num = static_cast<std::uint64_t>(o - 1 + i);
        if (result > std::numeric_limits<std::uint64_t>::max() / num)
            throw NumericError("das_dennis_count overflow");
        result = result * num / static_cast<std::uint64_t>(i);
    }
    return result;
}

namespace {
void compositions(int remaining, int position, int o, int g, std::vector<int>& parts,
                  std::vector<std::vector<double>>& out) {
    if (position == o - 1) {
        parts[static_cast<std::size_t>(position)] = remaining;
        std::vector<double> point(static_cast<std::size_t>(o));
        for (int i = 0; i < o; ++i)
            point[static_cast<std::size_t>(i)] = static_cast<double>(parts[static_cast<std::size_t>(i)]) / g;
        out.push_back(std::move(point));
        return;
    }
    for (int c = 0; c <= remaining; ++c) {
        parts[static_cast<std::size_t>(position)] = c;
        compositions(remaining - c, position + 1, o, g, parts, out);
    }
}
} // namespace

ReferencePointSet das_dennis(int o, int g) {
    std::uint64_t expected = das_dennis_count(o, g);
    if (expected > 5'000'000)
        throw NumericError("das_dennis: " + std::to_string(expected) + " points is too many");
    ReferencePointSet set;
    set.objectives = o;
    set.granularity = g;
    set.points.reserve(expected);
    std::vector<int> parts(static_cast<std::size_t>(o), 0);
    compositions(g, 0, o, g, parts, set.points);
    return set;
}

bool dominates(const Individual& a, const Individual& b) {
    if (a.obj.values.size() != b.obj.values.size())
        throw ValidationError("dominates: objective arity mismatch");
    if (a.obj.feasible != b.obj.feasible) return a.obj.feasible;
    if (!a.obj.feasible) return a.obj.total_violation < b.obj.total_violation;
    bool strictly_better = false;
    for (std::size_t j = 0; j < a.obj.values.size(); ++j) {
        if (a.obj.values[j] > b.obj.values[j]) return false;
        if (a.obj.values[j] < b.obj.values[j]) strictly_better = true;
    }
    return strictly_better;
}

std::vector<std::vector<std::size_t>> fast_nondominated_sort(const std::vector<Individual>& pop) {
    if (pop.empty()) throw ValidationError("fast_nondominated_sort: empty population");
    const std::size_t n = pop.size();
    std::vector<std::vector<std::size_t>> dominated(n);
    std::vector<std::size_t> count(n, 0);

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (dominates(pop[i], pop[j])) {
                dominated[i].push_back(j);
                ++count[j];
            } else if (dominates(pop[j], pop[i])) {
                dominated[j].push_back(i);
                ++count[i];
            }
        }
    }

    std::vector<std::vector<std::size_t>> fronts;
    std::vector<std::size_t> current;
    for (std::size_t i = 0; i < n; ++i)
        if (count[i] == 0) current.push_back(i);
    while (!current.empty()) {
        std::vector<std::size_t> next;
        for (std::size_t i : current)
            for (std::size_t j : dominated[i])
                if (--count[j] == 0) next.push_back(j);
        fronts.push_back(std::move(current));
        current = std::move(next);
    }
    return fronts;
}

std::vector<double> crowding_distance(const std::vector<std::vector<double>>& front_values) {
    if (front_values.empty()) throw ValidationError("crowding_distance: empty front");
    const std::size_t n = front_values.size();
    const std::size_t o = front_values.front().size();
    std::vector<double> dist(n, 0.0);
    if (n <= 2) {
        std::fill(dist.begin(), dist.end(), kInf);
        return dist;
    }
    std::vector<std::size_t> order(n);
    for (std::size_t j = 0; j < o; ++j) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return front_values[a][j] < front_values[b][j];
        });
        dist[order.front()] = kInf;
        dist[order.back()] = kInf;
        double range = front_values[order.back()][j] - front_values[order.front()][j];
        if (range <= 0.0) continue; // zero-range objective contributes nothing
        for (std::size_t k = 1; k + 1 < n; ++k) {
            if (dist[order[k]] == kInf) continue;
            dist[order[k]] += (front_values[order[k + 1]][j] - front_values[order[k - 1]][j]) / range;
        }
    }
    return dist;
}

namespace {

double perpendicular_distance(const std::vector<double>& p, const std::vector<double>& r) {
    double rr = 0.0, pr = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        rr += r[i] * r[i];
        pr += p[i] * r[i];
    }
    double t = pr / rr;
    double d2 = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        double diff = p[i] - t * r[i];
        d2 += diff * diff;
    }
    return std::sqrt(d2);
}

} // namespace

std::vector<std::size_t> niche_select(const std::vector<std::vector<double>>& values,
                                      const std::vector<std::size_t>& already_selected,
                                      const std::vector<std::size_t>& partial_front,
                                      const ReferencePointSet& refs, std::size_t k,
                                      std::uint64_t seed) {
    if (refs.points.empty()) throw ValidationError("niche_select: empty reference set");
    if (k > partial_front.size())
        throw ValidationError("niche_select: k exceeds partial front size");
    if (k == 0) return {};

    // Normalize by ideal point and per-objective spread over the merged set.
    std::vector<std::size_t> merged = already_selected;
    merged.insert(merged.end(), partial_front.begin(), partial_front.end());
    const std::size_t o = values[merged.front()].size();
    std::vector<double> ideal(o, kInf), maxv(o, -kInf);
    for (std::size_t i : merged) {
        for (std::size_t j = 0; j < o; ++j) {
            ideal[j] = std::min(ideal[j], values[i][j]);
            maxv[j] = std::max(maxv[j], values[i][j]);
        }
    }
    std::vector<double> scale(o);
    for (std::size_t j = 0; j < o; ++j) scale[j] = std::max(maxv[j] - ideal[j], 1e-12);

    auto associate = [&](std::size_t i) {
        std::vector<double> p(o);
        for (std::size_t j = 0; j < o; ++j) p[j] = (values[i][j] - ideal[j]) / scale[j];
        std::size_t best_ref = 0;
        double best_d = kInf;
        for (std::size_t r = 0; r < refs.points.size(); ++r) {
            double d = perpendicular_distance(p, refs.points[r]);
            if (d < best_d) {
                best_d = d;
                best_ref = r;
            }
        }
        return std::make_pair(best_ref, best_d);
    };

    std::vector<std::size_t> niche_count(refs.points.size(), 0);
    for (std::size_t i : already_selected) niche_count[associate(i).first] += 1;

    struct PoolEntry {
        std::size_t index;
        std::size_t ref;
        double dist;
        bool taken = false;
    };
    std::vector<PoolEntry> pool;
    pool.reserve(partial_front.size());
    std::vector<std::vector<std::size_t>> members(refs.points.size()); // pool slots per ref
    for (std::size_t i : partial_front) {
        auto [ref, dist] = associate(i);
        members[ref].push_back(pool.size());
        pool.push_back({i, ref, dist});
    }

    Rng rng(seed);
    std::vector<char> ref_closed(refs.points.size(), 0);
    std::vector<std::size_t> chosen;
    chosen.reserve(k);
    while (chosen.size() < k) {
        // least-crowded open niche, ties by lowest index
        std::size_t best_ref = refs.points.size();
        for (std::size_t r = 0; r < refs.points.size(); ++r) {
            if (ref_closed[r]) continue;
            if (best_ref == refs.points.size() || niche_count[r] < niche_count[best_ref]) best_ref = r;
        }
        auto& slots = members[best_ref];
        std::erase_if(slots, [&](std::size_t s) { return pool[s].taken; });
        if (slots.empty()) {
            ref_closed[best_ref] = 1; // nothing available here anymore
            continue;
        }
        std::size_t pick;
        if (niche_count[best_ref] == 0) {
            // empty niche: closest solution wins, ties by pool order
            pick = slots.front();
            for (std::size_t s : slots)
                if (pool[s].dist < pool[pick].dist) pick = s;
        } else {
            pick = slots[static_cast<std::size_t>(rng.below(slots.size()))];
        }
        pool[pick].taken = true;
        niche_count[best_ref] += 1;
        chosen.push_back(pool[pick].index);
    }
    return chosen;
}

GenomeBox genome_box(const ParameterSpace& space) {
    GenomeBox box;
    for (const auto& p : space.params()) {
        box.low.push_back(p.low);
        // integer genes stay continuous; floor decoding maps
        // [high, high+0.999] onto the top value
        box.high.push_back(p.kind == ParamKind::Integer ? p.high + 0.999 : p.high);
    }
    return box;
}

std::vector<double> decode_genome(const ParameterSpace& space, std::span<const double> genome) {
    std::vector<double> x(genome.begin(), genome.end());
    for (std::size_t d = 0; d < space.size(); ++d) {
        const auto& p = space.param(d);
        if (p.kind == ParamKind::Integer) x[d] = std::min(std::floor(x[d]), p.high);
    }
    return x;
}

std::pair<std::vector<double>, std::vector<double>> sbx_crossover(std::span<const double> p1,
                                                                  std::span<const double> p2,
                                                                  double eta_c, const GenomeBox& box,
                                                                  Rng& rng) {
    std::vector<double> c1(p1.begin(), p1.end());
    std::vector<double> c2(p2.begin(), p2.end());
    for (std::size_t i = 0; i < c1.size(); ++i) {
        if (rng.uniform() >= 0.5) continue; // each gene mixes with probability 1/2
        if (std::abs(p1[i] - p2[i]) < 1e-14) continue;
        double u = rng.uniform();
        double beta = u <= 0.5 ? std::pow(2.0 * u, 1.0 / (eta_c + 1.0))
                               : std::pow(1.0 / (2.0 * (1.0 - u)), 1.0 / (eta_c + 1.0));
        double a = p1[i], b = p2[i];
        c1[i] = 0.5 * ((1.0 + beta) * a + (1.0 - beta) * b);
        c2[i] = 0.5 * ((1.0 - beta) * a + (1.0 + beta) * b);
    }
    for (std::size_t i = 0; i < c1.size(); ++i) {
        c1[i] = std::clamp(c1[i], box.low[i], box.high[i]);
        c2[i] = std::clamp(c2[i], box.low[i], box.high[i]);
    }
    return {std::move(c1), std::move(c2)};
}

std::vector<double> polynomial_mutation(std::span<const double> x, double eta_m, double p_m,
                                        const GenomeBox& box, Rng& rng) {
    std::vector<double> out(x.begin(), x.end());
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (rng.uniform() >= p_m) continue;
        double lo = box.low[i], hi = box.high[i];
        if (!(hi > lo)) continue;
        double u = rng.uniform();
        double d1 = (out[i] - lo) / (hi - lo);
        double d2 = (hi - out[i]) / (hi - lo);
        double dq;
        if (u < 0.5) {
            double val = 2.0 * u + (1.0 - 2.0 * u) * std::pow(1.0 - d1, eta_m + 1.0);
            dq = std::pow(val, 1.0 / (eta_m + 1.0)) - 1.0;
        } else {
            double val = 2.0 * (1.0 - u) + (2.0 * u - 1.0) * std::pow(1.0 - d2, eta_m + 1.0);
            dq = 1.0 - std::pow(val, 1.0 / (eta_m + 1.0));
        }
        out[i] = std::clamp(out[i] + dq * (hi - lo), lo, hi);
    }
    return out;
}

namespace {

void sanitize(ObjectiveVector& v, bool& warned) {
    bool bad = !std::isfinite(v.total_violation);
    for (double x : v.values) bad = bad || !std::isfinite(x);
    if (!bad) return;
    if (!warned) {
        std::fprintf(stderr, "fzopt: non-finite evaluator output, marking individual worst-infeasible\n");
        warned = true;
    }
    std::fill(v.values.begin(), v.values.end(), kWorst);
    v.total_violation = kWorst;
    v.feasible = false;
}

// Order-stable parallel map: each worker writes its own slots, so results
// match the sequential path for any thread count.
void evaluate_all(std::vector<Individual>& pop, const ParameterSpace& space,
                  const GaEvaluator& evaluator, int threads, bool& warned) {
    auto eval_one = [&](Individual& ind) {
        auto x = decode_genome(space, ind.genome);
        ind.obj = evaluator(x);
    };
    if (threads <= 1 || pop.size() < 2) {
        for (auto& ind : pop) eval_one(ind);
    } else {
        std::vector<std::thread> workers;
        std::size_t nw = std::min<std::size_t>(static_cast<std::size_t>(threads), pop.size());
        for (std::size_t w = 0; w < nw; ++w) {
            workers.emplace_back([&, w] {
                for (std::size_t i = w; i < pop.size(); i += nw) eval_one(pop[i]);
            });
        }
        for (auto& t : workers) t.join();
    }
    for (auto& ind : pop) sanitize(ind.obj, warned);
}

void assign_rank_and_crowding(std::vector<Individual>& pop, bool with_crowding) {
    auto fronts = fast_nondominated_sort(pop);
    for (std::size_t f = 0; f < fronts.size(); ++f) {
        for (std::size_t i : fronts[f]) pop[i].rank = static_cast<int>(f);
        if (!with_crowding) continue;
        std::vector<std::vector<double>> vals;
        vals.reserve(fronts[f].size());
        for (std::size_t i : fronts[f]) vals.push_back(pop[i].obj.values);
        auto dist = crowding_distance(vals);
        for (std::size_t k = 0; k < fronts[f].size(); ++k) pop[fronts[f][k]].crowding = dist[k];
    }
}

std::size_t tournament(const std::vector<Individual>& pop, std::size_t a, std::size_t b, Algo algo,
                       Rng& rng) {
    if (pop[a].rank != pop[b].rank) return pop[a].rank < pop[b].rank ? a : b;
    if (algo == Algo::Nsga2 && pop[a].crowding != pop[b].crowding)
        return pop[a].crowding > pop[b].crowding ? a : b;
    return rng.uniform() < 0.5 ? a : b;
}

GenStats collect_stats(const std::vector<Individual>& pop, int gen) {
    GenStats s;
    s.gen = gen;
    const std::size_t o = pop.front().obj.values.size();
    s.best.assign(o, std::numeric_limits<double>::quiet_NaN());
    for (const auto& ind : pop) {
        if (ind.rank == 0) s.front1 += 1;
        if (!ind.obj.feasible) continue;
        s.feasible += 1;
        for (std::size_t j = 0; j < o; ++j)
            if (std::isnan(s.best[j]) || ind.obj.values[j] < s.best[j]) s.best[j] = ind.obj.values[j];
    }
    return s;
}

} // namespace

GaResult nsga_run(const GaConfig& cfg, const ParameterSpace& space, const GaEvaluator& evaluator) {
    cfg.validate();
    space.validate();

    const GenomeBox box = genome_box(space);
    bool warned = false;

    GaResult result;
    result.algorithm = cfg.algorithm;
    result.final_generation = cfg.generations;

    // Initial population by Latin hypercube over the physical space.
    DesignMatrix dm = lhs_sample(space, cfg.population, mix_seed(cfg.seed, 0));
    std::vector<Individual> pop(cfg.population);
    for (std::size_t i = 0; i < cfg.population; ++i) pop[i].genome = dm.rows[i];
    evaluate_all(pop, space, evaluator, cfg.threads, warned);

    const std::size_t n_obj = pop.front().obj.values.size();
    ReferencePointSet refs;
    if (cfg.algorithm == Algo::Nsga3) refs = das_dennis(static_cast<int>(n_obj), cfg.granularity);

    assign_rank_and_crowding(pop, cfg.algorithm == Algo::Nsga2);
    result.stats.push_back(collect_stats(pop, 0));

    Rng rng(mix_seed(cfg.seed, 1));
    std::vector<std::size_t> mating_a(cfg.population), mating_b(cfg.population);
    std::iota(mating_a.begin(), mating_a.end(), std::size_t{0});
    std::iota(mating_b.begin(), mating_b.end(), std::size_t{0});

    for (int gen = 1; gen <= cfg.generations; ++gen) {
        // variation: paired binary tournaments over two shuffled index
        // lists, so every individual enters exactly two tournaments per
        // generation; SBX per winning pair, then mutation
        rng.shuffle(mating_a);
        rng.shuffle(mating_b);
        std::vector<Individual> offspring;
        offspring.reserve(cfg.population);
        for (std::size_t pair = 0; offspring.size() < cfg.population; ++pair) {
            std::size_t k = (2 * pair) % cfg.population;
            std::size_t i1 = tournament(pop, mating_a[k], mating_a[k + 1], cfg.algorithm, rng);
            std::size_t i2 = tournament(pop, mating_b[k], mating_b[k + 1], cfg.algorithm, rng);
            std::vector<double> c1, c2;
            if (rng.uniform() < cfg.crossover_prob) {
                auto [a, b] = sbx_crossover(pop[i1].genome, pop[i2].genome, cfg.eta_c, box, rng);
                c1 = std::move(a);
                c2 = std::move(b);
            } else {
                c1 = pop[i1].genome;
                c2 = pop[i2].genome;
            }
            Individual o1, o2;
            o1.genome = polynomial_mutation(c1, cfg.eta_m, cfg.mutation_prob, box, rng);
            o2.genome = polynomial_mutation(c2, cfg.eta_m, cfg.mutation_prob, box, rng);
            offspring.push_back(std::move(o1));
            offspring.push_back(std::move(o2));
        }
        evaluate_all(offspring, space, evaluator, cfg.threads, warned);

        // (mu+lambda) environmental selection
        std::vector<Individual> merged = std::move(pop);
        merged.insert(merged.end(), std::make_move_iterator(offspring.begin()),
                      std::make_move_iterator(offspring.end()));
        auto fronts = fast_nondominated_sort(merged);

        std::vector<Individual> next;
        next.reserve(cfg.population);
        std::vector<std::size_t> selected_idx;
        std::size_t f = 0;
        while (f < fronts.size() && selected_idx.size() + fronts[f].size() <= cfg.population) {
            for (std::size_t i : fronts[f]) {
                merged[i].rank = static_cast<int>(f);
                selected_idx.push_back(i);
            }
            ++f;
        }
        if (selected_idx.size() < cfg.population && f < fronts.size()) {
            std::size_t need = cfg.population - selected_idx.size();
            const auto& critical = fronts[f];
            if (cfg.algorithm == Algo::Nsga2) {
                std::vector<std::vector<double>> vals;
                vals.reserve(critical.size());
                for (std::size_t i : critical) vals.push_back(merged[i].obj.values);
                auto dist = crowding_distance(vals);
                std::vector<std::size_t> order(critical.size());
                std::iota(order.begin(), order.end(), std::size_t{0});
                std::stable_sort(order.begin(), order.end(),
                                 [&](std::size_t a, std::size_t b) { return dist[a] > dist[b]; });
                for (std::size_t k = 0; k < need; ++k) {
                    std::size_t i = critical[order[k]];
                    merged[i].rank = static_cast<int>(f);
                    merged[i].crowding = dist[order[k]];
                    selected_idx.push_back(i);
                }
            } else {
                std::vector<std::vector<double>> values(merged.size());
                for (std::size_t i = 0; i < merged.size(); ++i) values[i] = merged[i].obj.values;
                auto chosen = niche_select(values, selected_idx, critical, refs, need,
                                           mix_seed(cfg.seed, 1000 + static_cast<std::uint64_t>(gen)));
                for (std::size_t i : chosen) {
                    merged[i].rank = static_cast<int>(f);
                    selected_idx.push_back(i);
                }
            }
        }
        for (std::size_t i : selected_idx) next.push_back(std::move(merged[i]));
        pop = std::move(next);

        assign_rank_and_crowding(pop, cfg.algorithm == Algo::Nsga2);
        result.stats.push_back(collect_stats(pop, gen));
    }

    // final bookkeeping: ranks and crowding on the surviving population
    assign_rank_and_crowding(pop, true);
    result.population = std::move(pop);
    return result;
}

void write_solutions_csv(const GaResult& result, const ParameterSpace& space,
                         const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot open '" + path + "' for writing");
    const std::size_t o = result.population.empty() ? 0 : result.population.front().obj.values.size();
    out << "algo,gen,idx";
    for (std::size_t d = 0; d < space.size(); ++d) out << ',' << space.param(d).name;
    for (std::size_t j = 1; j <= o; ++j) out << ",O" << j;
    out << ",violation,rank,crowding\n";
    const char* algo = result.algorithm == Algo::Nsga2 ? "nsga2" : "nsga3";
    for (std::size_t i = 0; i < result.population.size(); ++i) {
        const auto& ind = result.population[i];
        out << algo << ',' << result.final_generation << ',' << i;
        auto x = decode_genome(space, ind.genome);
        for (double v : x) out << ',' << fmt_double(v);
        for (double v : ind.obj.values) out << ',' << fmt_double(v);
        out << ',' << fmt_double(ind.obj.total_violation) << ',' << ind.rank << ','
            << fmt_double(ind.crowding) << '\n';
    }
}

void write_stats_csv(const GaResult& result, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot open '" + path + "' for writing");
    const std::size_t o = result.stats.empty() ? 0 : result.stats.front().best.size();
    out << "gen,feasible,front1";
    for (std::size_t j = 1; j <= o; ++j) out << ",best_O" << j;
    out << '\n';
    for (const auto& s : result.stats) {
        out << s.gen << ',' << s.feasible << ',' << s.front1;
        for (double b : s.best) out << ',' << fmt_double(b);
        out << '\n';
    }
}

std::vector<SolutionRow> read_solutions_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open solutions file '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw DataError("solutions file '" + path + "' is empty");
    auto header = split_csv_line(line);
    std::size_t n_x = 0, n_o = 0;
    for (const auto& h : header) {
        if (!h.empty() && h[0] == 'x') ++n_x;
        if (!h.empty() && h[0] == 'O') ++n_o;
    }
    if (header.size() != 3 + n_x + n_o + 3)
        throw DataError("solutions file '" + path + "': unexpected header");

    std::vector<SolutionRow> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto cells = split_csv_line(line);
        std::string where = path + ":" + std::to_string(lineno);
        if (cells.size() != header.size()) throw DataError(where + ": arity mismatch");
        SolutionRow row;
        std::size_t c = 0;
        row.algo = std::string(cells[c++]);
        row.gen = static_cast<int>(parse_double(cells[c++], where));
        row.idx = static_cast<std::size_t>(parse_double(cells[c++], where));
        for (std::size_t i = 0; i < n_x; ++i) row.x.push_back(parse_double(cells[c++], where));
        for (std::size_t i = 0; i < n_o; ++i) row.obj.values.push_back(parse_double(cells[c++], where));
        row.obj.total_violation = parse_double(cells[c++], where);
        row.obj.feasible = row.obj.total_violation == 0.0;
        row.rank = static_cast<int>(parse_double(cells[c++], where));
        row.crowding = parse_double(cells[c++], where);
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace fzopt
