#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "fzopt/ensemble.hpp"
#include "fzopt/errors.hpp"
#include "fzopt/rng.hpp"

namespace fzopt {

namespace {

constexpr std::size_t kTpeMinHistory = 10;
constexpr double kTpeGamma = 0.25;
constexpr std::size_t kTpeCandidates = 24;

void check_bounds(const HpoBounds& b) {
    if (b.min_layers < 1 || b.min_layers > b.max_layers || b.min_neurons < 1 ||
        b.min_neurons > b.max_neurons)
        throw ValidationError("empty architecture bounds");
}

Architecture uniform_arch(const HpoBounds& b, Rng& rng) {
    Architecture a;
    int depth = b.min_layers + static_cast<int>(rng.below(static_cast<std::uint64_t>(b.max_layers - b.min_layers + 1)));
    a.hidden.resize(static_cast<std::size_t>(depth));
    for (int& w : a.hidden)
        w = b.min_neurons + static_cast<int>(rng.below(static_cast<std::uint64_t>(b.max_neurons - b.min_neurons + 1)));
    return a;
}

// Add-one smoothed histogram over the integers [lo, hi].
struct SmoothedHistogram {
    int lo = 0;
    std::vector<double> counts; // raw counts, smoothing applied on read
    double total = 0.0;

    SmoothedHistogram(int lo_, int hi_) : lo(lo_), counts(static_cast<std::size_t>(hi_ - lo_ + 1), 0.0) {}

    void add(int v) {
        counts[static_cast<std::size_t>(v - lo)] += 1.0;
        total += 1.0;
    }
    double prob(int v) const {
        double denom = total + static_cast<double>(counts.size());
        return (counts[static_cast<std::size_t>(v - lo)] + 1.0) / denom;
    }
    int sample(Rng& rng) const {
        double denom = total + static_cast<double>(counts.size());
        double target = rng.uniform() * denom;
        double acc = 0.0;
        for (std::size_t i = 0; i < counts.size(); ++i) {
            acc += counts[i] + 1.0;
            if (target < acc) return lo + static_cast<int>(i);
        }
        return lo + static_cast<int>(counts.size()) - 1;
    }
};

struct TpeModel {
    SmoothedHistogram depth;
    std::vector<SmoothedHistogram> width_at; // one per hidden-layer position

    TpeModel(const HpoBounds& b)
        : depth(b.min_layers, b.max_layers),
          width_at(static_cast<std::size_t>(b.max_layers), SmoothedHistogram(b.min_neurons, b.max_neurons)) {}

    void add(const Architecture& a) {
        depth.add(static_cast<int>(a.hidden.size()));
        for (std::size_t p = 0; p < a.hidden.size(); ++p) width_at[p].add(a.hidden[p]);
    }
    double log_likelihood(const Architecture& a) const {
        double ll = std::log(depth.prob(static_cast<int>(a.hidden.size())));
        for (std::size_t p = 0; p < a.hidden.size(); ++p) ll += std::log(width_at[p].prob(a.hidden[p]));
        return ll;
    }
    Architecture sample(Rng& rng) const {
        Architecture a;
        int d = depth.sample(rng);
        a.hidden.resize(static_cast<std::size_t>(d));
        for (int p = 0; p < d; ++p) a.hidden[static_cast<std::size_t>(p)] = width_at[static_cast<std::size_t>(p)].sample(rng);
        return a;
    }
};

} // namespace

Architecture tpe_suggest(const std::vector<HpoTrial>& history, const HpoBounds& bounds,
                         std::uint64_t seed) {
    check_bounds(bounds);
    Rng rng(seed);
    if (history.size() < kTpeMinHistory) return uniform_arch(bounds, rng);

    std::vector<std::size_t> order(history.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (history[a].mean_loss != history[b].mean_loss)
            return history[a].mean_loss < history[b].mean_loss;
        return history[a].index < history[b].index;
    });
    auto n_good = static_cast<std::size_t>(
        std::ceil(kTpeGamma * static_cast<double>(history.size())));
    n_good = std::max<std::size_t>(1, std::min(n_good, history.size()));

    TpeModel good(bounds), bad(bounds);
    for (std::size_t i = 0; i < order.size(); ++i)
        (i < n_good ? good : bad).add(history[order[i]].arch);

    Architecture best;
    double best_score = -std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < kTpeCandidates; ++c) {
        Architecture cand = good.sample(rng);
        double score = good.log_likelihood(cand) - bad.log_likelihood(cand);
        if (score > best_score) {
            best_score = score;
            best = std::move(cand);
        }
    }
    return best;
}

HpoReport search_architectures(const HpoBounds& bounds, std::size_t budget, HpoMethod method,
                               const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y, std::size_t k,
                               const TrainConfig& cfg, std::uint64_t seed) {
    check_bounds(bounds);
    if (budget < 1) throw ValidationError("search budget must be >= 1");

    HpoReport report;
    report.trials.reserve(budget);
    for (std::size_t t = 0; t < budget; ++t) {
        Architecture arch;
        if (method == HpoMethod::Tpe) {
            arch = tpe_suggest(report.trials, bounds, mix_seed(seed, t));
        } else {
            Rng rng(mix_seed(seed, t));
            arch = uniform_arch(bounds, rng);
        }
        // Same cfg.seed for every trial: all architectures see identical
        // folds, so cross-validation scores are comparable.
        CvResult cv = cv_loss(arch, X, Y, k, cfg);
        report.trials.push_back({std::move(arch), cv.mean_loss, std::move(cv.fold_losses), t});
    }

    // best trial per hidden-layer count, then global ranking
    std::vector<HpoTrial> best_by_depth;
    for (const auto& t : report.trials) {
        auto it = std::find_if(best_by_depth.begin(), best_by_depth.end(), [&](const HpoTrial& b) {
            return b.arch.hidden.size() == t.arch.hidden.size();
        });
        if (it == best_by_depth.end())
            best_by_depth.push_back(t);
        else if (t.mean_loss < it->mean_loss)
            *it = t;
    }
    auto by_loss = [](const HpoTrial& a, const HpoTrial& b) {
        if (a.mean_loss != b.mean_loss) return a.mean_loss < b.mean_loss;
        return a.index < b.index;
    };
    std::sort(best_by_depth.begin(), best_by_depth.end(), by_loss);
    std::sort(report.trials.begin(), report.trials.end(), by_loss);
    report.best_per_depth = std::move(best_by_depth);
    return report;
}

} // namespace fzopt
