#ifndef FZOPT_ENSEMBLE_HPP
#define FZOPT_ENSEMBLE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fzopt/dataset.hpp"
#include "fzopt/neural.hpp"

namespace fzopt {

/// Mean predictor over M identically architected, independently seeded
/// networks, plus the scaler that maps between physical and unit space.
struct EnsembleModel {
    Architecture arch;
    std::vector<Network> members;
    Scaler scaler;

    std::size_t size() const { return members.size(); }
};

struct Prediction {
    std::vector<double> mean;   // per output
    std::vector<double> spread; // per-output sample standard deviation (diagnostic)
};

/// Member-mean prediction for a point already in scaled units.
Prediction ensemble_predict(const EnsembleModel& model, std::span<const double> x_scaled);

/// Convenience for physical-unit callers (the GA): scales x, predicts,
/// unscales the mean back to physical units.
std::vector<double> ensemble_predict_physical(const EnsembleModel& model,
                                              std::span<const double> x_physical);

/// Trains member m with seed base_seed+m on the full (scaled) split.
EnsembleModel train_ensemble(const Architecture& arch, const Eigen::MatrixXd& X,
                             const Eigen::MatrixXd& Y, const Scaler& scaler, std::size_t m_members,
                             std::uint64_t base_seed, const TrainConfig& cfg);

/// Seeded balanced partition: folds are disjoint, cover 0..n-1 exactly
/// once and differ in size by at most one.
std::vector<std::vector<std::size_t>> kfold_split(std::size_t n, std::size_t k, std::uint64_t seed);

struct CvResult {
    double mean_loss = 0.0;
    std::vector<double> fold_losses;
};

/// k-fold cross-validation loss of one architecture: trains k times, each
/// holding out one fold, and averages the held-out total MSE.
CvResult cv_loss(const Architecture& arch, const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y,
                 std::size_t k, const TrainConfig& cfg);

// --- architecture search ---

struct HpoBounds {
    int min_layers = 1;
    int max_layers = 10;
    int min_neurons = 2;
    int max_neurons = 64;
};

struct HpoTrial {
    Architecture arch;
    double mean_loss = 0.0;
    std::vector<double> fold_losses;
    std::size_t index = 0;
};

enum class HpoMethod { Random, Tpe };

/// Simplified univariate TPE suggestion. Below 10 observed trials the
/// draw is uniform within bounds; afterwards the history splits at the
/// 0.25 loss quantile, depth and per-position width get add-one smoothed
/// histograms, and the best of 24 candidates drawn from the good model is
/// returned by good/bad likelihood ratio.
Architecture tpe_suggest(const std::vector<HpoTrial>& history, const HpoBounds& bounds,
                         std::uint64_t seed);

struct HpoReport {
    std::vector<HpoTrial> trials;        // sorted ascending by mean loss, ties by index
    std::vector<HpoTrial> best_per_depth; // one row per hidden-layer count encountered
};

/// Evaluates `budget` architectures by cv_loss, either uniformly at
/// random or TPE-guided.
HpoReport search_architectures(const HpoBounds& bounds, std::size_t budget, HpoMethod method,
                               const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y, std::size_t k,
                               const TrainConfig& cfg, std::uint64_t seed);

/// Standard coefficient of determination per output, 1 - SSres/SStot.
/// Outputs with constant targets are undefined and reported as nullopt.
std::vector<std::optional<double>> r_squared(const Eigen::MatrixXd& pred,
                                             const Eigen::MatrixXd& target);

// --- file formats ---

/// Single-network model file: JSON {version, architecture, scaler,
/// layers:[{W: row-major nested arrays, b: array}]}. Round-trips exactly.
void save_network_json(const Network& net, const Scaler& scaler, const std::string& path);
std::pair<Network, Scaler> load_network_json(const std::string& path);

/// Ensemble model file: same schema with a members array of layer stacks.
void save_ensemble_json(const EnsembleModel& model, const std::string& path);
EnsembleModel load_ensemble_json(const std::string& path);
std::string ensemble_to_json(const EnsembleModel& model);
EnsembleModel ensemble_from_json(const std::string& text);

/// HPO report CSV: trial,mean_loss,fold_losses(json),depth,widths(json).
void write_hpo_report_csv(const std::vector<HpoTrial>& trials, const std::string& path);

/// Best-per-depth table CSV: mse,hidden_layers,n1..n10.
void write_best_per_depth_csv(const std::vector<HpoTrial>& best_per_depth, const std::string& path);

} // namespace fzopt

#endif
