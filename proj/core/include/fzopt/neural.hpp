#ifndef FZOPT_NEURAL_HPP
#define FZOPT_NEURAL_HPP

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "fzopt/dataset.hpp"

namespace fzopt {

/// Feed-forward regression topology: 1-10 hidden layers of 2-64 rectifier
/// units between a 12-wide input and a 6-wide linear output.
struct Architecture {
    std::vector<int> hidden;
    int input_dim = static_cast<int>(kNumInputs);
    int output_dim = static_cast<int>(kNumOutputs);

    void validate() const;
    bool operator==(const Architecture&) const = default;
};

struct Layer {
    Eigen::MatrixXd W;
    Eigen::VectorXd b;
};

/// Weights and biases, one Layer per linear map. Hidden activations are
/// max(0,x); the output layer is identity. Immutable outside training;
/// forward() is read-only and safe to share across threads.
struct Network {
    Architecture arch;
    std::vector<Layer> layers;
};

using Grads = std::vector<Layer>;

struct TrainConfig {
    int epochs = 100;
    double learning_rate = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
    int batch_size = 32;
    std::uint64_t seed = 0;
};

/// Glorot-uniform weights (+-sqrt(6/(fan_in+fan_out))), zero biases,
/// filled in row-major order from the seeded generator.
Network init_network(const Architecture& arch, std::uint64_t seed);

/// Columns are samples: X is input_dim x n, result output_dim x n.
Eigen::MatrixXd forward(const Network& net, const Eigen::MatrixXd& X);
Eigen::VectorXd forward(const Network& net, const Eigen::VectorXd& x);

struct LossBreakdown {
    Eigen::VectorXd per_output; // L_j = (1/n) sum_i (pred_ji - y_ji)^2
    double total = 0.0;         // sum over outputs
};
LossBreakdown mse_loss(const Eigen::MatrixXd& pred, const Eigen::MatrixXd& target);

/// Exact reverse-mode gradients of the total MSE over the batch w.r.t.
/// every weight and bias. Rectifier subgradient at 0 is taken as 0.
Grads gradients(const Network& net, const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y);

struct AdamState {
    std::vector<Layer> m;
    std::vector<Layer> v;
    long step = 0;
};
AdamState make_adam_state(const Network& net);

/// Bias-corrected Adam update, in place.
void adam_step(Network& net, const Grads& grads, AdamState& state, const TrainConfig& cfg);

struct TrainResult {
    Network net;
    std::vector<double> loss_history; // full-data total loss after each epoch
};

/// Mini-batch Adam over shuffled data for cfg.epochs passes. Deterministic
/// given (arch, data, cfg). Throws NumericError if parameters go non-finite.
TrainResult train(const Architecture& arch, const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y,
                  const TrainConfig& cfg);

/// Column-major sample matrices (X: 12 x n, Y: 6 x n) from a dataset.
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> to_matrices(const Dataset& data);

} // namespace fzopt

#endif
