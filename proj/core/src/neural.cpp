#include "fzopt/neural.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>

#include "fzopt/errors.hpp"
#include "fzopt/rng.hpp"

namespace fzopt {

void Architecture::validate() const {
    if (hidden.empty() || hidden.size() > 10)
        throw ValidationError("architecture must have 1-10 hidden layers, got " +
                              std::to_string(hidden.size()));
    for (int w : hidden)
        if (w < 2 || w > 64)
            throw ValidationError("hidden layer width must be in [2,64], got " + std::to_string(w));
    if (input_dim < 1 || output_dim < 1) throw ValidationError("network dims must be positive");
}

Network init_network(const Architecture& arch, std::uint64_t seed) {
    arch.validate();
    Rng rng(seed);
    Network net;
    net.arch = arch;
    int prev = arch.input_dim;
    std::vector<int> widths = arch.hidden;
    widths.push_back(arch.output_dim);
    for (int w : widths) {
        Layer layer;
        layer.W.resize(w, prev);
        layer.b = Eigen::VectorXd::Zero(w);
        double bound = std::sqrt(6.0 / (prev + w));
        for (int i = 0; i < w; ++i)
            for (int j = 0; j < prev; ++j)
                layer.W(i, j) = rng.uniform(-bound, bound);
        net.layers.push_back(std::move(layer));
        prev = w;
    }
    return net;
}

namespace {

void check_input_shape(const Network& net, Eigen::Index rows) {
    if (net.layers.empty()) throw ValidationError("network has no layers");
    if (rows != net.layers.front().W.cols())
        throw ValidationError("forward: input has " + std::to_string(rows) + " rows, network expects " +
                              std::to_string(net.layers.front().W.cols()));
}

// Linear-layer outputs before activation, one matrix per layer.
std::vector<Eigen::MatrixXd> forward_cached(const Network& net, const Eigen::MatrixXd& X) {
    std::vector<Eigen::MatrixXd> zs;
    zs.reserve(net.layers.size());
    Eigen::MatrixXd a = X;
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        Eigen::MatrixXd z = (net.layers[l].W * a).colwise() + net.layers[l].b;
        if (l + 1 < net.layers.size()) a = z.cwiseMax(0.0);
        zs.push_back(std::move(z));
    }
    return zs;
}

} // namespace

Eigen::MatrixXd forward(const Network& net, const Eigen::MatrixXd& X) {
    check_input_shape(net, X.rows());
    Eigen::MatrixXd a = X;
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        a = (net.layers[l].W * a).colwise() + net.layers[l].b;
        if (l + 1 < net.layers.size()) a = a.cwiseMax(0.0);
    }
    return a;
}

Eigen::VectorXd forward(const Network& net, const Eigen::VectorXd& x) {
    return forward(net, Eigen::MatrixXd(x)).col(0);
}

LossBreakdown mse_loss(const Eigen::MatrixXd& pred, const Eigen::MatrixXd& target) {
    if (pred.rows() != target.rows() || pred.cols() != target.cols())
        throw ValidationError("mse_loss: shape mismatch");
    if (pred.cols() == 0) throw ValidationError("mse_loss: empty input");
    LossBreakdown out;
    out.per_output =
        (pred - target).array().square().rowwise().sum() / static_cast<double>(pred.cols());
    out.total = out.per_output.sum();
    return out;
}

Grads gradients(const Network& net, const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y) {
    check_input_shape(net, X.rows());
    if (X.cols() == 0) throw ValidationError("gradients: empty batch");
    if (Y.cols() != X.cols() || Y.rows() != net.layers.back().W.rows())
        throw ValidationError("gradients: target shape mismatch");

    auto zs = forward_cached(net, X);
    const double n = static_cast<double>(X.cols());
    const std::size_t L = net.layers.size();

    Grads grads(L);
    // d(total MSE)/d(pred) = 2/n * residual
    Eigen::MatrixXd delta = 2.0 / n * (zs.back() - Y);
    for (std::size_t l = L; l-- > 0;) {
        if (l == 0)
            grads[l].W = delta * X.transpose();
        else
            grads[l].W = delta * zs[l - 1].cwiseMax(0.0).transpose();
        grads[l].b = delta.rowwise().sum();
        if (l > 0) {
            delta = net.layers[l].W.transpose() * delta;
            // subgradient at exactly 0 is 0
            delta = ((zs[l - 1].array() > 0.0).cast<double>() * delta.array()).matrix();
        }
    }
    return grads;
}

AdamState make_adam_state(const Network& net) {
    AdamState st;
    for (const auto& layer : net.layers) {
        Layer zero;
        zero.W = Eigen::MatrixXd::Zero(layer.W.rows(), layer.W.cols());
        zero.b = Eigen::VectorXd::Zero(layer.b.size());
        st.m.push_back(zero);
        st.v.push_back(std::move(zero));
    }
    return st;
}

void adam_step(Network& net, const Grads& grads, AdamState& state, const TrainConfig& cfg) {
    if (grads.size() != net.layers.size() || state.m.size() != net.layers.size())
        throw ValidationError("adam_step: state/grads shape mismatch");
    state.step += 1;
    const double bc1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(state.step));
    const double bc2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(state.step));
    auto update = [&]<typename T>(T& p, T& m, T& v, const T& g) {
        m = cfg.beta1 * m + (1.0 - cfg.beta1) * g;
        v = (cfg.beta2 * v.array() + (1.0 - cfg.beta2) * g.array().square()).matrix();
        p.array() -= cfg.learning_rate * (m.array() / bc1) / ((v.array() / bc2).sqrt() + cfg.eps);
    };
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        update(net.layers[l].W, state.m[l].W, state.v[l].W, grads[l].W);
        update(net.layers[l].b, state.m[l].b, state.v[l].b, grads[l].b);
    }
}

TrainResult train(const Architecture& arch, const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y,
                  const TrainConfig& cfg) {
    arch.validate();
    if (X.cols() == 0) throw ValidationError("train: empty dataset");
    if (X.cols() != Y.cols()) throw ValidationError("train: X/Y sample count mismatch");
    if (cfg.epochs < 1 || cfg.batch_size < 1 || cfg.learning_rate <= 0.0)
        throw ValidationError("train: config values must be positive");
    if (X.cols() == 1)
        std::fprintf(stderr, "fzopt: training on a single sample, falling back to full batch\n");

    TrainResult result;
    result.net = init_network(arch, mix_seed(cfg.seed, 0));
    AdamState state = make_adam_state(result.net);
    Rng shuffle_rng(mix_seed(cfg.seed, 1));

    const Eigen::Index n = X.cols();
    const Eigen::Index batch = std::min<Eigen::Index>(cfg.batch_size, n);
    std::vector<std::size_t> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), std::size_t{0});

    Eigen::MatrixXd Xb(X.rows(), batch), Yb(Y.rows(), batch);
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        shuffle_rng.shuffle(order);
        for (Eigen::Index start = 0; start < n; start += batch) {
            Eigen::Index bs = std::min(batch, n - start);
            Xb.resize(X.rows(), bs);
            Yb.resize(Y.rows(), bs);
            for (Eigen::Index k = 0; k < bs; ++k) {
                Xb.col(k) = X.col(static_cast<Eigen::Index>(order[static_cast<std::size_t>(start + k)]));
                Yb.col(k) = Y.col(static_cast<Eigen::Index>(order[static_cast<std::size_t>(start + k)]));
            }
            Grads g = gradients(result.net, Xb, Yb);
            adam_step(result.net, g, state, cfg);
        }
        double loss = mse_loss(forward(result.net, X), Y).total;
        if (!std::isfinite(loss))
            throw NumericError("train: non-finite loss at epoch " + std::to_string(epoch + 1));
        result.loss_history.push_back(loss);
    }
    for (const auto& layer : result.net.layers)
        if (!layer.W.allFinite() || !layer.b.allFinite())
            throw NumericError("train: non-finite parameters after training");
    return result;
}

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> to_matrices(const Dataset& data) {
    const Eigen::Index n = static_cast<Eigen::Index>(data.rows.size());
    Eigen::MatrixXd X(kNumInputs, n), Y(kNumOutputs, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& r = data.rows[static_cast<std::size_t>(i)];
        if (r.x.size() != kNumInputs) throw ValidationError("to_matrices: row arity mismatch");
        for (std::size_t d = 0; d < kNumInputs; ++d) X(static_cast<Eigen::Index>(d), i) = r.x[d];
        for (std::size_t d = 0; d < kNumOutputs; ++d) Y(static_cast<Eigen::Index>(d), i) = r.y[d];
    }
    return {std::move(X), std::move(Y)};
}

} // namespace fzopt
