#include "fzopt/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "fzopt/errors.hpp"
#include "fzopt/io_util.hpp"
#include "fzopt/rng.hpp"

namespace fzopt {

using json = nlohmann::ordered_json;

Prediction ensemble_predict(const EnsembleModel& model, std::span<const double> x_scaled) {
    if (model.members.empty()) throw ValidationError("ensemble has no members");
    if (x_scaled.size() != static_cast<std::size_t>(model.arch.input_dim))
        throw ValidationError("ensemble_predict: input arity mismatch");
    const std::size_t m = model.members.size();
    const std::size_t dim = static_cast<std::size_t>(model.arch.output_dim);

    Eigen::VectorXd x(model.arch.input_dim);
    for (std::size_t i = 0; i < x_scaled.size(); ++i) x(static_cast<Eigen::Index>(i)) = x_scaled[i];

    std::vector<std::vector<double>> outputs(m);
    Prediction p;
    p.mean.assign(dim, 0.0);
    p.spread.assign(dim, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        Eigen::VectorXd y = forward(model.members[i], x);
        outputs[i].assign(y.data(), y.data() + y.size());
        for (std::size_t j = 0; j < dim; ++j) p.mean[j] += outputs[i][j];
    }
    for (std::size_t j = 0; j < dim; ++j) p.mean[j] /= static_cast<double>(m);
    if (m >= 2) {
        for (std::size_t j = 0; j < dim; ++j) {
            double ss = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                double d = outputs[i][j] - p.mean[j];
                ss += d * d;
            }
            p.spread[j] = std::sqrt(ss / static_cast<double>(m - 1));
        }
    }
    return p;
}

std::vector<double> ensemble_predict_physical(const EnsembleModel& model,
                                              std::span<const double> x_physical) {
    auto scaled = model.scaler.scale_x(x_physical);
    Prediction p = ensemble_predict(model, scaled);
    return model.scaler.unscale_y(p.mean);
}

EnsembleModel train_ensemble(const Architecture& arch, const Eigen::MatrixXd& X,
                             const Eigen::MatrixXd& Y, const Scaler& scaler, std::size_t m_members,
                             std::uint64_t base_seed, const TrainConfig& cfg) {
    if (m_members < 1) throw ValidationError("ensemble needs at least one member");
    EnsembleModel model;
    model.arch = arch;
    model.scaler = scaler;
    model.members.reserve(m_members);
    for (std::size_t m = 0; m < m_members; ++m) {
        TrainConfig member_cfg = cfg;
        member_cfg.seed = base_seed + m;
        model.members.push_back(train(arch, X, Y, member_cfg).net);
    }
    return model;
}

std::vector<std::vector<std::size_t>> kfold_split(std::size_t n, std::size_t k, std::uint64_t seed) {
    if (k < 1 || k > n)
        throw ValidationError("kfold_split: k must be in [1, n], got k=" + std::to_string(k) +
                              " n=" + std::to_string(n));
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng rng(seed);
    rng.shuffle(order);

    std::vector<std::vector<std::size_t>> folds(k);
    std::size_t base = n / k, extra = n % k, pos = 0;
    for (std::size_t f = 0; f < k; ++f) {
        std::size_t len = base + (f < extra ? 1 : 0);
        folds[f].assign(order.begin() + static_cast<std::ptrdiff_t>(pos),
                        order.begin() + static_cast<std::ptrdiff_t>(pos + len));
        pos += len;
    }
    return folds;
}

CvResult cv_loss(const Architecture& arch, const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y,
                 std::size_t k, const TrainConfig& cfg) {
    auto folds = kfold_split(static_cast<std::size_t>(X.cols()), k, mix_seed(cfg.seed, 0x6b666f6c64ULL));
    CvResult result;
    for (std::size_t f = 0; f < folds.size(); ++f) {
        const auto& holdout = folds[f];
        std::vector<char> held(static_cast<std::size_t>(X.cols()), 0);
        for (auto i : holdout) held[i] = 1;

        Eigen::MatrixXd Xtr(X.rows(), X.cols() - static_cast<Eigen::Index>(holdout.size()));
        Eigen::MatrixXd Ytr(Y.rows(), Xtr.cols());
        Eigen::MatrixXd Xva(X.rows(), static_cast<Eigen::Index>(holdout.size()));
        Eigen::MatrixXd Yva(Y.rows(), Xva.cols());
        Eigen::Index t = 0, v = 0;
        for (Eigen::Index i = 0; i < X.cols(); ++i) {
            if (held[static_cast<std::size_t>(i)]) {
                Xva.col(v) = X.col(i);
                Yva.col(v++) = Y.col(i);
            } else {
                Xtr.col(t) = X.col(i);
                Ytr.col(t++) = Y.col(i);
            }
        }
        TrainConfig fold_cfg = cfg;
        fold_cfg.seed = mix_seed(cfg.seed, f + 1);
        Network net = train(arch, Xtr, Ytr, fold_cfg).net;
        result.fold_losses.push_back(mse_loss(forward(net, Xva), Yva).total);
    }
    double sum = 0.0;
    for (double l : result.fold_losses) sum += l;
    result.mean_loss = sum / static_cast<double>(result.fold_losses.size());
    return result;
}

std::vector<std::optional<double>> r_squared(const Eigen::MatrixXd& pred,
                                             const Eigen::MatrixXd& target) {
    if (pred.rows() != target.rows() || pred.cols() != target.cols())
        throw ValidationError("r_squared: shape mismatch");
    if (pred.cols() < 2) throw ValidationError("r_squared: need at least 2 samples");
    std::vector<std::optional<double>> out(static_cast<std::size_t>(pred.rows()));
    for (Eigen::Index j = 0; j < pred.rows(); ++j) {
        double mean = target.row(j).mean();
        double ss_tot = (target.row(j).array() - mean).square().sum();
        if (ss_tot == 0.0) {
            out[static_cast<std::size_t>(j)] = std::nullopt; // constant target
            continue;
        }
        double ss_res = (pred.row(j) - target.row(j)).array().square().sum();
        out[static_cast<std::size_t>(j)] = 1.0 - ss_res / ss_tot;
    }
    return out;
}

// --- JSON model files ---

namespace {

json layers_to_json(const Network& net) {
    json layers = json::array();
    for (const auto& layer : net.layers) {
        json W = json::array();
        for (Eigen::Index i = 0; i < layer.W.rows(); ++i) {
            json row = json::array();
            for (Eigen::Index j = 0; j < layer.W.cols(); ++j) row.push_back(layer.W(i, j));
            W.push_back(std::move(row));
        }
        json b = json::array();
        for (Eigen::Index i = 0; i < layer.b.size(); ++i) b.push_back(layer.b(i));
        layers.push_back({{"W", std::move(W)}, {"b", std::move(b)}});
    }
    return layers;
}

std::vector<Layer> layers_from_json(const json& layers) {
    std::vector<Layer> out;
    for (const auto& jl : layers) {
        const auto& W = jl.at("W");
        const auto& b = jl.at("b");
        Layer layer;
        layer.W.resize(static_cast<Eigen::Index>(W.size()),
                       static_cast<Eigen::Index>(W.empty() ? 0 : W.at(0).size()));
        for (Eigen::Index i = 0; i < layer.W.rows(); ++i)
            for (Eigen::Index j = 0; j < layer.W.cols(); ++j)
                layer.W(i, j) = W.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(j)).get<double>();
        layer.b.resize(static_cast<Eigen::Index>(b.size()));
        for (Eigen::Index i = 0; i < layer.b.size(); ++i)
            layer.b(i) = b.at(static_cast<std::size_t>(i)).get<double>();
        out.push_back(std::move(layer));
    }
    return out;
}

json scaler_to_json(const Scaler& s) {
    auto ranges = [](const std::vector<Scaler::Range>& rs) {
        json a = json::array();
        for (const auto& r : rs) a.push_back({{"min", r.min}, {"max", r.max}});
        return a;
    };
    return {{"x", ranges(s.x_ranges)}, {"y", ranges(s.y_ranges)}};
}

Scaler scaler_from_json(const json& j) {
    auto ranges = [](const json& a) {
        std::vector<Scaler::Range> rs;
        for (const auto& e : a) rs.push_back({e.at("min").get<double>(), e.at("max").get<double>()});
        return rs;
    };
    Scaler s;
    s.x_ranges = ranges(j.at("x"));
    s.y_ranges = ranges(j.at("y"));
    return s;
}

json arch_to_json(const Architecture& a) {
    return {{"input_dim", a.input_dim}, {"output_dim", a.output_dim}, {"hidden", a.hidden}};
}

Architecture arch_from_json(const json& j) {
    Architecture a;
    a.input_dim = j.at("input_dim").get<int>();
    a.output_dim = j.at("output_dim").get<int>();
    a.hidden = j.at("hidden").get<std::vector<int>>();
    return a;
}

json parse_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open model file '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw DataError("model file '" + path + "': " + e.what());
    }
}

void dump_file(const json& j, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot open '" + path + "' for writing");
    out << j.dump(2) << '\n';
}

constexpr int kModelVersion = 1;

} // namespace

void save_network_json(const Network& net, const Scaler& scaler, const std::string& path) {
    json j{{"version", kModelVersion},
           {"architecture", arch_to_json(net.arch)},
           {"scaler", scaler_to_json(scaler)},
           {"layers", layers_to_json(net)}};
    dump_file(j, path);
}

std::pair<Network, Scaler> load_network_json(const std::string& path) {
    json j = parse_file(path);
    Network net;
    net.arch = arch_from_json(j.at("architecture"));
    net.layers = layers_from_json(j.at("layers"));
    return {std::move(net), scaler_from_json(j.at("scaler"))};
}

std::string ensemble_to_json(const EnsembleModel& model) {
    json members = json::array();
    for (const auto& net : model.members) members.push_back({{"layers", layers_to_json(net)}});
    json j{{"version", kModelVersion},
           {"architecture", arch_to_json(model.arch)},
           {"scaler", scaler_to_json(model.scaler)},
           {"members", std::move(members)}};
    return j.dump(2) + "\n";
}

EnsembleModel ensemble_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw DataError(std::string("ensemble JSON: ") + e.what());
    }
    EnsembleModel model;
    model.arch = arch_from_json(j.at("architecture"));
    model.scaler = scaler_from_json(j.at("scaler"));
    for (const auto& jm : j.at("members")) {
        Network net;
        net.arch = model.arch;
        net.layers = layers_from_json(jm.at("layers"));
        model.members.push_back(std::move(net));
    }
    if (model.members.empty()) throw DataError("ensemble JSON: no members");
    return model;
}

void save_ensemble_json(const EnsembleModel& model, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot open '" + path + "' for writing");
    out << ensemble_to_json(model);
}

EnsembleModel load_ensemble_json(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open model file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ensemble_from_json(ss.str());
}

void write_hpo_report_csv(const std::vector<HpoTrial>& trials, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot open '" + path + "' for writing");
    out << "trial,mean_loss,fold_losses,depth,widths\n";
    for (const auto& t : trials) {
        json folds = t.fold_losses;
        json widths = t.arch.hidden;
        out << t.index << ',' << fmt_double(t.mean_loss) << ",\"" << folds.dump() << "\","
            << t.arch.hidden.size() << ",\"" << widths.dump() << "\"\n";
    }
}

void write_best_per_depth_csv(const std::vector<HpoTrial>& best_per_depth, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot open '" + path + "' for writing");
    out << "mse,hidden_layers";
    for (int i = 1; i <= 10; ++i) out << ",n" << i;
    out << '\n';
    for (const auto& t : best_per_depth) {
        out << fmt_double(t.mean_loss) << ',' << t.arch.hidden.size();
        for (std::size_t i = 0; i < 10; ++i) {
            out << ',';
            if (i < t.arch.hidden.size()) out << t.arch.hidden[i];
        }
        out << '\n';
    }
}

} // namespace fzopt
