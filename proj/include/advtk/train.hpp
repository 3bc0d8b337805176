#ifndef ADVTK_TRAIN_HPP
#define ADVTK_TRAIN_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "advtk/dataset.hpp"
#include "advtk/model.hpp"

namespace advtk {

struct TrainConfig {
    enum class Optimizer { AdaDelta, Sgd };
    Optimizer optimizer = Optimizer::AdaDelta;
    float learning_rate = 0.01f;
    int epochs = 25;
    int batch_size = 8;
    std::uint64_t seed = 0;
    int snapshot_cadence = 1;  // epochs between weight snapshots

    std::vector<std::string> violations() const {
        std::vector<std::string> v;
        if (!(learning_rate > 0.0f)) v.push_back("learning_rate must be > 0");
        if (epochs < 1) v.push_back("epochs must be >= 1");
        if (batch_size < 1) v.push_back("batch_size must be >= 1");
        if (snapshot_cadence < 1) v.push_back("snapshot_cadence must be >= 1");
        return v;
    }
    void validate() const {
        auto v = violations();
        if (!v.empty()) {
            std::string msg = "train config:";
            for (const auto& s : v) msg += "\n  - " + s;
            throw ConfigError(msg);
        }
    }
};

inline TrainConfig::Optimizer optimizer_from_name(const std::string& name) {
    if (name == "adadelta") return TrainConfig::Optimizer::AdaDelta;
    if (name == "sgd") return TrainConfig::Optimizer::Sgd;
    throw ConfigError("unknown optimizer '" + name + "' (expected adadelta or sgd)");
}

// AdaDelta accumulator recurrences (decay 0.9, eps 1e-6):
//   Eg   <- rho*Eg + (1-rho)*g^2
//   dx   <- -sqrt(Ed + eps)/sqrt(Eg + eps) * g
//   Ed   <- rho*Ed + (1-rho)*dx^2
//   p    <- p + lr*dx
class AdaDeltaState {
public:
    explicit AdaDeltaState(const std::vector<Tensor>& params, float rho = 0.9f,
                           float eps = 1e-6f)
        : rho_(rho), eps_(eps) {
        for (const Tensor& p : params) {
            acc_grad_.emplace_back(p.numel(), 0.0f);
            acc_update_.emplace_back(p.numel(), 0.0f);
        }
    }

    void apply(std::vector<Tensor>& params, const std::vector<Tensor>& grads, float lr) {
        for (std::size_t t = 0; t < params.size(); ++t) {
            std::vector<float>& eg = acc_grad_[t];
            std::vector<float>& ed = acc_update_[t];
            Tensor& p = params[t];
            const Tensor& g = grads[t];
            for (int i = 0; i < p.numel(); ++i) {
                float gi = g[i];
                eg[static_cast<std::size_t>(i)] =
                    rho_ * eg[static_cast<std::size_t>(i)] + (1.0f - rho_) * gi * gi;
                float dx = -std::sqrt(ed[static_cast<std::size_t>(i)] + eps_) /
                           std::sqrt(eg[static_cast<std::size_t>(i)] + eps_) * gi;
                ed[static_cast<std::size_t>(i)] =
                    rho_ * ed[static_cast<std::size_t>(i)] + (1.0f - rho_) * dx * dx;
                p[i] += lr * dx;
            }
        }
    }

private:
    float rho_, eps_;
    std::vector<std::vector<float>> acc_grad_;
    std::vector<std::vector<float>> acc_update_;
};

struct TrainResult {
    Model model;
    std::vector<std::vector<Tensor>> snapshots;  // initial first, final last
    std::vector<float> loss_curve;               // mean training loss per epoch
};

// Mean cross-entropy of the model over a dataset (forward only).
inline double mean_loss(const Model& m, const Dataset& data) {
    if (data.patches.empty()) throw DataError("mean_loss: empty dataset");
    double total = 0.0;
    for (const LabeledPatch& p : data.patches) {
        Tape tape;
        auto pv = m.param_leaves(tape, false);
        Var vx = tape.leaf(p.image, false);
        auto fwd = m.forward(tape, vx, pv);
        Var loss = softmax_cross_entropy(fwd.logits, p.label);
        total += tape.value(loss)[0];
    }
    return total / double(data.patches.size());
}

// Minibatch training with per-epoch seeded shuffling. Deterministic for a
// fixed (model seed, config): the tape layout and update order never depend
// on wall clock or scheduling.
inline TrainResult train(const Model& initial, const Dataset& data, const TrainConfig& cfg) {
    cfg.validate();
    if (data.patches.empty()) throw DataError("train: empty training set");
    if (!data.has_both_classes())
        throw DataError("train: training set must contain both classes");
    for (const LabeledPatch& p : data.patches)
        if (p.image.shape() != initial.spec.input)
            throw DimensionError("train: patch " + p.id + " shape " +
                                 shape_str(p.image.shape()) + " does not match model input " +
                                 shape_str(initial.spec.input));

    TrainResult res;
    res.model = initial;
    res.snapshots.push_back(res.model.params);

    AdaDeltaState adadelta(res.model.params);
    std::vector<Tensor> grad_acc;
    for (const Tensor& p : res.model.params) grad_acc.push_back(Tensor::zeros_like(p));

    const int n = static_cast<int>(data.patches.size());
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;

    for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
        Rng shuffle_rng(derive_seed(cfg.seed, "train.shuffle", static_cast<std::uint64_t>(epoch)));
        shuffle_rng.shuffle(order);
        double epoch_loss = 0.0;
        for (int start = 0; start < n; start += cfg.batch_size) {
            int stop = std::min(n, start + cfg.batch_size);
            for (Tensor& g : grad_acc) std::fill(g.data().begin(), g.data().end(), 0.0f);
            for (int bi = start; bi < stop; ++bi) {
                const LabeledPatch& p = data.patches[static_cast<std::size_t>(order[static_cast<std::size_t>(bi)])];
                Tape tape;
                auto pv = res.model.param_leaves(tape, true);
                Var vx = tape.leaf(p.image, false);
                auto fwd = res.model.forward(tape, vx, pv);
                Var loss = softmax_cross_entropy(fwd.logits, p.label);
                epoch_loss += tape.value(loss)[0];
                tape.backward(loss);
                for (std::size_t t = 0; t < pv.size(); ++t) {
                    const std::vector<float>& g = tape.node(pv[t].idx).value.grad();
                    std::vector<float>& acc = grad_acc[t].data();
                    for (std::size_t i = 0; i < g.size(); ++i) acc[i] += g[i];
                }
            }
            float inv = 1.0f / static_cast<float>(stop - start);
            for (Tensor& g : grad_acc)
                for (float& v : g.data()) v *= inv;
            if (cfg.optimizer == TrainConfig::Optimizer::AdaDelta) {
                adadelta.apply(res.model.params, grad_acc, cfg.learning_rate);
            } else {
                for (std::size_t t = 0; t < res.model.params.size(); ++t)
                    for (int i = 0; i < res.model.params[t].numel(); ++i)
                        res.model.params[t][i] -= cfg.learning_rate * grad_acc[t][i];
            }
        }
        res.loss_curve.push_back(static_cast<float>(epoch_loss / n));
        if (epoch % cfg.snapshot_cadence == 0) res.snapshots.push_back(res.model.params);
    }
    if (cfg.epochs % cfg.snapshot_cadence != 0) res.snapshots.push_back(res.model.params);
    res.model.epochs_trained = cfg.epochs;
    return res;
}

}  // namespace advtk

#endif  // ADVTK_TRAIN_HPP
