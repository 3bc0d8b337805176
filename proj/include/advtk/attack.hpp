#ifndef ADVTK_ATTACK_HPP
#define ADVTK_ATTACK_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "advtk/dataset.hpp"
#include "advtk/model.hpp"

namespace advtk {

enum class ConstraintKind { L0, L1, L2, Linf, Unconstrained };

inline const char* constraint_name(ConstraintKind k) {
    switch (k) {
        case ConstraintKind::L0: return "l0";
        case ConstraintKind::L1: return "l1";
        case ConstraintKind::L2: return "l2";
        case ConstraintKind::Linf: return "linf";
        case ConstraintKind::Unconstrained: return "unconstrained";
    }
    return "?";
}

inline ConstraintKind constraint_from_name(const std::string& s) {
    if (s == "l0") return ConstraintKind::L0;
    if (s == "l1") return ConstraintKind::L1;
    if (s == "l2") return ConstraintKind::L2;
    if (s == "linf") return ConstraintKind::Linf;
    if (s == "unconstrained" || s == "none") return ConstraintKind::Unconstrained;
    throw ConfigError("unknown constraint '" + s +
                      "' (expected l0, l1, l2, linf or unconstrained)");
}

// Perturbation-energy constraint. Budgets live on the 0-255 pixel scale:
// L1 bounds the mean absolute difference, L2 the root mean squared
// difference, Linf the per-element magnitude. For L0 the budget is the
// fraction c in (0,1] of spatial pixels the attack may touch.
struct ConstraintSpec {
    ConstraintKind kind = ConstraintKind::Unconstrained;
    double budget = 0.0;

    static ConstraintSpec l0(double c) { return {ConstraintKind::L0, c}; }
    static ConstraintSpec l1(double mad) { return {ConstraintKind::L1, mad}; }
    static ConstraintSpec l2(double rmsd) { return {ConstraintKind::L2, rmsd}; }
    static ConstraintSpec linf(double mag) { return {ConstraintKind::Linf, mag}; }
    static ConstraintSpec unconstrained() { return {ConstraintKind::Unconstrained, 0.0}; }

    void validate() const {
        if (budget < 0.0) throw ConfigError("constraint: budget must be >= 0");
        if (kind == ConstraintKind::L0 && (budget <= 0.0 || budget > 1.0))
            throw ConfigError("constraint: L0 fraction must be in (0,1]");
    }
};

struct AttackConfig {
    float gamma = 2000.0f;  // PGD step size on the 0-255 scale
    int max_steps = 500;    // also the epoch count for universal attacks
    float tau = 0.9f;       // confidence needed to call a flip a success
    std::uint64_t seed = 0;

    std::vector<std::string> violations() const {
        std::vector<std::string> v;
        if (gamma < 0.0f) v.push_back("gamma must be >= 0");
        if (max_steps < 1) v.push_back("max_steps must be >= 1");
        if (!(tau >= 0.5f && tau < 1.0f)) v.push_back("tau must be in [0.5, 1)");
        return v;
    }
    void validate() const {
        auto v = violations();
        if (!v.empty()) {
            std::string msg = "attack config:";
            for (const auto& s : v) msg += "\n  - " + s;
            throw ConfigError(msg);
        }
    }
};

struct Energies {
    double mad = 0.0;
    double rmsd = 0.0;
    double linf = 0.0;
    double l0_fraction = 0.0;
};

// mad = mean|d|, rmsd = sqrt(mean d^2), linf = max|d|, l0 = fraction of
// spatial locations with any channel above 1e-6 in magnitude.
inline Energies energies(const Tensor& delta) {
    Energies e;
    double abs_sum = 0.0, sq_sum = 0.0;
    for (int i = 0; i < delta.numel(); ++i) {
        double v = delta[i];
        abs_sum += std::fabs(v);
        sq_sum += v * v;
        e.linf = std::max(e.linf, std::fabs(v));
    }
    e.mad = abs_sum / delta.numel();
    e.rmsd = std::sqrt(sq_sum / delta.numel());
    if (delta.rank() == 3) {
        int c = delta.dim(0), h = delta.dim(1), w = delta.dim(2);
        int touched = 0;
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x) {
                bool any = false;
                for (int ic = 0; ic < c && !any; ++ic)
                    any = std::fabs(delta.at3(ic, y, x)) > 1e-6f;
                touched += any ? 1 : 0;
            }
        e.l0_fraction = double(touched) / double(h * w);
    } else {
        int touched = 0;
        for (int i = 0; i < delta.numel(); ++i)
            if (std::fabs(delta[i]) > 1e-6f) ++touched;
        e.l0_fraction = double(touched) / double(delta.numel());
    }
    return e;
}

struct Perturbation {
    Tensor delta;
    Energies energy;
};

inline Perturbation make_perturbation(Tensor delta) {
    Perturbation p;
    p.energy = energies(delta);
    p.delta = std::move(delta);
    return p;
}

struct AttackResult {
    bool success = false;
    int steps = 0;
    int final_label = 0;
    float final_confidence = 0.0f;
    Perturbation perturbation;
};

// One PGD ascent step: delta + gamma * grad.
inline Tensor pgd_step(const Tensor& delta, const Tensor& grad, float gamma) {
    if (!delta.same_shape(grad))
        throw DimensionError("pgd_step: delta " + shape_str(delta.shape()) + " vs grad " +
                             shape_str(grad.shape()));
    Tensor out = delta;
    for (int i = 0; i < out.numel(); ++i) out[i] += gamma * grad[i];
    return out;
}

// Projects delta back into the constraint set, applied after each gradient
// step. L1/L2 rescale when over budget, Linf clamps elementwise,
// Unconstrained (and L0, which is enforced through the update mask) pass
// through unchanged.
inline Tensor project(const Tensor& delta, const ConstraintSpec& c) {
    c.validate();
    Tensor out = delta;
    switch (c.kind) {
        case ConstraintKind::Unconstrained:
        case ConstraintKind::L0:
            break;
        case ConstraintKind::L1: {
            double mad = energies(out).mad;
            if (mad > c.budget) {
                float s = static_cast<float>(c.budget / mad);
                for (float& v : out.data()) v *= s;
            }
            break;
        }
        case ConstraintKind::L2: {
            double rmsd = energies(out).rmsd;
            if (rmsd > c.budget) {
                float s = static_cast<float>(c.budget / rmsd);
                for (float& v : out.data()) v *= s;
            }
            break;
        }
        case ConstraintKind::Linf: {
            float b = static_cast<float>(c.budget);
            for (float& v : out.data()) v = std::min(b, std::max(-b, v));
            break;
        }
    }
    return out;
}

// Spatial mask selecting exactly ceil(c*H*W) pixels with the largest
// per-pixel gradient magnitude (L2 norm across channels); scan-order
// tie-break. The PGD update is multiplied by the mask across channels.
inline Tensor l0_mask(const Tensor& grad, double c) {
    if (grad.rank() != 3)
        throw DimensionError("l0_mask: expected [C,H,W], got " + shape_str(grad.shape()));
    if (!(c > 0.0 && c <= 1.0)) throw ContractError("l0_mask: fraction must be in (0,1]");
    int ch = grad.dim(0), h = grad.dim(1), w = grad.dim(2);
    int hw = h * w;
    std::vector<double> mag(static_cast<std::size_t>(hw), 0.0);
    for (int ic = 0; ic < ch; ++ic)
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x) {
                double v = grad.at3(ic, y, x);
                mag[static_cast<std::size_t>(y * w + x)] += v * v;
            }
    int keep = static_cast<int>(std::ceil(c * hw));
    std::vector<int> idx(static_cast<std::size_t>(hw));
    for (int i = 0; i < hw; ++i) idx[static_cast<std::size_t>(i)] = i;
    std::stable_sort(idx.begin(), idx.end(),
                     [&](int a, int b) { return mag[static_cast<std::size_t>(a)] > mag[static_cast<std::size_t>(b)]; });
    Tensor mask(Shape{h, w});
    for (int i = 0; i < keep; ++i) mask[idx[static_cast<std::size_t>(i)]] = 1.0f;
    return mask;
}

// x' = x + delta, clamped to the valid [0,255] image range.
inline Tensor apply(const Tensor& image, const Tensor& delta) {
    if (!image.same_shape(delta))
        throw DimensionError("apply: image " + shape_str(image.shape()) + " vs delta " +
                             shape_str(delta.shape()));
    Tensor out = image;
    for (int i = 0; i < out.numel(); ++i)
        out[i] = std::min(255.0f, std::max(0.0f, out[i] + delta[i]));
    return out;
}

inline Tensor apply(const Tensor& image, const Perturbation& p) { return apply(image, p.delta); }

namespace detail {

struct AttackEval {
    Tensor probs;
    int label;
    float confidence;
    Tensor delta_grad;  // empty unless requested
};

// Forward pass on clamp(x + delta) through the model; optionally also the
// loss gradient w.r.t. delta. The clamp passes gradient inside [0,255] and
// blocks it outside, and the softmax path here matches predict() exactly.
inline AttackEval attack_eval(const Model& m, const Tensor& image, int label,
                              const Tensor& delta, bool want_grad) {
    Tape tape;
    auto pv = m.param_leaves(tape, false);
    Var vx = tape.leaf(image, false);
    Var vd = tape.leaf(delta, want_grad);
    Var xp = clamp(add(vx, vd), 0.0f, 255.0f);
    auto fwd = m.forward(tape, xp, pv);
    Var probs = softmax(fwd.logits);
    AttackEval out;
    out.probs = tape.value(probs);
    out.label = 0;
    for (int i = 1; i < out.probs.numel(); ++i)
        if (out.probs[i] > out.probs[out.label]) out.label = i;
    out.confidence = out.probs[out.label];
    if (want_grad) {
        Var loss = softmax_cross_entropy(fwd.logits, label);
        tape.backward(loss);
        out.delta_grad = tape.grad(vd);
    }
    return out;
}

}  // namespace detail

// Single-instance PGD attack: repeat { forward on clamp(x+delta), gradient
// ascent step (masked for L0), project } until the label flips with
// confidence >= tau or the step budget runs out.
inline AttackResult single_instance_attack(const Model& model, const Tensor& image,
                                           int label, const ConstraintSpec& constraint,
                                           const AttackConfig& cfg) {
    cfg.validate();
    constraint.validate();
    if (image.shape() != model.spec.input)
        throw DimensionError("attack: image " + shape_str(image.shape()) +
                             " does not match model input " + shape_str(model.spec.input));
    if (label < 0 || label >= model.spec.classes)
        throw IndexError("attack: label " + std::to_string(label) + " out of range");

    Tensor delta = Tensor::zeros(image.shape());
    AttackResult res;
    for (int step = 0; step <= cfg.max_steps; ++step) {
        bool need_grad = step < cfg.max_steps;
        auto eval = detail::attack_eval(model, image, label, delta, need_grad);
        if (eval.label != label && eval.confidence >= cfg.tau) {
            res.success = true;
            res.steps = step;
            res.final_label = eval.label;
            res.final_confidence = eval.confidence;
            res.perturbation = make_perturbation(std::move(delta));
            return res;
        }
        if (!need_grad) {
            res.success = false;
            res.steps = cfg.max_steps;
            res.final_label = eval.label;
            res.final_confidence = eval.confidence;
            res.perturbation = make_perturbation(std::move(delta));
            return res;
        }
        Tensor grad = std::move(eval.delta_grad);
        if (constraint.kind == ConstraintKind::L0) {
            Tensor mask = l0_mask(grad, constraint.budget);
            int c = grad.dim(0), h = grad.dim(1), w = grad.dim(2);
            for (int ic = 0; ic < c; ++ic)
                for (int y = 0; y < h; ++y)
                    for (int x = 0; x < w; ++x) grad.at3(ic, y, x) *= mask[y * w + x];
        }
        delta = pgd_step(delta, grad, cfg.gamma);
        delta = project(delta, constraint);
    }
    return res;  // unreachable
}

// Universal perturbation via SGD over the whole set: one shared delta,
// updated after each training example, examples visited in a fresh seeded
// shuffle each epoch. cfg.max_steps is the epoch count; no stopping rule.
inline Perturbation universal_attack(const Model& model, const Dataset& train_set,
                                     const AttackConfig& cfg,
                                     const std::optional<ConstraintSpec>& constraint = {}) {
    cfg.validate();
    if (constraint) constraint->validate();
    if (train_set.patches.empty()) throw DataError("universal_attack: empty training set");
    for (const LabeledPatch& p : train_set.patches)
        if (p.image.shape() != model.spec.input)
            throw DimensionError("universal_attack: patch " + p.id + " shape " +
                                 shape_str(p.image.shape()) + " does not match model input");

    Tensor delta = Tensor::zeros(model.spec.input);
    int n = static_cast<int>(train_set.patches.size());
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    for (int epoch = 0; epoch < cfg.max_steps; ++epoch) {
        Rng rng(derive_seed(cfg.seed, "universal.shuffle", static_cast<std::uint64_t>(epoch)));
        rng.shuffle(order);
        for (int i : order) {
            const LabeledPatch& p = train_set.patches[static_cast<std::size_t>(i)];
            auto eval = detail::attack_eval(model, p.image, p.label, delta, true);
            delta = pgd_step(delta, eval.delta_grad, cfg.gamma);
            if (constraint) delta = project(delta, *constraint);
        }
    }
    return make_perturbation(std::move(delta));
}

// Uniform noise scaled to a target RMSD; the sanity baseline a universal
// perturbation has to beat.
inline Tensor noise_like(const Shape& shape, double rmsd, std::uint64_t seed) {
    Tensor t(shape);
    Rng rng(derive_seed(seed, "noise"));
    for (float& v : t.data()) v = rng.uniform(-1.0f, 1.0f);
    double have = energies(t).rmsd;
    if (have > 0.0 && rmsd > 0.0) {
        float s = static_cast<float>(rmsd / have);
        for (float& v : t.data()) v *= s;
    } else {
        for (float& v : t.data()) v = 0.0f;
    }
    return t;
}

struct SetEval {
    int total = 0;    // correctly classified before perturbation
    int flipped = 0;  // of those, misclassified after
    double rate = 0.0;
};

// Success of a fixed perturbation over a set, counted the way the universal
// evaluation does: among examples the model classifies correctly, the
// fraction whose label flips once delta is applied.
inline SetEval evaluate_perturbation(const Model& model, const Dataset& set,
                                     const Tensor& delta) {
    SetEval ev;
    for (const LabeledPatch& p : set.patches) {
        Prediction before = predict(model, p.image);
        if (before.label != p.label) continue;
        ++ev.total;
        Prediction after = predict(model, apply(p.image, delta));
        if (after.label != p.label) ++ev.flipped;
    }
    ev.rate = ev.total > 0 ? double(ev.flipped) / double(ev.total) : 0.0;
    return ev;
}

}  // namespace advtk

#endif  // ADVTK_ATTACK_HPP
