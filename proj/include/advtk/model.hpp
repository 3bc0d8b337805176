#ifndef ADVTK_MODEL_HPP
#define ADVTK_MODEL_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "advtk/rng.hpp"
#include "advtk/tape.hpp"
#include "advtk/tensor.hpp"

namespace advtk {

struct LayerSpec {
    enum class Kind { Conv, Relu, MaxPool2, Flatten, Dense };
    Kind kind = Kind::Relu;
    int out_channels = 0;  // Conv
    int kernel = 0;        // Conv
    int stride = 1;        // Conv
    int pad = 0;           // Conv
    int out_features = 0;  // Dense

    static LayerSpec conv(int out_channels, int kernel, int stride = 1, int pad = 0) {
        LayerSpec l;
        l.kind = Kind::Conv;
        l.out_channels = out_channels;
        l.kernel = kernel;
        l.stride = stride;
        l.pad = pad;
        return l;
    }
    static LayerSpec relu() { return LayerSpec{}; }
    static LayerSpec maxpool2() {
        LayerSpec l;
        l.kind = Kind::MaxPool2;
        return l;
    }
    static LayerSpec flatten() {
        LayerSpec l;
        l.kind = Kind::Flatten;
        return l;
    }
    static LayerSpec dense(int out_features) {
        LayerSpec l;
        l.kind = Kind::Dense;
        l.out_features = out_features;
        return l;
    }

    const char* kind_name() const {
        switch (kind) {
            case Kind::Conv: return "conv";
            case Kind::Relu: return "relu";
            case Kind::MaxPool2: return "maxpool2";
            case Kind::Flatten: return "flatten";
            case Kind::Dense: return "dense";
        }
        return "?";
    }
};

// Architecture description: input shape, ordered layers, two output classes,
// and the pixel normalization constant applied inside the model so that
// images (and attack budgets) stay on the 0-255 scale outside.
struct ModelSpec {
    Shape input;  // {C,H,W}
    std::vector<LayerSpec> layers;
    int classes = 2;
    float pixel_norm = 255.0f;

    // Stock desk-scale architecture: two conv+relu+pool blocks, then a small
    // dense head ending in 2 logits.
    static ModelSpec desk_default(int size = 32) {
        ModelSpec s;
        s.input = {3, size, size};
        s.layers = {LayerSpec::conv(8, 3, 1, 1),  LayerSpec::relu(), LayerSpec::maxpool2(),
                    LayerSpec::conv(16, 3, 1, 1), LayerSpec::relu(), LayerSpec::maxpool2(),
                    LayerSpec::flatten(),         LayerSpec::dense(32), LayerSpec::relu(),
                    LayerSpec::dense(2)};
        return s;
    }

    // Shape after each layer; throws ConfigError naming the offending layer.
    std::vector<Shape> activation_shapes() const {
        auto fail = [](std::size_t i, const LayerSpec& l, const std::string& what) {
            throw ConfigError("model spec: layer " + std::to_string(i) + " (" +
                              l.kind_name() + "): " + what);
        };
        if (input.size() != 3 || input[0] <= 0 || input[1] <= 0 || input[2] <= 0)
            throw ConfigError("model spec: input shape must be [C,H,W], got " +
                              shape_str(input));
        if (classes != 2) throw ConfigError("model spec: class count is fixed at 2");
        if (!(pixel_norm > 0.0f))
            throw ConfigError("model spec: pixel normalization constant must be > 0");
        std::vector<Shape> shapes;
        Shape cur = input;
        for (std::size_t i = 0; i < layers.size(); ++i) {
            const LayerSpec& l = layers[i];
            switch (l.kind) {
                case LayerSpec::Kind::Conv: {
                    if (cur.size() != 3) fail(i, l, "needs a [C,H,W] input, got " + shape_str(cur));
                    if (l.out_channels <= 0 || l.kernel <= 0 || l.stride < 1 || l.pad < 0)
                        fail(i, l, "invalid hyperparameters");
                    int h = cur[1] + 2 * l.pad - l.kernel;
                    int w = cur[2] + 2 * l.pad - l.kernel;
                    if (h < 0 || w < 0) fail(i, l, "kernel larger than padded input");
                    if (h % l.stride != 0 || w % l.stride != 0)
                        fail(i, l, "stride does not evenly cover the input");
                    cur = {l.out_channels, h / l.stride + 1, w / l.stride + 1};
                    break;
                }
                case LayerSpec::Kind::Relu:
                    break;
                case LayerSpec::Kind::MaxPool2:
                    if (cur.size() != 3) fail(i, l, "needs a [C,H,W] input, got " + shape_str(cur));
                    if (cur[1] % 2 != 0 || cur[2] % 2 != 0)
                        fail(i, l, "odd spatial dims " + shape_str(cur));
                    cur = {cur[0], cur[1] / 2, cur[2] / 2};
                    break;
                case LayerSpec::Kind::Flatten:
                    cur = {static_cast<int>(shape_numel(cur))};
                    break;
                case LayerSpec::Kind::Dense:
                    if (cur.size() != 1)
                        fail(i, l, "needs a flat input, got " + shape_str(cur));
                    if (l.out_features <= 0) fail(i, l, "invalid output width");
                    cur = {l.out_features};
                    break;
            }
            shapes.push_back(cur);
        }
        if (layers.empty() || layers.back().kind != LayerSpec::Kind::Dense ||
            cur != Shape{classes})
            throw ConfigError("model spec: final layer must be dense with " +
                              std::to_string(classes) + " outputs, got " + shape_str(cur));
        return shapes;
    }

    void validate() const { activation_shapes(); }

    // Index of the layer whose input is the penultimate feature vector.
    int final_dense_index() const {
        return static_cast<int>(layers.size()) - 1;
    }
};

// Parameterized classifier f(.;theta).
struct Model {
    ModelSpec spec;
    std::vector<Tensor> params;  // conv: kernel, bias; dense: weight, bias; in layer order
    std::uint64_t seed = 0;
    int epochs_trained = 0;

    struct Forward {
        Var logits;
        Var penultimate;
    };

    // Places the parameters on a tape. Order matches `params`.
    std::vector<Var> param_leaves(Tape& tape, bool requires_grad) const {
        std::vector<Var> out;
        out.reserve(params.size());
        for (const Tensor& p : params) out.push_back(tape.leaf(p, requires_grad));
        return out;
    }

    // Runs the network on a 0-255 image already present on `tape`.
    // Normalization by spec.pixel_norm happens here.
    Forward forward(Tape& tape, Var image, const std::vector<Var>& param_vars) const {
        const Tensor& img = tape.value(image);
        if (img.shape() != spec.input)
            throw DimensionError("model: input " + shape_str(img.shape()) +
                                 " does not match spec " + shape_str(spec.input));
        Var h = scale(image, 1.0f / spec.pixel_norm);
        Var penultimate = h;
        int final_dense = spec.final_dense_index();
        std::size_t p = 0;
        for (std::size_t i = 0; i < spec.layers.size(); ++i) {
            const LayerSpec& l = spec.layers[i];
            if (static_cast<int>(i) == final_dense) penultimate = h;
            switch (l.kind) {
                case LayerSpec::Kind::Conv: {
                    Var k = param_vars[p++];
                    Var b = param_vars[p++];
                    h = conv2d(h, k, b, l.stride, l.pad);
                    break;
                }
                case LayerSpec::Kind::Relu:
                    h = relu(h);
                    break;
                case LayerSpec::Kind::MaxPool2:
                    h = maxpool2(h);
                    break;
                case LayerSpec::Kind::Flatten:
                    h = flatten(h);
                    break;
                case LayerSpec::Kind::Dense: {
                    Var w = param_vars[p++];
                    Var b = param_vars[p++];
                    h = dense(h, w, b);
                    break;
                }
            }
        }
        return Forward{h, penultimate};
    }
};

// Uniform He-style initialization: weights ~ U(-sqrt(6/fan_in), +sqrt(6/fan_in)),
// biases zero. Deterministic per seed; each parameter tensor draws from its
// own derived stream.
inline Model build_model(const ModelSpec& spec, std::uint64_t seed) {
    spec.validate();
    Model m;
    m.spec = spec;
    m.seed = seed;
    Shape cur = spec.input;
    auto shapes = spec.activation_shapes();
    int param_index = 0;
    auto he_fill = [&](Tensor& t, int fan_in) {
        Rng rng(derive_seed(seed, "init", static_cast<std::uint64_t>(param_index++)));
        float limit = std::sqrt(6.0f / static_cast<float>(fan_in));
        for (float& v : t.data()) v = rng.uniform(-limit, limit);
    };
    for (std::size_t i = 0; i < spec.layers.size(); ++i) {
        const LayerSpec& l = spec.layers[i];
        if (l.kind == LayerSpec::Kind::Conv) {
            Tensor k(Shape{l.out_channels, cur[0], l.kernel, l.kernel});
            he_fill(k, cur[0] * l.kernel * l.kernel);
            m.params.push_back(std::move(k));
            m.params.emplace_back(Shape{l.out_channels});  // zero bias
            ++param_index;
        } else if (l.kind == LayerSpec::Kind::Dense) {
            Tensor w(Shape{l.out_features, cur[0]});
            he_fill(w, cur[0]);
            m.params.push_back(std::move(w));
            m.params.emplace_back(Shape{l.out_features});
            ++param_index;
        }
        cur = shapes[i];
    }
    return m;
}

struct Prediction {
    Tensor probs;      // [classes], sums to 1
    int label = 0;     // argmax, first index on ties
    float confidence = 0.0f;
};

inline Prediction predict(const Model& m, const Tensor& image) {
    Tape tape;
    auto pv = m.param_leaves(tape, false);
    Var vx = tape.leaf(image, false);
    auto fwd = m.forward(tape, vx, pv);
    Var probs = softmax(fwd.logits);
    Prediction out;
    out.probs = tape.value(probs);
    out.label = 0;
    for (int i = 1; i < out.probs.numel(); ++i)
        if (out.probs[i] > out.probs[out.label]) out.label = i;
    out.confidence = out.probs[out.label];
    return out;
}

// Activation vector feeding the final dense layer.
inline Tensor penultimate_features(const Model& m, const Tensor& image) {
    Tape tape;
    auto pv = m.param_leaves(tape, false);
    Var vx = tape.leaf(image, false);
    auto fwd = m.forward(tape, vx, pv);
    return tape.value(fwd.penultimate);
}

}  // namespace advtk

#endif  // ADVTK_MODEL_HPP
