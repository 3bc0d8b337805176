#ifndef ADVTK_TAPE_HPP
#define ADVTK_TAPE_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "advtk/tensor.hpp"

namespace advtk {

class Tape;

// Handle to a tensor recorded on a tape. Cheap to copy; valid while the tape
// lives.
struct Var {
    Tape* tape = nullptr;
    int idx = -1;
};

// Ordered record of executed operations. Nodes are appended in execution
// order, so the record is topologically sorted by construction and one
// backward() pass visits each operation exactly once in reverse order.
//
// A tape and its tensors are single-threaded; run concurrent work on
// distinct tapes.
class Tape {
public:
    Var leaf(Tensor value, bool requires_grad = false) {
        return push(std::move(value), requires_grad);
    }

    const Tensor& value(Var v) const { return nodes_[static_cast<std::size_t>(v.idx)].value; }

    // Gradient from the most recent backward(), shaped like the node.
    Tensor grad(Var v) const {
        const Node& n = nodes_[static_cast<std::size_t>(v.idx)];
        return Tensor(n.value.shape(), n.value.grad());
    }

    // Populates d(loss)/d(node) for every node. Gradients are reset first,
    // so repeated calls from the same forward pass agree exactly.
    void backward(Var loss) {
        const Tensor& lt = value(loss);
        if (lt.numel() != 1)
            throw ContractError("backward: loss must be scalar, got shape " +
                                shape_str(lt.shape()));
        for (Node& n : nodes_) n.value.zero_grad();
        nodes_[static_cast<std::size_t>(loss.idx)].value.grad()[0] = 1.0f;
        for (auto it = ops_.rbegin(); it != ops_.rend(); ++it) (*it)();
    }

    // --- internals used by op implementations ---
    struct Node {
        Tensor value;
        bool requires_grad;
    };

    Var push(Tensor value, bool requires_grad) {
        value.zero_grad();
        nodes_.push_back(Node{std::move(value), requires_grad});
        return Var{this, static_cast<int>(nodes_.size()) - 1};
    }
    Node& node(int i) { return nodes_[static_cast<std::size_t>(i)]; }
    void record(std::function<void()> backward_fn) { ops_.push_back(std::move(backward_fn)); }
    int size() const { return static_cast<int>(nodes_.size()); }

private:
    std::vector<Node> nodes_;
    std::vector<std::function<void()>> ops_;
};

namespace detail {

inline Tape* op_tape(Var a, Var b, const char* op) {
    if (a.tape == nullptr || a.tape != b.tape)
        throw ContractError(std::string(op) + ": operands live on different tapes");
    return a.tape;
}

}  // namespace detail

// y = a + b, elementwise. Shapes must match exactly; no broadcasting.
inline Var add(Var a, Var b) {
    Tape* t = detail::op_tape(a, b, "add");
    const Tensor& av = t->value(a);
    const Tensor& bv = t->value(b);
    if (!av.same_shape(bv))
        throw DimensionError("add: shape " + shape_str(av.shape()) + " vs " +
                             shape_str(bv.shape()));
    Tensor out(av.shape());
    for (int i = 0; i < av.numel(); ++i) out[i] = av[i] + bv[i];
    Var y = t->push(std::move(out), t->node(a.idx).requires_grad || t->node(b.idx).requires_grad);
    t->record([t, a, b, y] {
        const std::vector<float>& gy = t->node(y.idx).value.grad();
        std::vector<float>& ga = t->node(a.idx).value.grad();
        std::vector<float>& gb = t->node(b.idx).value.grad();
        for (std::size_t i = 0; i < gy.size(); ++i) {
            ga[i] += gy[i];
            gb[i] += gy[i];
        }
    });
    return y;
}

// y = a * b, elementwise.
inline Var mul(Var a, Var b) {
    Tape* t = detail::op_tape(a, b, "mul");
    const Tensor& av = t->value(a);
    const Tensor& bv = t->value(b);
    if (!av.same_shape(bv))
        throw DimensionError("mul: shape " + shape_str(av.shape()) + " vs " +
                             shape_str(bv.shape()));
    Tensor out(av.shape());
    for (int i = 0; i < av.numel(); ++i) out[i] = av[i] * bv[i];
    Var y = t->push(std::move(out), t->node(a.idx).requires_grad || t->node(b.idx).requires_grad);
    t->record([t, a, b, y] {
        const std::vector<float>& gy = t->node(y.idx).value.grad();
        const Tensor& avv = t->node(a.idx).value;
        const Tensor& bvv = t->node(b.idx).value;
        std::vector<float>& ga = t->node(a.idx).value.grad();
        std::vector<float>& gb = t->node(b.idx).value.grad();
        for (std::size_t i = 0; i < gy.size(); ++i) {
            ga[i] += gy[i] * bvv[static_cast<int>(i)];
            gb[i] += gy[i] * avv[static_cast<int>(i)];
        }
    });
    return y;
}

// y = s * a.
inline Var scale(Var a, float s) {
    Tape* t = a.tape;
    const Tensor& av = t->value(a);
    Tensor out(av.shape());
    for (int i = 0; i < av.numel(); ++i) out[i] = s * av[i];
    Var y = t->push(std::move(out), t->node(a.idx).requires_grad);
    t->record([t, a, y, s] {
        const std::vector<float>& gy = t->node(y.idx).value.grad();
        std::vector<float>& ga = t->node(a.idx).value.grad();
        for (std::size_t i = 0; i < gy.size(); ++i) ga[i] += s * gy[i];
    });
    return y;
}

// y = min(max(a, lo), hi). The gradient passes through where the pre-clamp
// value lies inside [lo, hi] and is zero outside.
inline Var clamp(Var a, float lo, float hi) {
    Tape* t = a.tape;
    const Tensor& av = t->value(a);
    Tensor out(av.shape());
    for (int i = 0; i < av.numel(); ++i) out[i] = std::min(std::max(av[i], lo), hi);
    Var y = t->push(std::move(out), t->node(a.idx).requires_grad);
    t->record([t, a, y, lo, hi] {
        const std::vector<float>& gy = t->node(y.idx).value.grad();
        const Tensor& avv = t->node(a.idx).value;
        std::vector<float>& ga = t->node(a.idx).value.grad();
        for (std::size_t i = 0; i < gy.size(); ++i) {
            float v = avv[static_cast<int>(i)];
            if (v >= lo && v <= hi) ga[i] += gy[i];
        }
    });
    return y;
}

// y = max(0, a). Subgradient at exactly 0 is 0.
inline Var relu(Var a) {
    Tape* t = a.tape;
    const Tensor& av = t->value(a);
    Tensor out(av.shape());
    for (int i = 0; i < av.numel(); ++i) out[i] = av[i] > 0.0f ? av[i] : 0.0f;
    Var y = t->push(std::move(out), t->node(a.idx).requires_grad);
    t->record([t, a, y] {
        const std::vector<float>& gy = t->node(y.idx).value.grad();
        const Tensor& avv = t->node(a.idx).value;
        std::vector<float>& ga = t->node(a.idx).value.grad();
        for (std::size_t i = 0; i < gy.size(); ++i)
            if (avv[static_cast<int>(i)] > 0.0f) ga[i] += gy[i];
    });
    return y;
}

// Scalar sum of all elements.
inline Var sum(Var a) {
    Tape* t = a.tape;
    const Tensor& av = t->value(a);
    double acc = 0.0;
    for (int i = 0; i < av.numel(); ++i) acc += av[i];
    Var y = t->push(Tensor::scalar(static_cast<float>(acc)), t->node(a.idx).requires_grad);
    t->record([t, a, y] {
        float g = t->node(y.idx).value.grad()[0];
        std::vector<float>& ga = t->node(a.idx).value.grad();
        for (float& v : ga) v += g;
    });
    return y;
}

// Scalar y = a[index].
inline Var pick(Var a, int index) {
    Tape* t = a.tape;
    const Tensor& av = t->value(a);
    if (index < 0 || index >= av.numel())
        throw IndexError("pick: index " + std::to_string(index) + " out of range for " +
                         shape_str(av.shape()));
    Var y = t->push(Tensor::scalar(av[index]), t->node(a.idx).requires_grad);
    t->record([t, a, y, index] {
        t->node(a.idx).value.grad()[static_cast<std::size_t>(index)] +=
            t->node(y.idx).value.grad()[0];
    });
    return y;
}

// y[i] = sum_j W[i,j] x[j] + b[i].  x: [n_in], W: [n_out, n_in], b: [n_out].
inline Var dense(Var x, Var w, Var b) {
    Tape* t = detail::op_tape(x, w, "dense");
    detail::op_tape(w, b, "dense");
    const Tensor& xv = t->value(x);
    const Tensor& wv = t->value(w);
    const Tensor& bv = t->value(b);
    if (xv.rank() != 1 || wv.rank() != 2 || bv.rank() != 1 || wv.dim(1) != xv.dim(0) ||
        wv.dim(0) != bv.dim(0))
        throw DimensionError("dense: x " + shape_str(xv.shape()) + ", W " +
                             shape_str(wv.shape()) + ", b " + shape_str(bv.shape()) +
                             " do not conform");
    int n_out = wv.dim(0), n_in = wv.dim(1);
    Tensor out(Shape{n_out});
    for (int i = 0; i < n_out; ++i) {
        double acc = bv[i];
        const float* row = wv.data().data() + static_cast<std::size_t>(i) * n_in;
        for (int j = 0; j < n_in; ++j) acc += double(row[j]) * double(xv[j]);
        out[i] = static_cast<float>(acc);
    }
    bool rg = t->node(x.idx).requires_grad || t->node(w.idx).requires_grad ||
              t->node(b.idx).requires_grad;
    Var y = t->push(std::move(out), rg);
    t->record([t, x, w, b, y, n_out, n_in] {
        const std::vector<float>& gy = t->node(y.idx).value.grad();
        const Tensor& xv2 = t->node(x.idx).value;
        const Tensor& wv2 = t->node(w.idx).value;
        std::vector<float>& gx = t->node(x.idx).value.grad();
        std::vector<float>& gw = t->node(w.idx).value.grad();
        std::vector<float>& gb = t->node(b.idx).value.grad();
        for (int j = 0; j < n_in; ++j) {
            double acc = 0.0;
            for (int i = 0; i < n_out; ++i)
                acc += double(gy[static_cast<std::size_t>(i)]) *
                       double(wv2[i * n_in + j]);
            gx[static_cast<std::size_t>(j)] += static_cast<float>(acc);
        }
        for (int i = 0; i < n_out; ++i) {
            float g = gy[static_cast<std::size_t>(i)];
            gb[static_cast<std::size_t>(i)] += g;
            float* grow = gw.data() + static_cast<std::size_t>(i) * n_in;
            for (int j = 0; j < n_in; ++j) grow[j] += g * xv2[j];
        }
    });
    return y;
}

// Cross-correlation. x: [C_in,H,W], k: [C_out,C_in,kh,kw] (square), b: [C_out].
// Output spatial size (H + 2*pad - kh) / stride + 1; truncating inputs are
// rejected rather than silently cropped.
inline Var conv2d(Var x, Var k, Var b, int stride, int pad) {
    Tape* t = detail::op_tape(x, k, "conv2d");
    detail::op_tape(k, b, "conv2d");
    const Tensor& xv = t->value(x);
    const Tensor& kv = t->value(k);
    const Tensor& bv = t->value(b);
    if (stride < 1) throw ContractError("conv2d: stride must be >= 1");
    if (pad < 0) throw ContractError("conv2d: pad must be >= 0");
    if (xv.rank() != 3 || kv.rank() != 4 || bv.rank() != 1)
        throw DimensionError("conv2d: x " + shape_str(xv.shape()) + ", K " +
                             shape_str(kv.shape()) + ", b " + shape_str(bv.shape()) +
                             " have wrong ranks");
    int ci = xv.dim(0), h = xv.dim(1), w = xv.dim(2);
    int co = kv.dim(0), kh = kv.dim(2), kw = kv.dim(3);
    if (kv.dim(1) != ci || bv.dim(0) != co || kh != kw)
        throw DimensionError("conv2d: x " + shape_str(xv.shape()) + " vs K " +
                             shape_str(kv.shape()) + " / b " + shape_str(bv.shape()));
    if (kh > h + 2 * pad || kw > w + 2 * pad)
        throw DimensionError("conv2d: kernel " + shape_str(kv.shape()) +
                             " larger than padded input " + shape_str(xv.shape()));
    if ((h + 2 * pad - kh) % stride != 0 || (w + 2 * pad - kw) % stride != 0)
        throw DimensionError("conv2d: input " + shape_str(xv.shape()) +
                             " not evenly covered by stride " + std::to_string(stride));
    int oh = (h + 2 * pad - kh) / stride + 1;
    int ow = (w + 2 * pad - kw) / stride + 1;

    Tensor out(Shape{co, oh, ow});
    for (int oc = 0; oc < co; ++oc) {
        for (int oy = 0; oy < oh; ++oy) {
            for (int ox = 0; ox < ow; ++ox) {
                double acc = bv[oc];
                for (int ic = 0; ic < ci; ++ic) {
                    for (int ky = 0; ky < kh; ++ky) {
                        int iy = oy * stride - pad + ky;
                        if (iy < 0 || iy >= h) continue;
                        for (int kx = 0; kx < kw; ++kx) {
                            int ix = ox * stride - pad + kx;
                            if (ix < 0 || ix >= w) continue;
                            acc += double(xv.at3(ic, iy, ix)) *
                                   double(kv[((oc * ci + ic) * kh + ky) * kw + kx]);
                        }
                    }
                }
                out.at3(oc, oy, ox) = static_cast<float>(acc);
            }
        }
    }
    bool rg = t->node(x.idx).requires_grad || t->node(k.idx).requires_grad ||
              t->node(b.idx).requires_grad;
    Var y = t->push(std::move(out), rg);
    t->record([t, x, k, b, y, ci, h, w, co, kh, kw, stride, pad] {
        const Tensor& yv = t->node(y.idx).value;
        const std::vector<float>& gy = yv.grad();
        const Tensor& xv2 = t->node(x.idx).value;
        const Tensor& kv2 = t->node(k.idx).value;
        std::vector<float>& gx = t->node(x.idx).value.grad();
        std::vector<float>& gk = t->node(k.idx).value.grad();
        std::vector<float>& gb = t->node(b.idx).value.grad();
        int oh = yv.dim(1), ow = yv.dim(2);
        auto gout = [&](int oc, int oy, int ox) {
            return double(gy[static_cast<std::size_t>((oc * oh + oy) * ow + ox)]);
        };
        for (int oc = 0; oc < co; ++oc) {
            double acc = 0.0;
            for (int oy = 0; oy < oh; ++oy)
                for (int ox = 0; ox < ow; ++ox) acc += gout(oc, oy, ox);
            gb[static_cast<std::size_t>(oc)] += static_cast<float>(acc);
        }
        for (int oc = 0; oc < co; ++oc) {
            for (int ic = 0; ic < ci; ++ic) {
                for (int ky = 0; ky < kh; ++ky) {
                    for (int kx = 0; kx < kw; ++kx) {
                        double acc = 0.0;
                        for (int oy = 0; oy < oh; ++oy) {
                            int iy = oy * stride - pad + ky;
                            if (iy < 0 || iy >= h) continue;
                            for (int ox = 0; ox < ow; ++ox) {
                                int ix = ox * stride - pad + kx;
                                if (ix < 0 || ix >= w) continue;
                                acc += gout(oc, oy, ox) * double(xv2.at3(ic, iy, ix));
                            }
                        }
                        gk[static_cast<std::size_t>(((oc * ci + ic) * kh + ky) * kw + kx)] +=
                            static_cast<float>(acc);
                    }
                }
            }
        }
        for (int ic = 0; ic < ci; ++ic) {
            for (int iy = 0; iy < h; ++iy) {
                for (int ix = 0; ix < w; ++ix) {
                    double acc = 0.0;
                    for (int oc = 0; oc < co; ++oc) {
                        for (int ky = 0; ky < kh; ++ky) {
                            int oy = iy + pad - ky;
                            if (oy < 0 || oy % stride != 0) continue;
                            oy /= stride;
                            if (oy >= oh) continue;
                            for (int kx = 0; kx < kw; ++kx) {
                                int ox = ix + pad - kx;
                                if (ox < 0 || ox % stride != 0) continue;
                                ox /= stride;
                                if (ox >= ow) continue;
                                acc += gout(oc, oy, ox) *
                                       double(kv2[((oc * ci + ic) * kh + ky) * kw + kx]);
                            }
                        }
                    }
                    gx[static_cast<std::size_t>((ic * h + iy) * w + ix)] +=
                        static_cast<float>(acc);
                }
            }
        }
    });
    return y;
}

// 2x2 non-overlapping max pooling; H and W must be even. The gradient is
// routed to the argmax cell, first index in scan order on ties.
inline Var maxpool2(Var a) {
    Tape* t = a.tape;
    const Tensor& av = t->value(a);
    if (av.rank() != 3)
        throw DimensionError("maxpool2: expected [C,H,W], got " + shape_str(av.shape()));
    int c = av.dim(0), h = av.dim(1), w = av.dim(2);
    if (h % 2 != 0 || w % 2 != 0)
        throw DimensionError("maxpool2: odd spatial dims in " + shape_str(av.shape()));
    int oh = h / 2, ow = w / 2;
    Tensor out(Shape{c, oh, ow});
    auto argmax = std::make_shared<std::vector<int>>(static_cast<std::size_t>(c * oh * ow));
    for (int ic = 0; ic < c; ++ic) {
        for (int oy = 0; oy < oh; ++oy) {
            for (int ox = 0; ox < ow; ++ox) {
                int best = -1;
                float bv = 0.0f;
                for (int dy = 0; dy < 2; ++dy) {
                    for (int dx = 0; dx < 2; ++dx) {
                        int iy = oy * 2 + dy, ix = ox * 2 + dx;
                        float v = av.at3(ic, iy, ix);
                        if (best < 0 || v > bv) {
                            bv = v;
                            best = (ic * h + iy) * w + ix;
                        }
                    }
                }
                out.at3(ic, oy, ox) = bv;
                (*argmax)[static_cast<std::size_t>((ic * oh + oy) * ow + ox)] = best;
            }
        }
    }
    Var y = t->push(std::move(out), t->node(a.idx).requires_grad);
    t->record([t, a, y, argmax] {
        const std::vector<float>& gy = t->node(y.idx).value.grad();
        std::vector<float>& ga = t->node(a.idx).value.grad();
        for (std::size_t i = 0; i < gy.size(); ++i)
            ga[static_cast<std::size_t>((*argmax)[i])] += gy[i];
    });
    return y;
}

// Reshape to a rank-1 tensor; data order unchanged.
inline Var flatten(Var a) {
    Tape* t = a.tape;
    const Tensor& av = t->value(a);
    Tensor out(Shape{av.numel()}, av.data());
    Var y = t->push(std::move(out), t->node(a.idx).requires_grad);
    t->record([t, a, y] {
        const std::vector<float>& gy = t->node(y.idx).value.grad();
        std::vector<float>& ga = t->node(a.idx).value.grad();
        for (std::size_t i = 0; i < gy.size(); ++i) ga[i] += gy[i];
    });
    return y;
}

namespace detail {

// Stable softmax of a raw vector (max subtraction, double accumulation).
inline std::vector<float> softmax_values(const std::vector<float>& z) {
    float m = z[0];
    for (float v : z) m = std::max(m, v);
    double denom = 0.0;
    std::vector<float> e(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
        e[i] = std::exp(z[i] - m);
        denom += e[i];
    }
    std::vector<float> p(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) p[i] = static_cast<float>(e[i] / denom);
    return p;
}

}  // namespace detail

// Stable softmax over a rank-1 tensor.
inline Var softmax(Var z) {
    Tape* t = z.tape;
    const Tensor& zv = t->value(z);
    if (zv.rank() != 1)
        throw DimensionError("softmax: expected rank-1 input, got " + shape_str(zv.shape()));
    Tensor out(zv.shape(), detail::softmax_values(zv.data()));
    Var y = t->push(std::move(out), t->node(z.idx).requires_grad);
    t->record([t, z, y] {
        const Tensor& yv = t->node(y.idx).value;
        const std::vector<float>& gy = yv.grad();
        std::vector<float>& gz = t->node(z.idx).value.grad();
        double dot = 0.0;
        for (std::size_t i = 0; i < gy.size(); ++i) dot += double(gy[i]) * double(yv[static_cast<int>(i)]);
        for (std::size_t i = 0; i < gy.size(); ++i)
            gz[i] += yv[static_cast<int>(i)] * (gy[i] - static_cast<float>(dot));
    });
    return y;
}

// -log(p[target] + 1e-12) on an already-normalized probability vector.
inline Var cross_entropy(Var p, int target) {
    Tape* t = p.tape;
    const Tensor& pv = t->value(p);
    if (pv.rank() != 1)
        throw DimensionError("cross_entropy: expected rank-1 input, got " +
                             shape_str(pv.shape()));
    if (target < 0 || target >= pv.numel())
        throw IndexError("cross_entropy: class " + std::to_string(target) +
                         " out of range for " + std::to_string(pv.numel()) + " classes");
    const float eps = 1e-12f;
    Var y = t->push(Tensor::scalar(-std::log(pv[target] + eps)), t->node(p.idx).requires_grad);
    t->record([t, p, y, target, eps] {
        float g = t->node(y.idx).value.grad()[0];
        const Tensor& pv2 = t->node(p.idx).value;
        t->node(p.idx).value.grad()[static_cast<std::size_t>(target)] +=
            -g / (pv2[target] + eps);
    });
    return y;
}

// Fused stable softmax + cross-entropy on raw logits. Gradient w.r.t. the
// logits is softmax(z) - onehot(target).
inline Var softmax_cross_entropy(Var logits, int target) {
    Tape* t = logits.tape;
    const Tensor& zv = t->value(logits);
    if (zv.rank() != 1)
        throw DimensionError("softmax_cross_entropy: expected rank-1 logits, got " +
                             shape_str(zv.shape()));
    if (target < 0 || target >= zv.numel())
        throw IndexError("softmax_cross_entropy: class " + std::to_string(target) +
                         " out of range for " + std::to_string(zv.numel()) + " classes");
    float m = zv[0];
    for (int i = 0; i < zv.numel(); ++i) m = std::max(m, zv[i]);
    double denom = 0.0;
    for (int i = 0; i < zv.numel(); ++i) denom += std::exp(double(zv[i]) - double(m));
    float loss = static_cast<float>(double(m) + std::log(denom) - double(zv[target]));
    auto probs = std::make_shared<std::vector<float>>(detail::softmax_values(zv.data()));
    Var y = t->push(Tensor::scalar(loss), t->node(logits.idx).requires_grad);
    t->record([t, logits, y, target, probs] {
        float g = t->node(y.idx).value.grad()[0];
        std::vector<float>& gz = t->node(logits.idx).value.grad();
        for (std::size_t i = 0; i < gz.size(); ++i) {
            float ind = (static_cast<int>(i) == target) ? 1.0f : 0.0f;
            gz[i] += g * ((*probs)[i] - ind);
        }
    });
    return y;
}

// ---------------------------------------------------------------------------
// Finite-difference oracle.

// Builds a scalar computation for a leaf on a fresh tape.
using TapeFn = std::function<Var(Tape&, Var)>;

inline float eval_scalar(const TapeFn& f, const Tensor& x) {
    Tape t;
    Var vx = t.leaf(x, false);
    Var y = f(t, vx);
    return t.value(y)[0];
}

// Central differences against backward()'s gradient, per coordinate.
// Relative error uses a max(|a|,|b|,1e-8) denominator; returns the max.
inline float finite_diff_check(const TapeFn& f, const Tensor& x, float h) {
    if (h <= 0.0f) throw ContractError("finite_diff_check: step must be positive");
    Tape t;
    Var vx = t.leaf(x, true);
    Var y = f(t, vx);
    if (t.value(y).numel() != 1)
        throw ContractError("finite_diff_check: function must be scalar-valued");
    t.backward(y);
    Tensor analytic = t.grad(vx);

    float max_rel = 0.0f;
    Tensor probe = x;
    for (int i = 0; i < x.numel(); ++i) {
        float orig = x[i];
        float hi = orig + h;
        float lo = orig - h;
        probe[i] = hi;
        float fp = eval_scalar(f, probe);
        probe[i] = lo;
        float fm = eval_scalar(f, probe);
        probe[i] = orig;
        float span = hi - lo;  // the step actually taken after rounding
        float fd = (fp - fm) / span;
        float a = analytic[i];
        float rel = std::fabs(fd - a) / std::max({std::fabs(fd), std::fabs(a), 1e-8f});
        max_rel = std::max(max_rel, rel);
    }
    return max_rel;
}

}  // namespace advtk

#endif  // ADVTK_TAPE_HPP
