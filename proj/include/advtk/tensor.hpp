#ifndef ADVTK_TENSOR_HPP
#define ADVTK_TENSOR_HPP

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "advtk/errors.hpp"

namespace advtk {

using Shape = std::vector<int>;

inline std::string shape_str(const Shape& s) {
    std::string out = "[";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(s[i]);
    }
    return out + "]";
}

inline long long shape_numel(const Shape& s) {
    long long n = 1;
    for (int d : s) n *= d;
    return n;
}

// Dense n-dimensional array of 32-bit reals, row-major, with an optional
// same-shaped gradient buffer. The universal numeric carrier of the toolkit.
class Tensor {
public:
    Tensor() = default;

    explicit Tensor(Shape shape) : shape_(std::move(shape)) {
        validate_shape();
        data_.assign(static_cast<std::size_t>(shape_numel(shape_)), 0.0f);
    }

    Tensor(Shape shape, std::vector<float> data)
        : shape_(std::move(shape)), data_(std::move(data)) {
        validate_shape();
        if (static_cast<long long>(data_.size()) != shape_numel(shape_))
            throw DimensionError("tensor: data length " + std::to_string(data_.size()) +
                                 " does not match shape " + shape_str(shape_));
    }

    static Tensor scalar(float v) { return Tensor({1}, {v}); }
    static Tensor zeros(Shape shape) { return Tensor(std::move(shape)); }
    static Tensor zeros_like(const Tensor& t) { return Tensor(t.shape_); }

    const Shape& shape() const { return shape_; }
    int rank() const { return static_cast<int>(shape_.size()); }
    int dim(int i) const { return shape_[static_cast<std::size_t>(i)]; }
    int numel() const { return static_cast<int>(data_.size()); }

    std::vector<float>& data() { return data_; }
    const std::vector<float>& data() const { return data_; }
    float& operator[](int i) { return data_[static_cast<std::size_t>(i)]; }
    float operator[](int i) const { return data_[static_cast<std::size_t>(i)]; }

    // Row-major accessors for the common [C,H,W] image layout.
    float& at3(int c, int y, int x) {
        return data_[static_cast<std::size_t>((c * shape_[1] + y) * shape_[2] + x)];
    }
    float at3(int c, int y, int x) const {
        return data_[static_cast<std::size_t>((c * shape_[1] + y) * shape_[2] + x)];
    }

    bool same_shape(const Tensor& o) const { return shape_ == o.shape_; }

    bool has_grad() const { return !grad_.empty(); }
    std::vector<float>& grad() {
        if (grad_.empty()) grad_.assign(data_.size(), 0.0f);
        return grad_;
    }
    const std::vector<float>& grad() const { return grad_; }
    void zero_grad() { grad_.assign(data_.size(), 0.0f); }
    void drop_grad() { grad_.clear(); }

    bool all_finite() const {
        for (float v : data_)
            if (!std::isfinite(v)) return false;
        return true;
    }

private:
    void validate_shape() const {
        if (shape_.empty())
            throw DimensionError("tensor: empty shape (scalars use shape [1])");
        for (int d : shape_)
            if (d <= 0)
                throw DimensionError("tensor: non-positive dimension in " + shape_str(shape_));
    }

    Shape shape_;
    std::vector<float> data_;
    std::vector<float> grad_;  // empty means absent
};

}  // namespace advtk

#endif  // ADVTK_TENSOR_HPP
