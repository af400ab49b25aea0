#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace pw2ss::nn {

/// Dense row-major tensor of 64-bit reals, rank 1 or 2.
struct Tensor {
    std::vector<std::size_t> shape;
    std::vector<double> data;

    Tensor() = default;

    static Tensor zeros(std::vector<std::size_t> shape);
    static Tensor scalar(double v);
    static Tensor vector1d(std::vector<double> values);
    static Tensor matrix(std::size_t rows, std::size_t cols, std::vector<double> values = {});

    std::size_t size() const { return data.size(); }
    std::size_t rank() const { return shape.size(); }

    /// 1-D tensors are treated as a single row.
    std::size_t rows() const { return rank() <= 1 ? 1 : shape[0]; }
    std::size_t cols() const { return rank() == 0 ? 1 : shape[rank() - 1]; }

    double& operator[](std::size_t i) { return data[i]; }
    double operator[](std::size_t i) const { return data[i]; }
    double& at(std::size_t r, std::size_t c) { return data[r * cols() + c]; }
    double at(std::size_t r, std::size_t c) const { return data[r * cols() + c]; }

    bool same_shape(const Tensor& o) const { return shape == o.shape; }
    bool all_finite() const;

    std::string shape_str() const;
};

/// Named trainable tensor with its gradient and AdamW moments.
struct Parameter {
    std::string name;
    Tensor value;
    Tensor grad;
    Tensor m; // first moment, sized on first optimizer step
    Tensor v; // second moment
    bool has_moments = false;

    Parameter() = default;
    Parameter(std::string n, Tensor val) : name(std::move(n)), value(std::move(val)) {
        grad = Tensor::zeros(value.shape);
    }
    void zero_grad() { std::fill(grad.data.begin(), grad.data.end(), 0.0); }
};

/// Plain (non-tape) value helpers used for detached computations.
Tensor matmul_value(const Tensor& a, const Tensor& b);
Tensor add_value(const Tensor& a, const Tensor& b);

} // namespace pw2ss::nn
