#include "pw2ss/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pw2ss/errors.hpp"

namespace pw2ss::nn {

Tensor Tensor::zeros(std::vector<std::size_t> shape) {
    Tensor t;
    std::size_t n = 1;
    for (auto d : shape) n *= d;
    t.shape = std::move(shape);
    t.data.assign(n, 0.0);
    return t;
}

Tensor Tensor::scalar(double v) {
    Tensor t;
    t.shape = {1};
    t.data = {v};
    return t;
}

Tensor Tensor::vector1d(std::vector<double> values) {
    Tensor t;
    t.shape = {values.size()};
    t.data = std::move(values);
    return t;
}

Tensor Tensor::matrix(std::size_t rows, std::size_t cols, std::vector<double> values) {
    Tensor t;
    t.shape = {rows, cols};
    if (values.empty())
        t.data.assign(rows * cols, 0.0);
    else {
        if (values.size() != rows * cols)
            throw ShapeMismatch("matrix data size does not match " + std::to_string(rows) +
                                "x" + std::to_string(cols));
        t.data = std::move(values);
    }
    return t;
}

bool Tensor::all_finite() const {
    return std::all_of(data.begin(), data.end(), [](double v) { return std::isfinite(v); });
}

std::string Tensor::shape_str() const {
    std::string s = "[";
    for (std::size_t i = 0; i < shape.size(); ++i) {
        if (i) s += ", ";
        s += std::to_string(shape[i]);
    }
    return s + "]";
}

Tensor matmul_value(const Tensor& a, const Tensor& b) {
    if (a.rank() != 2 || b.rank() != 2 || a.shape[1] != b.shape[0])
        throw ShapeMismatch("matmul " + a.shape_str() + " x " + b.shape_str());
    const std::size_t m = a.shape[0], k = a.shape[1], n = b.shape[1];
    Tensor c = Tensor::matrix(m, n);
    for (std::size_t i = 0; i < m; ++i) {
        const double* arow = a.data.data() + i * k;
        double* crow = c.data.data() + i * n;
        for (std::size_t p = 0; p < k; ++p) {
            const double av = arow[p];
            if (av == 0.0) continue;
            const double* brow = b.data.data() + p * n;
            for (std::size_t j = 0; j < n; ++j) crow[j] += av * brow[j];
        }
    }
    return c;
}

Tensor add_value(const Tensor& a, const Tensor& b) {
    if (a.same_shape(b)) {
        Tensor c = a;
        for (std::size_t i = 0; i < c.size(); ++i) c.data[i] += b.data[i];
        return c;
    }
    // broadcast b over the leading axis of a
    if (a.rank() == 2 && b.rank() == 1 && b.shape[0] == a.shape[1]) {
        Tensor c = a;
        for (std::size_t r = 0; r < a.shape[0]; ++r)
            for (std::size_t j = 0; j < a.shape[1]; ++j) c.at(r, j) += b[j];
        return c;
    }
    throw ShapeMismatch("add " + a.shape_str() + " + " + b.shape_str());
}

} // namespace pw2ss::nn
