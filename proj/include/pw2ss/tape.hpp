#pragma once

#include <functional>
#include <unordered_map>
#include <vector>

#include "pw2ss/tensor.hpp"

namespace pw2ss::nn {

/// Reverse-mode autodiff tape. Forward values are recorded as nodes;
/// backward() replays the recorded ops in exact reverse execution order,
/// accumulating gradients additively into bound Parameters.
///
/// A Tape and its Parameters are exclusively owned by one training thread.
class Tape {
public:
    using Id = std::size_t;

    Tape() = default;
    Tape(const Tape&) = delete;
    Tape& operator=(const Tape&) = delete;

    /// Leaf that receives no gradient.
    Id constant(Tensor t);
    /// Trainable leaf; repeated calls with the same Parameter return the
    /// same node so fan-out gradients accumulate.
    Id param(Parameter& p);

    const Tensor& val(Id id) const { return nodes_[id].value; }

    // elementwise / broadcast
    Id add(Id a, Id b); // b may be same-shape, a 1-D row broadcast, or scalar
    Id sub(Id a, Id b);
    Id mul(Id a, Id b); // same-shape or scalar b
    Id scale(Id a, double c);

    // linear algebra (2-D)
    Id matmul(Id a, Id b);
    Id transpose(Id a);
    Id linear(Id x, Id W, Id b) { return add(matmul(x, W), b); }

    // structural
    Id slice_cols(Id a, std::size_t c0, std::size_t c1);
    Id concat_cols(const std::vector<Id>& parts);
    Id concat_rows(const std::vector<Id>& parts); // 1-D parts act as single rows
    Id gather_rows(Id a, std::vector<std::size_t> idx);
    /// Rows idx of a replaced by the (broadcast) row vector.
    Id replace_rows(Id a, std::vector<std::size_t> idx, Id row);

    // nonlinearities (last axis where applicable)
    Id softmax(Id a);
    Id layer_norm(Id x, Id gamma, Id beta, double eps = 1e-5);
    Id gelu(Id x);
    Id sigmoid(Id x);
    Id max_pool_rows(Id a); // coordinatewise max over rows -> 1-D

    // reductions / losses
    Id sum(Id a);
    Id mean(Id a);
    Id mse_loss(Id pred, Id target);
    /// Mean over rows of the squared L2 distance between matching rows.
    Id l2_loss(Id pred, Id target);
    /// Mean cross entropy; logits [n, C] with n targets (1-D logits allowed
    /// with a single target).
    Id cross_entropy(Id logits, const std::vector<int>& targets);
    /// Mean binary cross entropy on logits against labels in {0, 1}.
    Id bce_with_logits(Id logits, const std::vector<double>& labels);

    /// Reverse pass from a scalar loss. Zeroes the grads of every Parameter
    /// registered on this tape first, so unreachable parameters end at zero.
    /// Throws NotScalarLoss.
    void backward(Id loss);

    std::size_t node_count() const { return nodes_.size(); }

private:
    struct Node {
        Tensor value;
        std::function<void(Tape&, const Tensor&)> back;
        Parameter* bound = nullptr;
    };

    Id push(Tensor value, std::function<void(Tape&, const Tensor&)> back = {});
    void accum(Id id, const Tensor& g);

    std::vector<Node> nodes_;
    std::unordered_map<const Parameter*, Id> param_ids_;
    std::vector<Tensor> grads_;
    std::vector<char> has_grad_;
};

} // namespace pw2ss::nn
