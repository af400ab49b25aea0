#include "pw2ss/tape.hpp"

#include <algorithm>
#include <cmath>

#include "pw2ss/errors.hpp"

namespace pw2ss::nn {
namespace {

constexpr double kInvSqrt2 = 0.7071067811865475244;
constexpr double kInvSqrt2Pi = 0.3989422804014326779;

double softplus(double x) {
    return std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x)));
}

double stable_sigmoid(double x) {
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
}

void require_2d(const Tensor& t, const char* op) {
    if (t.rank() != 2) throw ShapeMismatch(std::string(op) + ": expected 2-D, got " + t.shape_str());
}

} // namespace

Tape::Id Tape::push(Tensor value, std::function<void(Tape&, const Tensor&)> back) {
    nodes_.push_back(Node{std::move(value), std::move(back), nullptr});
    return nodes_.size() - 1;
}

Tape::Id Tape::constant(Tensor t) { return push(std::move(t)); }

Tape::Id Tape::param(Parameter& p) {
    auto it = param_ids_.find(&p);
    if (it != param_ids_.end()) return it->second;
    Id id = push(p.value);
    nodes_[id].bound = &p;
    param_ids_[&p] = id;
    return id;
}

void Tape::accum(Id id, const Tensor& g) {
    if (!has_grad_[id]) {
        grads_[id] = g;
        has_grad_[id] = 1;
    } else {
        auto& dst = grads_[id];
        for (std::size_t i = 0; i < dst.size(); ++i) dst.data[i] += g.data[i];
    }
}

void Tape::backward(Id loss) {
    if (nodes_[loss].value.size() != 1)
        throw NotScalarLoss("loss has shape " + nodes_[loss].value.shape_str());
    for (auto& [p, id] : param_ids_) const_cast<Parameter*>(p)->zero_grad();

    grads_.assign(nodes_.size(), Tensor{});
    has_grad_.assign(nodes_.size(), 0);
    Tensor seed = nodes_[loss].value;
    std::fill(seed.data.begin(), seed.data.end(), 1.0);
    accum(loss, seed);

    for (std::size_t i = nodes_.size(); i-- > 0;) {
        if (!has_grad_[i]) continue;
        Node& n = nodes_[i];
        if (n.bound) {
            auto& pg = n.bound->grad;
            for (std::size_t k = 0; k < pg.size(); ++k) pg.data[k] += grads_[i].data[k];
        }
        if (n.back) n.back(*this, grads_[i]);
    }
    grads_.clear();
    has_grad_.clear();
}

Tape::Id Tape::add(Id a, Id b) {
    const Tensor& ta = val(a);
    const Tensor& tb = val(b);
    if (ta.same_shape(tb)) {
        Tensor out = ta;
        for (std::size_t i = 0; i < out.size(); ++i) out.data[i] += tb.data[i];
        return push(std::move(out), [a, b](Tape& t, const Tensor& g) {
            t.accum(a, g);
            t.accum(b, g);
        });
    }
    if (tb.size() == 1) {
        Tensor out = ta;
        const double v = tb.data[0];
        for (auto& x : out.data) x += v;
        return push(std::move(out), [a, b](Tape& t, const Tensor& g) {
            t.accum(a, g);
            Tensor gb = t.val(b);
            gb.data[0] = 0.0;
            for (double v : g.data) gb.data[0] += v;
            t.accum(b, gb);
        });
    }
    if (ta.rank() == 2 && tb.rank() == 1 && tb.shape[0] == ta.shape[1]) {
        Tensor out = ta;
        const std::size_t rows = ta.shape[0], cols = ta.shape[1];
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c) out.data[r * cols + c] += tb.data[c];
        return push(std::move(out), [a, b, rows, cols](Tape& t, const Tensor& g) {
            t.accum(a, g);
            Tensor gb = Tensor::zeros({cols});
            for (std::size_t r = 0; r < rows; ++r)
                for (std::size_t c = 0; c < cols; ++c) gb.data[c] += g.data[r * cols + c];
            t.accum(b, gb);
        });
    }
    throw ShapeMismatch("add " + ta.shape_str() + " + " + tb.shape_str());
}

Tape::Id Tape::sub(Id a, Id b) { return add(a, scale(b, -1.0)); }

Tape::Id Tape::mul(Id a, Id b) {
    const Tensor& ta = val(a);
    const Tensor& tb = val(b);
    if (ta.same_shape(tb)) {
        Tensor out = ta;
        for (std::size_t i = 0; i < out.size(); ++i) out.data[i] *= tb.data[i];
        return push(std::move(out), [a, b](Tape& t, const Tensor& g) {
            const Tensor& va = t.val(a);
            const Tensor& vb = t.val(b);
            Tensor ga = g, gb = g;
            for (std::size_t i = 0; i < g.size(); ++i) {
                ga.data[i] = g.data[i] * vb.data[i];
                gb.data[i] = g.data[i] * va.data[i];
            }
            t.accum(a, ga);
            t.accum(b, gb);
        });
    }
    if (tb.size() == 1) {
        Tensor out = ta;
        const double v = tb.data[0];
        for (auto& x : out.data) x *= v;
        return push(std::move(out), [a, b](Tape& t, const Tensor& g) {
            const Tensor& va = t.val(a);
            const double v = t.val(b).data[0];
            Tensor ga = g;
            for (auto& x : ga.data) x *= v;
            t.accum(a, ga);
            Tensor gb = Tensor::scalar(0.0);
            for (std::size_t i = 0; i < g.size(); ++i) gb.data[0] += g.data[i] * va.data[i];
            t.accum(b, gb);
        });
    }
    throw ShapeMismatch("mul " + ta.shape_str() + " * " + tb.shape_str());
}

Tape::Id Tape::scale(Id a, double c) {
    Tensor out = val(a);
    for (auto& x : out.data) x *= c;
    return push(std::move(out), [a, c](Tape& t, const Tensor& g) {
        Tensor ga = g;
        for (auto& x : ga.data) x *= c;
        t.accum(a, ga);
    });
}

Tape::Id Tape::matmul(Id a, Id b) {
    const Tensor& ta = val(a);
    const Tensor& tb = val(b);
    Tensor out = matmul_value(ta, tb); // throws ShapeMismatch
    const std::size_t m = ta.shape[0], k = ta.shape[1], n = tb.shape[1];
    return push(std::move(out), [a, b, m, k, n](Tape& t, const Tensor& g) {
        const Tensor& va = t.val(a);
        const Tensor& vb = t.val(b);
        Tensor ga = Tensor::matrix(m, k);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t p = 0; p < k; ++p) {
                double acc = 0.0;
                const double* grow = g.data.data() + i * n;
                const double* brow = vb.data.data() + p * n;
                for (std::size_t j = 0; j < n; ++j) acc += grow[j] * brow[j];
                ga.data[i * k + p] = acc;
            }
        Tensor gb = Tensor::matrix(k, n);
        for (std::size_t i = 0; i < m; ++i) {
            const double* arow = va.data.data() + i * k;
            const double* grow = g.data.data() + i * n;
            for (std::size_t p = 0; p < k; ++p) {
                const double av = arow[p];
                if (av == 0.0) continue;
                double* dst = gb.data.data() + p * n;
                for (std::size_t j = 0; j < n; ++j) dst[j] += av * grow[j];
            }
        }
        t.accum(a, ga);
        t.accum(b, gb);
    });
}

Tape::Id Tape::transpose(Id a) {
    const Tensor& ta = val(a);
    require_2d(ta, "transpose");
    const std::size_t r = ta.shape[0], c = ta.shape[1];
    Tensor out = Tensor::matrix(c, r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) out.data[j * r + i] = ta.data[i * c + j];
    return push(std::move(out), [a, r, c](Tape& t, const Tensor& g) {
        Tensor ga = Tensor::matrix(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) ga.data[i * c + j] = g.data[j * r + i];
        t.accum(a, ga);
    });
}

Tape::Id Tape::slice_cols(Id a, std::size_t c0, std::size_t c1) {
    const Tensor& ta = val(a);
    require_2d(ta, "slice_cols");
    const std::size_t rows = ta.shape[0], cols = ta.shape[1];
    if (c0 >= c1 || c1 > cols)
        throw ShapeMismatch("slice_cols [" + std::to_string(c0) + ", " + std::to_string(c1) +
                            ") of " + ta.shape_str());
    const std::size_t w = c1 - c0;
    Tensor out = Tensor::matrix(rows, w);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t j = 0; j < w; ++j) out.data[r * w + j] = ta.data[r * cols + c0 + j];
    return push(std::move(out), [a, rows, cols, c0, w](Tape& t, const Tensor& g) {
        Tensor ga = Tensor::matrix(rows, cols);
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t j = 0; j < w; ++j) ga.data[r * cols + c0 + j] = g.data[r * w + j];
        t.accum(a, ga);
    });
}

Tape::Id Tape::concat_cols(const std::vector<Id>& parts) {
    if (parts.empty()) throw ShapeMismatch("concat_cols of nothing");
    std::size_t rows = val(parts[0]).rows(), total = 0;
    for (Id p : parts) {
        require_2d(val(p), "concat_cols");
        if (val(p).shape[0] != rows)
            throw ShapeMismatch("concat_cols row mismatch " + val(p).shape_str());
        total += val(p).shape[1];
    }
    Tensor out = Tensor::matrix(rows, total);
    std::vector<std::size_t> offsets;
    std::size_t off = 0;
    for (Id p : parts) {
        offsets.push_back(off);
        const Tensor& tp = val(p);
        const std::size_t w = tp.shape[1];
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t j = 0; j < w; ++j) out.data[r * total + off + j] = tp.data[r * w + j];
        off += w;
    }
    auto parts_copy = parts;
    return push(std::move(out),
                [parts_copy, offsets, rows, total](Tape& t, const Tensor& g) {
                    for (std::size_t k = 0; k < parts_copy.size(); ++k) {
                        const std::size_t w = t.val(parts_copy[k]).shape[1];
                        Tensor gp = Tensor::matrix(rows, w);
                        for (std::size_t r = 0; r < rows; ++r)
                            for (std::size_t j = 0; j < w; ++j)
                                gp.data[r * w + j] = g.data[r * total + offsets[k] + j];
                        t.accum(parts_copy[k], gp);
                    }
                });
}

Tape::Id Tape::concat_rows(const std::vector<Id>& parts) {
    if (parts.empty()) throw ShapeMismatch("concat_rows of nothing");
    const std::size_t cols = val(parts[0]).cols();
    std::size_t total_rows = 0;
    for (Id p : parts) {
        if (val(p).cols() != cols)
            throw ShapeMismatch("concat_rows col mismatch " + val(p).shape_str());
        total_rows += val(p).rows();
    }
    Tensor out = Tensor::matrix(total_rows, cols);
    std::size_t row = 0;
    std::vector<std::size_t> row_offsets;
    for (Id p : parts) {
        row_offsets.push_back(row);
        const Tensor& tp = val(p);
        std::copy(tp.data.begin(), tp.data.end(), out.data.begin() + row * cols);
        row += tp.rows();
    }
    auto parts_copy = parts;
    return push(std::move(out), [parts_copy, row_offsets, cols](Tape& t, const Tensor& g) {
        for (std::size_t k = 0; k < parts_copy.size(); ++k) {
            const Tensor& tp = t.val(parts_copy[k]);
            Tensor gp = tp;
            const std::size_t n = tp.size();
            std::copy(g.data.begin() + row_offsets[k] * cols,
                      g.data.begin() + row_offsets[k] * cols + n, gp.data.begin());
            t.accum(parts_copy[k], gp);
        }
    });
}

Tape::Id Tape::gather_rows(Id a, std::vector<std::size_t> idx) {
    const Tensor& ta = val(a);
    require_2d(ta, "gather_rows");
    const std::size_t rows = ta.shape[0], cols = ta.shape[1];
    for (auto i : idx)
        if (i >= rows) throw ShapeMismatch("gather_rows index out of range");
    Tensor out = Tensor::matrix(idx.size(), cols);
    for (std::size_t k = 0; k < idx.size(); ++k)
        std::copy(ta.data.begin() + idx[k] * cols, ta.data.begin() + (idx[k] + 1) * cols,
                  out.data.begin() + k * cols);
    return push(std::move(out), [a, idx = std::move(idx), rows, cols](Tape& t, const Tensor& g) {
        Tensor ga = Tensor::matrix(rows, cols);
        for (std::size_t k = 0; k < idx.size(); ++k)
            for (std::size_t j = 0; j < cols; ++j)
                ga.data[idx[k] * cols + j] += g.data[k * cols + j];
        t.accum(a, ga);
    });
}

Tape::Id Tape::replace_rows(Id a, std::vector<std::size_t> idx, Id row) {
    const Tensor& ta = val(a);
    const Tensor& tr = val(row);
    require_2d(ta, "replace_rows");
    const std::size_t rows = ta.shape[0], cols = ta.shape[1];
    if (tr.cols() != cols || tr.rows() != 1)
        throw ShapeMismatch("replace_rows row " + tr.shape_str() + " into " + ta.shape_str());
    Tensor out = ta;
    for (auto i : idx) {
        if (i >= rows) throw ShapeMismatch("replace_rows index out of range");
        std::copy(tr.data.begin(), tr.data.end(), out.data.begin() + i * cols);
    }
    return push(std::move(out),
                [a, row, idx = std::move(idx), cols](Tape& t, const Tensor& g) {
                    Tensor ga = g;
                    Tensor gr = t.val(row);
                    std::fill(gr.data.begin(), gr.data.end(), 0.0);
                    for (auto i : idx) {
                        for (std::size_t j = 0; j < cols; ++j) {
                            gr.data[j] += g.data[i * cols + j];
                            ga.data[i * cols + j] = 0.0;
                        }
                    }
                    t.accum(a, ga);
                    t.accum(row, gr);
                });
}

Tape::Id Tape::softmax(Id a) {
    const Tensor& ta = val(a);
    const std::size_t rows = ta.rows(), cols = ta.cols();
    Tensor out = ta;
    for (std::size_t r = 0; r < rows; ++r) {
        double* x = out.data.data() + r * cols;
        const double mx = *std::max_element(x, x + cols);
        double sum = 0.0;
        for (std::size_t j = 0; j < cols; ++j) {
            x[j] = std::exp(x[j] - mx);
            sum += x[j];
        }
        for (std::size_t j = 0; j < cols; ++j) x[j] /= sum;
    }
    Id out_id = push(std::move(out), [a, rows, cols](Tape& t, const Tensor& g) {
        // value of this node is the softmax output itself
        Tensor ga = g;
        const Tensor& s = t.nodes_[t.nodes_.size() - 1].value; // placeholder, replaced below
        (void)s;
        t.accum(a, ga);
    });
    // rebuild the backward closure now that out_id is known
    nodes_[out_id].back = [a, out_id, rows, cols](Tape& t, const Tensor& g) {
        const Tensor& s = t.val(out_id);
        Tensor ga = g;
        for (std::size_t r = 0; r < rows; ++r) {
            double dot = 0.0;
            for (std::size_t j = 0; j < cols; ++j)
                dot += g.data[r * cols + j] * s.data[r * cols + j];
            for (std::size_t j = 0; j < cols; ++j)
                ga.data[r * cols + j] = (g.data[r * cols + j] - dot) * s.data[r * cols + j];
        }
        t.accum(a, ga);
    };
    return out_id;
}

Tape::Id Tape::layer_norm(Id x, Id gamma, Id beta, double eps) {
    const Tensor& tx = val(x);
    const Tensor& tg = val(gamma);
    const Tensor& tb = val(beta);
    const std::size_t rows = tx.rows(), cols = tx.cols();
    if (tg.size() != cols || tb.size() != cols)
        throw ShapeMismatch("layer_norm scale/shift " + tg.shape_str() + "/" + tb.shape_str() +
                            " for input " + tx.shape_str());
    Tensor out = tx;
    Tensor xhat = tx;     // normalized inputs, saved for backward
    Tensor inv_std_t = Tensor::zeros({rows});
    for (std::size_t r = 0; r < rows; ++r) {
        const double* xr = tx.data.data() + r * cols;
        double mean = 0.0;
        for (std::size_t j = 0; j < cols; ++j) mean += xr[j];
        mean /= static_cast<double>(cols);
        double var = 0.0;
        for (std::size_t j = 0; j < cols; ++j) var += (xr[j] - mean) * (xr[j] - mean);
        var /= static_cast<double>(cols);
        const double inv_std = 1.0 / std::sqrt(var + eps);
        inv_std_t.data[r] = inv_std;
        for (std::size_t j = 0; j < cols; ++j) {
            const double xh = (xr[j] - mean) * inv_std;
            xhat.data[r * cols + j] = xh;
            out.data[r * cols + j] = xh * tg.data[j] + tb.data[j];
        }
    }
    return push(std::move(out), [x, gamma, beta, rows, cols, xhat = std::move(xhat),
                                 inv_std_t = std::move(inv_std_t)](Tape& t, const Tensor& g) {
        const Tensor& tg = t.val(gamma);
        Tensor gx = g;
        Tensor gg = Tensor::zeros(t.val(gamma).shape);
        Tensor gb = Tensor::zeros(t.val(beta).shape);
        for (std::size_t r = 0; r < rows; ++r) {
            double sum_dxhat = 0.0, sum_dxhat_xhat = 0.0;
            for (std::size_t j = 0; j < cols; ++j) {
                const double go = g.data[r * cols + j];
                const double xh = xhat.data[r * cols + j];
                gg.data[j] += go * xh;
                gb.data[j] += go;
                const double dxhat = go * tg.data[j];
                sum_dxhat += dxhat;
                sum_dxhat_xhat += dxhat * xh;
            }
            const double n = static_cast<double>(cols);
            for (std::size_t j = 0; j < cols; ++j) {
                const double dxhat = g.data[r * cols + j] * tg.data[j];
                const double xh = xhat.data[r * cols + j];
                gx.data[r * cols + j] =
                    inv_std_t.data[r] * (dxhat - sum_dxhat / n - xh * sum_dxhat_xhat / n);
            }
        }
        t.accum(x, gx);
        t.accum(gamma, gg);
        t.accum(beta, gb);
    });
}

Tape::Id Tape::gelu(Id x) {
    const Tensor& tx = val(x);
    Tensor out = tx;
    for (auto& v : out.data) v = 0.5 * v * (1.0 + std::erf(v * kInvSqrt2));
    return push(std::move(out), [x](Tape& t, const Tensor& g) {
        const Tensor& vx = t.val(x);
        Tensor gx = g;
        for (std::size_t i = 0; i < gx.size(); ++i) {
            const double v = vx.data[i];
            const double cdf = 0.5 * (1.0 + std::erf(v * kInvSqrt2));
            const double pdf = kInvSqrt2Pi * std::exp(-0.5 * v * v);
            gx.data[i] = g.data[i] * (cdf + v * pdf);
        }
        t.accum(x, gx);
    });
}

Tape::Id Tape::sigmoid(Id x) {
    const Tensor& tx = val(x);
    Tensor out = tx;
    for (auto& v : out.data) v = stable_sigmoid(v);
    Id out_id = push(std::move(out));
    nodes_[out_id].back = [x, out_id](Tape& t, const Tensor& g) {
        const Tensor& s = t.val(out_id);
        Tensor gx = g;
        for (std::size_t i = 0; i < gx.size(); ++i)
            gx.data[i] = g.data[i] * s.data[i] * (1.0 - s.data[i]);
        t.accum(x, gx);
    };
    return out_id;
}

Tape::Id Tape::max_pool_rows(Id a) {
    const Tensor& ta = val(a);
    const std::size_t rows = ta.rows(), cols = ta.cols();
    Tensor out = Tensor::zeros({cols});
    std::vector<std::size_t> argmax(cols, 0);
    for (std::size_t j = 0; j < cols; ++j) {
        double best = ta.data[j];
        std::size_t best_r = 0;
        for (std::size_t r = 1; r < rows; ++r) {
            const double v = ta.data[r * cols + j];
            if (v > best) { // first max wins ties
                best = v;
                best_r = r;
            }
        }
        out.data[j] = best;
        argmax[j] = best_r;
    }
    return push(std::move(out),
                [a, argmax = std::move(argmax), rows, cols](Tape& t, const Tensor& g) {
                    Tensor ga = Tensor::matrix(rows, cols);
                    ga.shape = t.val(a).shape;
                    for (std::size_t j = 0; j < cols; ++j)
                        ga.data[argmax[j] * cols + j] = g.data[j];
                    t.accum(a, ga);
                });
}

Tape::Id Tape::sum(Id a) {
    const Tensor& ta = val(a);
    double s = 0.0;
    for (double v : ta.data) s += v;
    return push(Tensor::scalar(s), [a](Tape& t, const Tensor& g) {
        Tensor ga = t.val(a);
        std::fill(ga.data.begin(), ga.data.end(), g.data[0]);
        t.accum(a, ga);
    });
}

Tape::Id Tape::mean(Id a) {
    const std::size_t n = val(a).size();
    return scale(sum(a), 1.0 / static_cast<double>(n));
}

Tape::Id Tape::mse_loss(Id pred, Id target) {
    const Tensor& tp = val(pred);
    const Tensor& tt = val(target);
    if (!tp.same_shape(tt))
        throw ShapeMismatch("mse_loss " + tp.shape_str() + " vs " + tt.shape_str());
    const double n = static_cast<double>(tp.size());
    double s = 0.0;
    for (std::size_t i = 0; i < tp.size(); ++i) {
        const double d = tp.data[i] - tt.data[i];
        s += d * d;
    }
    return push(Tensor::scalar(s / n), [pred, target, n](Tape& t, const Tensor& g) {
        const Tensor& vp = t.val(pred);
        const Tensor& vt = t.val(target);
        Tensor gp = vp;
        for (std::size_t i = 0; i < gp.size(); ++i)
            gp.data[i] = 2.0 * (vp.data[i] - vt.data[i]) / n * g.data[0];
        t.accum(pred, gp);
        Tensor gt = gp;
        for (auto& v : gt.data) v = -v;
        t.accum(target, gt);
    });
}

Tape::Id Tape::l2_loss(Id pred, Id target) {
    const Tensor& tp = val(pred);
    const Tensor& tt = val(target);
    if (!tp.same_shape(tt))
        throw ShapeMismatch("l2_loss " + tp.shape_str() + " vs " + tt.shape_str());
    const double rows = static_cast<double>(tp.rows());
    double s = 0.0;
    for (std::size_t i = 0; i < tp.size(); ++i) {
        const double d = tp.data[i] - tt.data[i];
        s += d * d;
    }
    return push(Tensor::scalar(s / rows), [pred, target, rows](Tape& t, const Tensor& g) {
        const Tensor& vp = t.val(pred);
        const Tensor& vt = t.val(target);
        Tensor gp = vp;
        for (std::size_t i = 0; i < gp.size(); ++i)
            gp.data[i] = 2.0 * (vp.data[i] - vt.data[i]) / rows * g.data[0];
        t.accum(pred, gp);
        Tensor gt = gp;
        for (auto& v : gt.data) v = -v;
        t.accum(target, gt);
    });
}

Tape::Id Tape::cross_entropy(Id logits, const std::vector<int>& targets) {
    const Tensor& tl = val(logits);
    const std::size_t rows = tl.rows(), cols = tl.cols();
    if (targets.size() != rows)
        throw ShapeMismatch("cross_entropy: " + std::to_string(targets.size()) +
                            " targets for logits " + tl.shape_str());
    for (int c : targets)
        if (c < 0 || static_cast<std::size_t>(c) >= cols)
            throw ShapeMismatch("cross_entropy: class id out of range");
    double loss = 0.0;
    Tensor probs = tl;
    for (std::size_t r = 0; r < rows; ++r) {
        double* x = probs.data.data() + r * cols;
        const double mx = *std::max_element(x, x + cols);
        double sum = 0.0;
        for (std::size_t j = 0; j < cols; ++j) {
            x[j] = std::exp(x[j] - mx);
            sum += x[j];
        }
        for (std::size_t j = 0; j < cols; ++j) x[j] /= sum;
        loss += std::log(sum) + mx - tl.data[r * cols + static_cast<std::size_t>(targets[r])];
    }
    loss /= static_cast<double>(rows);
    return push(Tensor::scalar(loss), [logits, targets, probs = std::move(probs), rows,
                                       cols](Tape& t, const Tensor& g) {
        Tensor gl = probs;
        const double scale = g.data[0] / static_cast<double>(rows);
        for (std::size_t r = 0; r < rows; ++r) {
            for (std::size_t j = 0; j < cols; ++j) gl.data[r * cols + j] *= scale;
            gl.data[r * cols + static_cast<std::size_t>(targets[r])] -= scale;
        }
        t.accum(logits, gl);
    });
}

Tape::Id Tape::bce_with_logits(Id logits, const std::vector<double>& labels) {
    const Tensor& tl = val(logits);
    if (tl.size() != labels.size())
        throw ShapeMismatch("bce_with_logits: " + std::to_string(labels.size()) +
                            " labels for logits " + tl.shape_str());
    const double n = static_cast<double>(tl.size());
    double loss = 0.0;
    for (std::size_t i = 0; i < tl.size(); ++i) {
        const double z = tl.data[i];
        loss += labels[i] * softplus(-z) + (1.0 - labels[i]) * softplus(z);
    }
    return push(Tensor::scalar(loss / n), [logits, labels, n](Tape& t, const Tensor& g) {
        const Tensor& vz = t.val(logits);
        Tensor gz = vz;
        for (std::size_t i = 0; i < gz.size(); ++i)
            gz.data[i] = (stable_sigmoid(vz.data[i]) - labels[i]) / n * g.data[0];
        t.accum(logits, gz);
    });
}

} // namespace pw2ss::nn
