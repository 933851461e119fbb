#include "mopn/tape.hpp"

#include <cmath>
#include <limits>

namespace mopn {

Tape::Id Tape::param(std::size_t pidx) {
    if (store_ == nullptr) throw InvalidArgument("tape has no parameter store");
    if (param_node_.size() < store_->count()) param_node_.assign(store_->count(), -1);
    if (param_node_[pidx] >= 0) return static_cast<Id>(param_node_[pidx]);
    Node n;
    n.val = store_->value(pidx);
    n.pidx = static_cast<int>(pidx);
    const Id id = push(std::move(n));
    param_node_[pidx] = static_cast<std::int64_t>(id);
    return id;
}

Tape::Id Tape::param(const std::string& name) { return param(store_->index_of(name)); }

Tape::Id Tape::constant(Tensor t) {
    Node n;
    n.val = std::move(t);
    return push(std::move(n));
}

Tape::Id Tape::matmul(Id a, Id b) {
    Node n;
    n.val = mopn::matmul(val(a), val(b));
    n.op = Op::Matmul; n.in0 = a; n.in1 = b;
    return push(std::move(n));
}

Tape::Id Tape::matmul_ta(Id a, Id b) {
    Node n;
    n.val = mopn::matmul_ta(val(a), val(b));
    n.op = Op::MatmulTa; n.in0 = a; n.in1 = b;
    return push(std::move(n));
}

Tape::Id Tape::matmul_tb(Id a, Id b) {
    Node n;
    n.val = mopn::matmul_tb(val(a), val(b));
    n.op = Op::MatmulTb; n.in0 = a; n.in1 = b;
    return push(std::move(n));
}

Tape::Id Tape::add(Id a, Id b) {
    const Tensor& x = val(a);
    const Tensor& y = val(b);
    if (!x.same_shape(y)) throw ShapeError("add: shape mismatch");
    Node n;
    n.val = x;
    n.val.add_in_place(y);
    n.op = Op::Add; n.in0 = a; n.in1 = b;
    return push(std::move(n));
}

Tape::Id Tape::sub(Id a, Id b) {
    const Tensor& x = val(a);
    const Tensor& y = val(b);
    if (!x.same_shape(y)) throw ShapeError("sub: shape mismatch");
    Node n;
    n.val = x;
    for (std::size_t i = 0; i < n.val.size(); ++i) n.val[i] -= y[i];
    n.op = Op::Sub; n.in0 = a; n.in1 = b;
    return push(std::move(n));
}

Tape::Id Tape::mul(Id a, Id b) {
    const Tensor& x = val(a);
    const Tensor& y = val(b);
    if (!x.same_shape(y)) throw ShapeError("mul: shape mismatch");
    Node n;
    n.val = x;
    for (std::size_t i = 0; i < n.val.size(); ++i) n.val[i] *= y[i];
    n.op = Op::Mul; n.in0 = a; n.in1 = b;
    return push(std::move(n));
}

Tape::Id Tape::affine(Id a, double scale, double shift) {
    Node n;
    n.val = val(a);
    for (std::size_t i = 0; i < n.val.size(); ++i) n.val[i] = scale * n.val[i] + shift;
    n.op = Op::Affine; n.in0 = a; n.s0 = scale;
    return push(std::move(n));
}

Tape::Id Tape::add_row_broadcast(Id m, Id v) {
    const Tensor& x = val(m);
    const Tensor& y = val(v);
    if (y.cols() != 1 || y.rows() != x.cols()) {
        throw ShapeError("add_row_broadcast: shape mismatch");
    }
    Node n;
    n.val = x;
    for (std::size_t r = 0; r < x.rows(); ++r)
        for (std::size_t c = 0; c < x.cols(); ++c) n.val(r, c) += y[c];
    n.op = Op::AddRowBroadcast; n.in0 = m; n.in1 = v;
    return push(std::move(n));
}

Tape::Id Tape::tanh(Id a) {
    Node n;
    n.val = val(a);
    for (std::size_t i = 0; i < n.val.size(); ++i) n.val[i] = std::tanh(n.val[i]);
    n.op = Op::Tanh; n.in0 = a;
    return push(std::move(n));
}

Tape::Id Tape::sigmoid(Id a) {
    Node n;
    n.val = val(a);
    for (std::size_t i = 0; i < n.val.size(); ++i) n.val[i] = 1.0 / (1.0 + std::exp(-n.val[i]));
    n.op = Op::Sigmoid; n.in0 = a;
    return push(std::move(n));
}

Tape::Id Tape::relu(Id a) {
    Node n;
    n.val = val(a);
    for (std::size_t i = 0; i < n.val.size(); ++i) n.val[i] = n.val[i] > 0.0 ? n.val[i] : 0.0;
    n.op = Op::Relu; n.in0 = a;
    return push(std::move(n));
}

Tape::Id Tape::cols(Id m, std::size_t c0, std::size_t count) {
    const Tensor& x = val(m);
    if (c0 + count > x.cols()) throw ShapeError("cols: slice out of range");
    Node n;
    n.val = Tensor(x.rows(), count);
    for (std::size_t r = 0; r < x.rows(); ++r)
        for (std::size_t c = 0; c < count; ++c) n.val(r, c) = x(r, c0 + c);
    n.op = Op::Cols; n.in0 = m; n.aux0 = c0; n.aux1 = count;
    return push(std::move(n));
}

Tape::Id Tape::row_as_col(Id m, std::size_t r) {
    const Tensor& x = val(m);
    if (r >= x.rows()) throw ShapeError("row_as_col: row out of range");
    Node n;
    n.val = Tensor(x.cols(), 1);
    for (std::size_t c = 0; c < x.cols(); ++c) n.val[c] = x(r, c);
    n.op = Op::RowAsCol; n.in0 = m; n.aux0 = r;
    return push(std::move(n));
}

Tape::Id Tape::softmax(Id v) {
    const Tensor& x = val(v);
    if (x.cols() != 1) throw ShapeError("softmax: expected column vector");
    Node n;
    n.val = Tensor(x.rows(), 1);
    double mx = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < x.rows(); ++i) mx = std::max(mx, x[i]);
    double z = 0.0;
    for (std::size_t i = 0; i < x.rows(); ++i) {
        n.val[i] = std::exp(x[i] - mx);
        z += n.val[i];
    }
    for (std::size_t i = 0; i < x.rows(); ++i) n.val[i] /= z;
    n.op = Op::Softmax; n.in0 = v;
    return push(std::move(n));
}

Tape::Id Tape::masked_softmax(Id v, const std::vector<std::uint8_t>& masked) {
    const Tensor& x = val(v);
    if (x.cols() != 1) throw ShapeError("masked_softmax: expected column vector");
    if (masked.size() != x.rows()) throw ShapeError("masked_softmax: mask length mismatch");
    Node n;
    n.val = Tensor(x.rows(), 1);
    double mx = -std::numeric_limits<double>::infinity();
    bool any = false;
    for (std::size_t i = 0; i < x.rows(); ++i) {
        if (!masked[i]) {
            mx = std::max(mx, x[i]);
            any = true;
        }
    }
    if (!any) throw InvalidArgument("masked_softmax: empty support");
    double z = 0.0;
    for (std::size_t i = 0; i < x.rows(); ++i) {
        if (masked[i]) continue;
        n.val[i] = std::exp(x[i] - mx);
        z += n.val[i];
    }
    for (std::size_t i = 0; i < x.rows(); ++i) n.val[i] /= z;
    n.op = Op::MaskedSoftmax; n.in0 = v; n.mask = masked;
    return push(std::move(n));
}

Tape::Id Tape::pick(Id v, std::size_t i) {
    const Tensor& x = val(v);
    if (i >= x.size()) throw ShapeError("pick: index out of range");
    Node n;
    n.val = Tensor(1, 1);
    n.val[0] = x[i];
    n.op = Op::Pick; n.in0 = v; n.aux0 = i;
    return push(std::move(n));
}

Tape::Id Tape::log(Id a) {
    Node n;
    n.val = val(a);
    for (std::size_t i = 0; i < n.val.size(); ++i) n.val[i] = std::log(n.val[i]);
    n.op = Op::Log; n.in0 = a;
    return push(std::move(n));
}

Tape::Id Tape::square(Id a) {
    Node n;
    n.val = val(a);
    for (std::size_t i = 0; i < n.val.size(); ++i) n.val[i] *= n.val[i];
    n.op = Op::Square; n.in0 = a;
    return push(std::move(n));
}

Tape::Id Tape::sum_all(Id a) {
    const Tensor& x = val(a);
    Node n;
    n.val = Tensor(1, 1);
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i];
    n.val[0] = s;
    n.op = Op::SumAll; n.in0 = a;
    return push(std::move(n));
}

Tape::Id Tape::mean_all(Id a) {
    const Tensor& x = val(a);
    if (x.size() == 0) throw ShapeError("mean_all: empty tensor");
    Node n;
    n.val = Tensor(1, 1);
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i];
    n.val[0] = s / static_cast<double>(x.size());
    n.op = Op::MeanAll; n.in0 = a;
    return push(std::move(n));
}

Tensor& Tape::ensure_grad(Id id) {
    Node& n = nodes_[id];
    if (n.grad.empty()) n.grad = Tensor(n.val.rows(), n.val.cols());
    return n.grad;
}

void Tape::backward(Id root, double seed, std::vector<Tensor>& param_grads) {
    if (root >= nodes_.size()) throw InvalidArgument("backward: root not on tape");
    if (nodes_[root].val.size() != 1) throw InvalidArgument("backward: root is not a scalar");
    ensure_grad(root)[0] = seed;

    for (std::size_t idx = root + 1; idx-- > 0;) {
        Node& n = nodes_[idx];
        if (n.grad.empty()) continue;
        const Tensor& g = n.grad;
        switch (n.op) {
            case Op::Leaf:
                break;
            case Op::Matmul:
                matmul_tb_acc(g, nodes_[n.in1].val, ensure_grad(n.in0));
                matmul_ta_acc(nodes_[n.in0].val, g, ensure_grad(n.in1));
                break;
            case Op::MatmulTa:
                matmul_tb_acc(nodes_[n.in1].val, g, ensure_grad(n.in0));
                matmul_acc(nodes_[n.in0].val, g, ensure_grad(n.in1));
                break;
            case Op::MatmulTb:
                matmul_acc(g, nodes_[n.in1].val, ensure_grad(n.in0));
                matmul_ta_acc(g, nodes_[n.in0].val, ensure_grad(n.in1));
                break;
            case Op::Add: {
                ensure_grad(n.in0).add_in_place(g);
                ensure_grad(n.in1).add_in_place(g);
                break;
            }
            case Op::Sub: {
                ensure_grad(n.in0).add_in_place(g);
                Tensor& gb = ensure_grad(n.in1);
                for (std::size_t i = 0; i < g.size(); ++i) gb[i] -= g[i];
                break;
            }
            case Op::Mul: {
                Tensor& ga = ensure_grad(n.in0);
                Tensor& gb = ensure_grad(n.in1);
                const Tensor& a = nodes_[n.in0].val;
                const Tensor& b = nodes_[n.in1].val;
                for (std::size_t i = 0; i < g.size(); ++i) {
                    ga[i] += g[i] * b[i];
                    gb[i] += g[i] * a[i];
                }
                break;
            }
            case Op::Affine: {
                Tensor& ga = ensure_grad(n.in0);
                for (std::size_t i = 0; i < g.size(); ++i) ga[i] += n.s0 * g[i];
                break;
            }
            case Op::AddRowBroadcast: {
                ensure_grad(n.in0).add_in_place(g);
                Tensor& gv = ensure_grad(n.in1);
                for (std::size_t r = 0; r < g.rows(); ++r)
                    for (std::size_t c = 0; c < g.cols(); ++c) gv[c] += g(r, c);
                break;
            }
            case Op::Tanh: {
                Tensor& ga = ensure_grad(n.in0);
                for (std::size_t i = 0; i < g.size(); ++i)
                    ga[i] += g[i] * (1.0 - n.val[i] * n.val[i]);
                break;
            }
            case Op::Sigmoid: {
                Tensor& ga = ensure_grad(n.in0);
                for (std::size_t i = 0; i < g.size(); ++i)
                    ga[i] += g[i] * n.val[i] * (1.0 - n.val[i]);
                break;
            }
            case Op::Relu: {
                Tensor& ga = ensure_grad(n.in0);
                const Tensor& x = nodes_[n.in0].val;
                for (std::size_t i = 0; i < g.size(); ++i)
                    if (x[i] > 0.0) ga[i] += g[i];
                break;
            }
            case Op::Cols: {
                Tensor& gm = ensure_grad(n.in0);
                for (std::size_t r = 0; r < g.rows(); ++r)
                    for (std::size_t c = 0; c < g.cols(); ++c) gm(r, n.aux0 + c) += g(r, c);
                break;
            }
            case Op::RowAsCol: {
                Tensor& gm = ensure_grad(n.in0);
                for (std::size_t c = 0; c < g.size(); ++c) gm(n.aux0, c) += g[c];
                break;
            }
            case Op::Softmax: {
                Tensor& gx = ensure_grad(n.in0);
                double dot = 0.0;
                for (std::size_t i = 0; i < g.size(); ++i) dot += g[i] * n.val[i];
                for (std::size_t i = 0; i < g.size(); ++i)
                    gx[i] += n.val[i] * (g[i] - dot);
                break;
            }
            case Op::MaskedSoftmax: {
                Tensor& gx = ensure_grad(n.in0);
                double dot = 0.0;
                for (std::size_t i = 0; i < g.size(); ++i)
                    if (!n.mask[i]) dot += g[i] * n.val[i];
                for (std::size_t i = 0; i < g.size(); ++i)
                    if (!n.mask[i]) gx[i] += n.val[i] * (g[i] - dot);
                break;
            }
            case Op::Pick:
                ensure_grad(n.in0)[n.aux0] += g[0];
                break;
            case Op::Log: {
                Tensor& ga = ensure_grad(n.in0);
                const Tensor& x = nodes_[n.in0].val;
                for (std::size_t i = 0; i < g.size(); ++i) ga[i] += g[i] / x[i];
                break;
            }
            case Op::Square: {
                Tensor& ga = ensure_grad(n.in0);
                const Tensor& x = nodes_[n.in0].val;
                for (std::size_t i = 0; i < g.size(); ++i) ga[i] += 2.0 * x[i] * g[i];
                break;
            }
            case Op::SumAll: {
                Tensor& ga = ensure_grad(n.in0);
                for (std::size_t i = 0; i < ga.size(); ++i) ga[i] += g[0];
                break;
            }
            case Op::MeanAll: {
                Tensor& ga = ensure_grad(n.in0);
                const double s = g[0] / static_cast<double>(ga.size());
                for (std::size_t i = 0; i < ga.size(); ++i) ga[i] += s;
                break;
            }
        }
        if (n.pidx >= 0) param_grads[static_cast<std::size_t>(n.pidx)].add_in_place(g);
    }
}

}  // namespace mopn
