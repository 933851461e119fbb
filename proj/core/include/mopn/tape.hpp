#ifndef MOPN_TAPE_HPP
#define MOPN_TAPE_HPP

#include <cstdint>
#include <vector>

#include "mopn/params.hpp"
#include "mopn/tensor.hpp"

namespace mopn {

/// Reverse-mode autodiff tape over Tensor values. One tape records one
/// forward pass; the reverse sweep visits operations in exact reverse
/// order of recording. Vectors are column tensors (k x 1).
class Tape {
  public:
    using Id = std::size_t;

    explicit Tape(const ParamStore* store = nullptr) : store_(store) {}

    /// Leaf referencing a ParamStore slot (memoized per tape).
    Id param(std::size_t pidx);
    Id param(const std::string& name);
    Id constant(Tensor t);

    const Tensor& val(Id id) const { return nodes_[id].val; }
    std::size_t node_count() const { return nodes_.size(); }

    Id matmul(Id a, Id b);     // A * B
    Id matmul_ta(Id a, Id b);  // A^T * B
    Id matmul_tb(Id a, Id b);  // A * B^T
    Id add(Id a, Id b);
    Id sub(Id a, Id b);
    Id mul(Id a, Id b);  // elementwise
    Id affine(Id a, double scale, double shift);
    Id add_const(Id a, double c) { return affine(a, 1.0, c); }
    /// m (n x l) plus column vector v (l x 1) added to every row.
    Id add_row_broadcast(Id m, Id v);
    Id tanh(Id a);
    Id sigmoid(Id a);
    Id relu(Id a);
    /// Column slice [c0, c0+count) of a matrix.
    Id cols(Id m, std::size_t c0, std::size_t count);
    /// Row r of a matrix as a column vector.
    Id row_as_col(Id m, std::size_t r);
    /// Numerically stable softmax over a column vector.
    Id softmax(Id v);
    /// Softmax restricted to entries where masked[i] is false; masked
    /// entries get probability exactly 0. Throws if everything is masked.
    Id masked_softmax(Id v, const std::vector<std::uint8_t>& masked);
    Id pick(Id v, std::size_t i);  // 1 x 1
    Id log(Id a);                  // elementwise
    Id square(Id a);
    Id sum_all(Id a);   // 1 x 1
    Id mean_all(Id a);  // 1 x 1

    /// Reverse sweep from a scalar root seeded with `seed`. Parameter-leaf
    /// gradients are accumulated into `param_grads` (one tensor per
    /// ParamStore slot, as from ParamStore::make_grad_sink).
    void backward(Id root, double seed, std::vector<Tensor>& param_grads);

  private:
    enum class Op : std::uint8_t {
        Leaf, Matmul, MatmulTa, MatmulTb, Add, Sub, Mul, Affine,
        AddRowBroadcast, Tanh, Sigmoid, Relu, Cols, RowAsCol,
        Softmax, MaskedSoftmax, Pick, Log, Square, SumAll, MeanAll,
    };

    struct Node {
        Tensor val;
        Tensor grad;  // allocated lazily during backward
        Op op = Op::Leaf;
        Id in0 = 0, in1 = 0;
        std::size_t aux0 = 0, aux1 = 0;
        double s0 = 0.0;
        int pidx = -1;
        std::vector<std::uint8_t> mask;  // MaskedSoftmax only
    };

    Id push(Node n) {
        nodes_.push_back(std::move(n));
        return nodes_.size() - 1;
    }
    Tensor& ensure_grad(Id id);

    const ParamStore* store_;
    std::vector<Node> nodes_;
    std::vector<std::int64_t> param_node_;  // pidx -> node id memo (-1 none)
};

}  // namespace mopn

#endif
