#ifndef MOPN_TENSOR_HPP
#define MOPN_TENSOR_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "mopn/errors.hpp"

namespace mopn {

/// Dense row-major matrix of doubles. Vectors are column tensors (k x 1).
class Tensor {
  public:
    Tensor() = default;
    Tensor(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}
    Tensor(std::size_t rows, std::size_t cols, std::vector<double> data);

    static Tensor column(std::vector<double> values);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }
    bool empty() const { return data_.empty(); }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    double& operator[](std::size_t i) { return data_[i]; }
    double operator[](std::size_t i) const { return data_[i]; }

    std::span<double> data() { return data_; }
    std::span<const double> data() const { return data_; }

    void fill(double v);
    void zero() { fill(0.0); }

    /// this += other (same shape).
    void add_in_place(const Tensor& other);

    bool same_shape(const Tensor& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_;
    }

    bool all_finite() const;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// C = A * B
Tensor matmul(const Tensor& a, const Tensor& b);
/// C = A^T * B
Tensor matmul_ta(const Tensor& a, const Tensor& b);
/// C = A * B^T
Tensor matmul_tb(const Tensor& a, const Tensor& b);
/// C += A * B, and transposed variants; used by backward passes.
void matmul_acc(const Tensor& a, const Tensor& b, Tensor& out);
void matmul_ta_acc(const Tensor& a, const Tensor& b, Tensor& out);
void matmul_tb_acc(const Tensor& a, const Tensor& b, Tensor& out);

}  // namespace mopn

#endif
