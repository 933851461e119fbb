#include "mopn/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace mopn {

Tensor::Tensor(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) {
        throw ShapeError("tensor data length does not match rows*cols");
    }
}

Tensor Tensor::column(std::vector<double> values) {
    const std::size_t n = values.size();
    return Tensor(n, 1, std::move(values));
}

void Tensor::fill(double v) { std::fill(data_.begin(), data_.end(), v); }

void Tensor::add_in_place(const Tensor& other) {
    if (!same_shape(other)) throw ShapeError("add_in_place: shape mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
}

bool Tensor::all_finite() const {
    return std::all_of(data_.begin(), data_.end(),
                       [](double v) { return std::isfinite(v); });
}

namespace {

// out(i,j) += sum_k a(i,k) b(k,j); ikj order keeps the inner loop contiguous.
void mm_acc(std::size_t n, std::size_t k, std::size_t m,
            std::span<const double> a, std::span<const double> b,
            std::span<double> out) {
    for (std::size_t i = 0; i < n; ++i) {
        const double* arow = a.data() + i * k;
        double* orow = out.data() + i * m;
        for (std::size_t p = 0; p < k; ++p) {
            const double av = arow[p];
            if (av == 0.0) continue;
            const double* brow = b.data() + p * m;
            for (std::size_t j = 0; j < m; ++j) orow[j] += av * brow[j];
        }
    }
}

}  // namespace

void matmul_acc(const Tensor& a, const Tensor& b, Tensor& out) {
    if (a.cols() != b.rows() || out.rows() != a.rows() || out.cols() != b.cols()) {
        throw ShapeError("matmul: shape mismatch");
    }
    mm_acc(a.rows(), a.cols(), b.cols(), a.data(), b.data(), out.data());
}

void matmul_ta_acc(const Tensor& a, const Tensor& b, Tensor& out) {
    if (a.rows() != b.rows() || out.rows() != a.cols() || out.cols() != b.cols()) {
        throw ShapeError("matmul_ta: shape mismatch");
    }
    // out(i,j) += sum_k a(k,i) b(k,j)
    const std::size_t n = a.cols(), kk = a.rows(), m = b.cols();
    for (std::size_t p = 0; p < kk; ++p) {
        const double* arow = a.data().data() + p * n;
        const double* brow = b.data().data() + p * m;
        for (std::size_t i = 0; i < n; ++i) {
            const double av = arow[i];
            if (av == 0.0) continue;
            double* orow = out.data().data() + i * m;
            for (std::size_t j = 0; j < m; ++j) orow[j] += av * brow[j];
        }
    }
}

void matmul_tb_acc(const Tensor& a, const Tensor& b, Tensor& out) {
    if (a.cols() != b.cols() || out.rows() != a.rows() || out.cols() != b.rows()) {
        throw ShapeError("matmul_tb: shape mismatch");
    }
    // out(i,j) += sum_k a(i,k) b(j,k): dot of contiguous rows.
    const std::size_t n = a.rows(), kk = a.cols(), m = b.rows();
    for (std::size_t i = 0; i < n; ++i) {
        const double* arow = a.data().data() + i * kk;
        double* orow = out.data().data() + i * m;
        for (std::size_t j = 0; j < m; ++j) {
            const double* brow = b.data().data() + j * kk;
            double acc = 0.0;
            for (std::size_t p = 0; p < kk; ++p) acc += arow[p] * brow[p];
            orow[j] += acc;
        }
    }
}

Tensor matmul(const Tensor& a, const Tensor& b) {
    Tensor out(a.rows(), b.cols());
    matmul_acc(a, b, out);
    return out;
}

Tensor matmul_ta(const Tensor& a, const Tensor& b) {
    Tensor out(a.cols(), b.cols());
    matmul_ta_acc(a, b, out);
    return out;
}

Tensor matmul_tb(const Tensor& a, const Tensor& b) {
    Tensor out(a.rows(), b.rows());
    matmul_tb_acc(a, b, out);
    return out;
}

}  // namespace mopn
