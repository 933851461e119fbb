#include "mopn/params.hpp"

#include <cmath>

namespace mopn {

std::size_t ParamStore::add(const std::string& name, std::size_t rows, std::size_t cols) {
    if (index_.count(name)) throw InvalidArgument("duplicate parameter name: " + name);
    if (rows == 0 || cols == 0) throw InvalidArgument("parameter with zero dimension: " + name);
    const std::size_t i = values_.size();
    names_.push_back(name);
    values_.emplace_back(rows, cols);
    grads_.emplace_back(rows, cols);
    adam_m_.emplace_back(rows, cols);
    adam_v_.emplace_back(rows, cols);
    index_.emplace(name, i);
    return i;
}

std::size_t ParamStore::index_of(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw InvalidArgument("unknown parameter: " + name);
    return it->second;
}

void ParamStore::zero_grads() {
    for (auto& g : grads_) g.zero();
}

std::size_t ParamStore::scalar_count() const {
    std::size_t n = 0;
    for (const auto& v : values_) n += v.size();
    return n;
}

std::vector<Tensor> ParamStore::make_grad_sink() const {
    std::vector<Tensor> sink;
    sink.reserve(values_.size());
    for (const auto& v : values_) sink.emplace_back(v.rows(), v.cols());
    return sink;
}

void ParamStore::accumulate(const std::vector<Tensor>& sink) {
    if (sink.size() != grads_.size()) throw ShapeError("grad sink size mismatch");
    for (std::size_t i = 0; i < sink.size(); ++i) grads_[i].add_in_place(sink[i]);
}

void ParamStore::init_xavier(Rng& rng) {
    for (auto& v : values_) {
        const double bound = std::sqrt(6.0 / static_cast<double>(v.rows() + v.cols()));
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = rng.uniform(-bound, bound);
    }
}

Tensor xavier_init(std::size_t rows, std::size_t cols, Rng& rng) {
    Tensor t(rows, cols);
    const double bound = std::sqrt(6.0 / static_cast<double>(rows + cols));
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = rng.uniform(-bound, bound);
    return t;
}

void adam_step(ParamStore& store, double lr, double beta1, double beta2, double eps) {
    store.adam_t_ += 1;
    const double t = static_cast<double>(store.adam_t_);
    const double bc1 = 1.0 - std::pow(beta1, t);
    const double bc2 = 1.0 - std::pow(beta2, t);
    for (std::size_t p = 0; p < store.values_.size(); ++p) {
        Tensor& w = store.values_[p];
        Tensor& g = store.grads_[p];
        Tensor& m = store.adam_m_[p];
        Tensor& v = store.adam_v_[p];
        for (std::size_t i = 0; i < w.size(); ++i) {
            m[i] = beta1 * m[i] + (1.0 - beta1) * g[i];
            v[i] = beta2 * v[i] + (1.0 - beta2) * g[i] * g[i];
            const double mhat = m[i] / bc1;
            const double vhat = v[i] / bc2;
            w[i] -= lr * mhat / (std::sqrt(vhat) + eps);
        }
        g.zero();
    }
}

}  // namespace mopn
