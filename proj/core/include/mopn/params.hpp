#ifndef MOPN_PARAMS_HPP
#define MOPN_PARAMS_HPP

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "mopn/rng.hpp"
#include "mopn/tensor.hpp"

namespace mopn {

/// Named parameter tensors with paired gradient accumulators and Adam
/// moment buffers. Shapes are fixed after construction; updates follow a
/// single-writer contract.
class ParamStore {
  public:
    std::size_t add(const std::string& name, std::size_t rows, std::size_t cols);

    std::size_t count() const { return values_.size(); }
    std::size_t index_of(const std::string& name) const;
    bool has(const std::string& name) const { return index_.count(name) != 0; }
    const std::string& name(std::size_t i) const { return names_[i]; }

    Tensor& value(std::size_t i) { return values_[i]; }
    const Tensor& value(std::size_t i) const { return values_[i]; }
    Tensor& value(const std::string& name) { return values_[index_of(name)]; }
    const Tensor& value(const std::string& name) const { return values_[index_of(name)]; }

    Tensor& grad(std::size_t i) { return grads_[i]; }
    const Tensor& grad(std::size_t i) const { return grads_[i]; }
    Tensor& grad(const std::string& name) { return grads_[index_of(name)]; }

    void zero_grads();

    /// Total number of scalar parameters.
    std::size_t scalar_count() const;

    /// A fresh gradient sink with one zeroed tensor per parameter, for
    /// thread-local accumulation.
    std::vector<Tensor> make_grad_sink() const;
    void accumulate(const std::vector<Tensor>& sink);

    /// Xavier-uniform init of every parameter, in registration order.
    /// Bound is sqrt(6 / (fan_in + fan_out)) with fans = (rows, cols);
    /// bias vectors (cols == 1 with rows treated as fan) use the same rule.
    void init_xavier(Rng& rng);

  private:
    std::vector<std::string> names_;
    std::vector<Tensor> values_;
    std::vector<Tensor> grads_;
    std::vector<Tensor> adam_m_;
    std::vector<Tensor> adam_v_;
    std::uint64_t adam_t_ = 0;
    std::unordered_map<std::string, std::size_t> index_;

    friend void adam_step(ParamStore&, double, double, double, double);
};

/// High-momentum defaults: policy-gradient batches here are noisy
/// (per-batch gradient signal-to-noise well under 1), so the first moment
/// averages ~100 batches to keep the update direction coherent within
/// short desk-scale step budgets.
struct AdamConfig {
    double lr = 1e-4;
    double beta1 = 0.99;
    double beta2 = 0.9999;
    double eps = 1e-8;
};

/// One bias-corrected Adam update from the current gradients; gradients
/// are zeroed afterwards.
void adam_step(ParamStore& store, double lr, double beta1 = 0.99,
               double beta2 = 0.9999, double eps = 1e-8);

/// Standalone Xavier-uniform tensor (used by tests and custom layers).
Tensor xavier_init(std::size_t rows, std::size_t cols, Rng& rng);

}  // namespace mopn

#endif
