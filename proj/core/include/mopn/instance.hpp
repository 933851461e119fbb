#ifndef MOPN_INSTANCE_HPP
#define MOPN_INSTANCE_HPP

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "mopn/rng.hpp"
#include "mopn/tensor.hpp"

namespace mopn {

enum class ProblemTag : std::uint8_t { T1O2, T2O2, T2O3 };

/// One of the three supported MOTSP flavours. Determines the objective
/// count, the per-objective raw feature dimensions and the encoder input
/// width D_problem = M * d_max + M.
struct ProblemKind {
    ProblemTag tag;
    std::size_t objective_count;                 // M
    std::vector<std::size_t> feature_dims;       // per objective

    static ProblemKind from_tag(ProblemTag tag);
    static ProblemKind from_name(const std::string& name);

    const std::string& name() const;
    std::size_t d_max() const;
    std::size_t raw_width() const;      // sum of feature_dims
    std::size_t input_width() const;    // D_problem
    /// Offset of objective m's feature block within a raw feature row.
    std::size_t feature_offset(std::size_t m) const;

    bool operator==(const ProblemKind& o) const { return tag == o.tag; }
};

struct WeightVector {
    std::vector<double> w;

    WeightVector() = default;
    /// Validates nonnegativity and that components sum to 1.
    explicit WeightVector(std::vector<double> values);

    std::size_t size() const { return w.size(); }
    double operator[](std::size_t i) const { return w[i]; }

    /// Uniform draw on the simplex via gaps between sorted uniforms.
    static WeightVector random(std::size_t m, Rng& rng);
};

struct Tour {
    std::vector<std::size_t> order;

    bool is_permutation_of(std::size_t n) const;
};

struct ObjectiveVector {
    std::vector<double> c;

    std::size_t size() const { return c.size(); }
    double operator[](std::size_t i) const { return c[i]; }
};

/// Raw city-feature matrix of one MOTSP instance; all features in [0,1].
class RootInstance {
  public:
    RootInstance(ProblemKind kind, Tensor features);

    const ProblemKind& kind() const { return kind_; }
    std::size_t n() const { return features_.rows(); }
    const Tensor& features() const { return features_; }

    /// Cost of edge (i, j) under objective m: Euclidean distance for
    /// 2-D coordinate objectives, absolute difference for altitude.
    double edge_cost(std::size_t m, std::size_t i, std::size_t j) const;

    std::string to_json() const;
    static RootInstance from_json(const std::string& text);

  private:
    ProblemKind kind_;
    Tensor features_;
};

/// Encoder input matrix: per-city feature blocks padded to d_max with the
/// constant 1, followed by the weight vector in every row.
struct LeafInstance {
    Tensor matrix;
    std::shared_ptr<const RootInstance> source;
    WeightVector weight;
};

RootInstance generate_random_rins(const ProblemKind& kind, std::size_t n, std::uint64_t seed);

LeafInstance build_leaf(std::shared_ptr<const RootInstance> rins, WeightVector w);

ObjectiveVector tour_objective(const RootInstance& rins, const Tour& tour);

double scalarized_cost(const ObjectiveVector& c, const WeightVector& w);

}  // namespace mopn

#endif
