#ifndef MOPN_CRITIC_HPP
#define MOPN_CRITIC_HPP

#include "mopn/instance.hpp"
#include "mopn/tape.hpp"

namespace mopn {

/// Four kernel-size-1 conv layers (D -> h1 -> h2 -> h2 -> 1), ReLU
/// between layers, per-city outputs reduced by arithmetic mean.
struct CriticModel {
    ProblemKind kind;
    std::size_t h1 = 128;
    std::size_t h2 = 20;
    ParamStore params;

    static CriticModel create(const ProblemKind& kind, std::size_t h1, std::size_t h2, Rng& rng);
};

Tape::Id taped_critic_value(Tape& tape, const CriticModel& model, Tape::Id leaf_matrix);

double critic_value(const LeafInstance& leaf, const CriticModel& model);

}  // namespace mopn

#endif
