#ifndef MOPN_ACTOR_HPP
#define MOPN_ACTOR_HPP

#include <optional>

#include "mopn/instance.hpp"
#include "mopn/tape.hpp"

namespace mopn {

/// GRU cell parameters as tape nodes. Gates:
///   z = sigmoid(Wz x + Uz h + bz)
///   r = sigmoid(Wr x + Ur h + br)
///   hc = tanh(Wh x + Uh (r*h) + bh)
///   h' = (1-z)*h + z*hc
struct GruNodes {
    Tape::Id Wz, Uz, bz, Wr, Ur, br, Wh, Uh, bh;
};

Tape::Id gru_cell(Tape& tape, const GruNodes& p, Tape::Id x, Tape::Id h_prev);

/// The pointer-network actor: kernel-size-1 conv encoder, one-layer GRU
/// decoder and the two-stage attention layer.
struct ActorModel {
    ProblemKind kind;
    std::size_t embed = 128;  // l
    ParamStore params;

    static ActorModel create(const ProblemKind& kind, std::size_t embed, Rng& rng);

    std::size_t input_width() const { return kind.input_width(); }
};

enum class DecodeMode { Greedy, Sample };

struct RolloutResult {
    Tour tour;
    double log_prob = 0.0;
    /// Per-step selection distributions; filled only when requested.
    std::vector<std::vector<double>> step_probs;
};

/// Node embeddings, one row per city (n x l).
Tape::Id taped_encode(Tape& tape, const ActorModel& model, Tape::Id leaf_matrix);
Tensor encode(const LeafInstance& leaf, const ActorModel& model);

/// One decoder step: returns the new hidden state d_t.
Tape::Id decode_step(Tape& tape, const ActorModel& model, Tape::Id input, Tape::Id hidden);

/// Selection distribution over cities given context embedding e and
/// decoding vector d_t; visited cities get probability 0.
Tape::Id attend(Tape& tape, const ActorModel& model, Tape::Id e, Tape::Id d,
                const std::vector<std::uint8_t>& visited);

/// Full rollout on the tape; returns the summed log-probability node.
/// Greedy mode ignores rng and breaks ties toward the lowest city index.
Tape::Id taped_rollout(Tape& tape, const ActorModel& model, Tape::Id leaf_matrix,
                       DecodeMode mode, Rng* rng, RolloutResult& out,
                       bool record_step_probs = false);

RolloutResult rollout(const LeafInstance& leaf, const ActorModel& model, DecodeMode mode,
                      Rng* rng = nullptr, bool record_step_probs = false);

}  // namespace mopn

#endif
