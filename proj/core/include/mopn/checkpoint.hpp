#ifndef MOPN_CHECKPOINT_HPP
#define MOPN_CHECKPOINT_HPP

#include <filesystem>
#include <string>

#include "mopn/actor.hpp"
#include "mopn/critic.hpp"

namespace mopn {

struct CheckpointMeta {
    ProblemKind kind = ProblemKind::from_tag(ProblemTag::T1O2);
    std::size_t embed = 128;
    std::size_t critic_h1 = 128;
    std::size_t critic_h2 = 20;
    std::size_t scale = 0;        // training problem scale
    std::string strategy;
    std::size_t epoch = 0;
    std::uint64_t seed = 0;
};

struct Checkpoint {
    CheckpointMeta meta;
    ActorModel actor;
    CriticModel critic;
};

/// Versioned JSON container; parameter values round-trip bit-exactly.
void save_checkpoint(const std::filesystem::path& path, const ActorModel& actor,
                     const CriticModel& critic, const CheckpointMeta& meta);

Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace mopn

#endif
