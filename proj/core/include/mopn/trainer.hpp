#ifndef MOPN_TRAINER_HPP
#define MOPN_TRAINER_HPP

#include <functional>
#include <optional>
#include <span>

#include "mopn/checkpoint.hpp"

namespace mopn {

enum class Strategy { GTS, TSRM, TSTL };

Strategy strategy_from_name(const std::string& name);
const std::string& strategy_name(Strategy s);

struct TrainConfig {
    ProblemKind kind = ProblemKind::from_tag(ProblemTag::T1O2);
    std::size_t scale = 40;          // target problem scale n
    std::size_t rm_scale = 40;       // dataset scale used by TS-RM
    std::size_t batch = 200;         // N
    double lr = 1e-4;
    std::size_t epochs = 1;
    std::size_t dataset_size = 0;    // LIns per epoch
    Strategy strategy = Strategy::GTS;
    std::uint64_t seed = 0;
    std::size_t embed = 128;
    std::size_t critic_h1 = 128;
    std::size_t critic_h2 = 20;
    std::size_t threads = 1;
    AdamConfig adam{};

    /// Dataset scale actually trained on for this strategy.
    std::size_t train_scale() const {
        return strategy == Strategy::TSRM ? rm_scale : scale;
    }
};

/// Seeded on-the-fly stream of leaf instances: uniform [0,1] features and
/// a fresh uniform simplex weight vector per LIns. Item i is a pure
/// function of (spec, i), so streaming order does not matter.
class LeafDataset {
  public:
    LeafDataset(ProblemKind kind, std::size_t n, std::uint64_t seed, std::size_t count)
        : kind_(std::move(kind)), n_(n), seed_(seed), count_(count) {}

    std::size_t size() const { return count_; }
    LeafInstance make(std::size_t index) const;

  private:
    ProblemKind kind_;
    std::size_t n_;
    std::uint64_t seed_;
    std::size_t count_;
};

struct BatchStats {
    double mean_cost = 0.0;
    double mean_abs_advantage = 0.0;
};

struct EpochRecord {
    std::size_t epoch = 0;
    double mean_cost = 0.0;
    double mean_abs_advantage = 0.0;
    double seconds = 0.0;
};

/// Expected scalarized cost of a uniformly random tour on random [0,1]
/// instances of this kind: n times the mean of the per-objective expected
/// edge costs (uniform simplex weights contribute 1/M each).
double expected_random_tour_cost(const ProblemKind& kind, std::size_t n);

/// One actor-critic policy-gradient step on a batch: sample a tour per
/// LIns, advantage = scalarized cost minus detached critic baseline, then
/// one Adam step each for the actor and the critic.
BatchStats train_batch(std::span<const LeafInstance> batch, ActorModel& actor,
                       CriticModel& critic, const TrainConfig& cfg,
                       std::uint64_t sample_seed_base);

using EpochCallback = std::function<void(const EpochRecord&)>;

/// Epoch loop over the seeded dataset stream for cfg.train_scale().
std::vector<EpochRecord> train_run(ActorModel& actor, CriticModel& critic,
                                   const TrainConfig& cfg,
                                   const EpochCallback& on_epoch = {});

struct TrainedModels {
    ActorModel actor;
    CriticModel critic;
    std::vector<EpochRecord> log;
};

/// GTS / TS-RM train a freshly initialized model at the strategy's scale;
/// TS-TL continues from `init` (required, matching kind) at the target
/// scale.
TrainedModels train_strategy(const TrainConfig& cfg, const Checkpoint* init = nullptr,
                             const EpochCallback& on_epoch = {});

std::string epoch_log_csv(std::span<const EpochRecord> records);

}  // namespace mopn

#endif
