#include "mopn/trainer.hpp"

#include <chrono>
#include <cmath>
#include <sstream>
#include <thread>

namespace mopn {

namespace {
const std::array<std::string, 3> kStrategyNames = {"GTS", "TS-RM", "TS-TL"};
}

Strategy strategy_from_name(const std::string& name) {
    for (std::size_t i = 0; i < kStrategyNames.size(); ++i) {
        if (kStrategyNames[i] == name) return static_cast<Strategy>(i);
    }
    throw InvalidArgument("unknown strategy: " + name + " (expected GTS, TS-RM or TS-TL)");
}

const std::string& strategy_name(Strategy s) {
    return kStrategyNames[static_cast<std::size_t>(s)];
}

LeafInstance LeafDataset::make(std::size_t index) const {
    if (index >= count_) throw InvalidArgument("dataset index out of range");
    Rng rng(mix_seed(seed_, index));
    Tensor feat(n_, kind_.raw_width());
    for (std::size_t i = 0; i < feat.size(); ++i) feat[i] = rng.uniform();
    auto rins = std::make_shared<RootInstance>(kind_, std::move(feat));
    WeightVector w = WeightVector::random(kind_.objective_count, rng);
    return build_leaf(std::move(rins), std::move(w));
}

double expected_random_tour_cost(const ProblemKind& kind, std::size_t n) {
    // E|u - v| for uniform u, v in the unit square is ~0.52140543; for the
    // unit interval it is 1/3.
    constexpr double kSquare = 0.5214054331647207;
    constexpr double kInterval = 1.0 / 3.0;
    double mean_edge = 0.0;
    for (const std::size_t d : kind.feature_dims) {
        mean_edge += d == 2 ? kSquare : kInterval;
    }
    mean_edge /= static_cast<double>(kind.objective_count);
    return static_cast<double>(n) * mean_edge;
}

namespace {

struct WorkerResult {
    std::vector<Tensor> actor_grads;
    std::vector<Tensor> critic_grads;
    double cost_sum = 0.0;
    double abs_adv_sum = 0.0;
    std::string error;
};

void run_chunk(std::span<const LeafInstance> batch, std::size_t begin, std::size_t end,
               const ActorModel& actor, const CriticModel& critic, std::size_t batch_size,
               std::uint64_t sample_seed_base, WorkerResult& res) {
    try {
        res.actor_grads = actor.params.make_grad_sink();
        res.critic_grads = critic.params.make_grad_sink();
        const double inv_n = 1.0 / static_cast<double>(batch_size);
        for (std::size_t k = begin; k < end; ++k) {
            const LeafInstance& leaf = batch[k];
            Rng rng(mix_seed(sample_seed_base, k));

            Tape actor_tape(&actor.params);
            RolloutResult ro;
            const Tape::Id log_prob = taped_rollout(
                actor_tape, actor, actor_tape.constant(leaf.matrix), DecodeMode::Sample, &rng, ro);
            const double cost =
                scalarized_cost(tour_objective(*leaf.source, ro.tour), leaf.weight);

            Tape critic_tape(&critic.params);
            const Tape::Id z = taped_critic_value(critic_tape, critic,
                                                  critic_tape.constant(leaf.matrix));
            const double baseline = critic_tape.val(z)[0];
            const double advantage = cost - baseline;
            if (!std::isfinite(cost) || !std::isfinite(baseline) || !std::isfinite(ro.log_prob)) {
                throw Error("non-finite training signal (cost=" + std::to_string(cost) +
                            ", baseline=" + std::to_string(baseline) +
                            ", log_prob=" + std::to_string(ro.log_prob) + ")");
            }

            // Actor: d/dtheta of (1/N) sum (C - Z) log P, baseline detached.
            actor_tape.backward(log_prob, advantage * inv_n, res.actor_grads);
            // Critic: d/ddelta of (1/N) sum (Z - C)^2.
            const Tape::Id critic_loss = critic_tape.square(critic_tape.add_const(z, -cost));
            critic_tape.backward(critic_loss, inv_n, res.critic_grads);

            res.cost_sum += cost;
            res.abs_adv_sum += std::abs(advantage);
        }
    } catch (const std::exception& e) {
        res.error = e.what();
    }
}

}  // namespace

BatchStats train_batch(std::span<const LeafInstance> batch, ActorModel& actor,
                       CriticModel& critic, const TrainConfig& cfg,
                       std::uint64_t sample_seed_base) {
    if (batch.empty()) throw InvalidArgument("empty training batch");
    const std::size_t nthreads = std::max<std::size_t>(1, std::min(cfg.threads, batch.size()));

    std::vector<WorkerResult> results(nthreads);
    const std::size_t chunk = (batch.size() + nthreads - 1) / nthreads;
    if (nthreads == 1) {
        run_chunk(batch, 0, batch.size(), actor, critic, batch.size(), sample_seed_base,
                  results[0]);
    } else {
        std::vector<std::thread> workers;
        for (std::size_t t = 0; t < nthreads; ++t) {
            const std::size_t b = t * chunk;
            const std::size_t e = std::min(batch.size(), b + chunk);
            workers.emplace_back(run_chunk, batch, b, e, std::cref(actor), std::cref(critic),
                                 batch.size(), sample_seed_base, std::ref(results[t]));
        }
        for (auto& w : workers) w.join();
    }

    BatchStats stats;
    // Merge in chunk order so the reduction is reproducible.
    for (auto& res : results) {
        if (!res.error.empty()) throw Error("training aborted: " + res.error);
        if (res.actor_grads.empty()) continue;
        actor.params.accumulate(res.actor_grads);
        critic.params.accumulate(res.critic_grads);
        stats.mean_cost += res.cost_sum;
        stats.mean_abs_advantage += res.abs_adv_sum;
    }
    stats.mean_cost /= static_cast<double>(batch.size());
    stats.mean_abs_advantage /= static_cast<double>(batch.size());

    adam_step(actor.params, cfg.lr, cfg.adam.beta1, cfg.adam.beta2, cfg.adam.eps);
    adam_step(critic.params, cfg.lr, cfg.adam.beta1, cfg.adam.beta2, cfg.adam.eps);
    return stats;
}

std::vector<EpochRecord> train_run(ActorModel& actor, CriticModel& critic,
                                   const TrainConfig& cfg, const EpochCallback& on_epoch) {
    if (cfg.dataset_size == 0) throw InvalidArgument("dataset_size must be positive");
    if (cfg.batch == 0) throw InvalidArgument("batch size must be positive");
    const LeafDataset dataset(cfg.kind, cfg.train_scale(), mix_seed(cfg.seed, 0xda7a),
                              cfg.dataset_size);
    std::vector<EpochRecord> log;
    for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        const auto t0 = std::chrono::steady_clock::now();
        const std::uint64_t epoch_seed = mix_seed(cfg.seed, 0x5a3e + epoch);
        double cost_sum = 0.0, adv_sum = 0.0;
        std::size_t seen = 0;
        for (std::size_t start = 0; start < dataset.size(); start += cfg.batch) {
            const std::size_t count = std::min(cfg.batch, dataset.size() - start);
            std::vector<LeafInstance> batch;
            batch.reserve(count);
            for (std::size_t i = 0; i < count; ++i) batch.push_back(dataset.make(start + i));
            const BatchStats stats =
                train_batch(batch, actor, critic, cfg, mix_seed(epoch_seed, start));
            cost_sum += stats.mean_cost * static_cast<double>(count);
            adv_sum += stats.mean_abs_advantage * static_cast<double>(count);
            seen += count;
        }
        const auto t1 = std::chrono::steady_clock::now();
        EpochRecord rec;
        rec.epoch = epoch + 1;
        rec.mean_cost = cost_sum / static_cast<double>(seen);
        rec.mean_abs_advantage = adv_sum / static_cast<double>(seen);
        rec.seconds = std::chrono::duration<double>(t1 - t0).count();
        log.push_back(rec);
        if (on_epoch) on_epoch(rec);
    }
    return log;
}

TrainedModels train_strategy(const TrainConfig& cfg, const Checkpoint* init,
                             const EpochCallback& on_epoch) {
    if (cfg.strategy == Strategy::TSTL) {
        if (init == nullptr) {
            throw InvalidArgument("TS-TL requires an initial RM checkpoint");
        }
        if (!(init->meta.kind == cfg.kind)) {
            throw InvalidArgument("TS-TL checkpoint kind " + init->meta.kind.name() +
                                  " does not match configured kind " + cfg.kind.name());
        }
        TrainedModels out{init->actor, init->critic, {}};
        out.log = train_run(out.actor, out.critic, cfg, on_epoch);
        return out;
    }
    Rng actor_rng(mix_seed(cfg.seed, 0xac70));
    Rng critic_rng(mix_seed(cfg.seed, 0xc217));
    TrainedModels out{ActorModel::create(cfg.kind, cfg.embed, actor_rng),
                      CriticModel::create(cfg.kind, cfg.critic_h1, cfg.critic_h2, critic_rng),
                      {}};
    // Warm-start the baseline at the analytic expected random-tour cost so
    // early advantages are centered instead of spending most of the step
    // budget regressing the critic from zero.
    out.critic.params.value("c4.b")[0] = expected_random_tour_cost(cfg.kind, cfg.train_scale());
    out.log = train_run(out.actor, out.critic, cfg, on_epoch);
    return out;
}

std::string epoch_log_csv(std::span<const EpochRecord> records) {
    std::ostringstream out;
    out.precision(17);
    out << "epoch,mean_cost,mean_abs_advantage,seconds\n";
    for (const auto& r : records) {
        out << r.epoch << ',' << r.mean_cost << ',' << r.mean_abs_advantage << ','
            << r.seconds << '\n';
    }
    return out.str();
}

}  // namespace mopn
