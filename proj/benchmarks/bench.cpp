#include <benchmark/benchmark.h>

#include "mopn/pareto.hpp"
#include "mopn/trainer.hpp"

using namespace mopn;

namespace {

LeafInstance make_leaf(std::size_t n, std::uint64_t seed) {
    auto rins = std::make_shared<RootInstance>(
        generate_random_rins(ProblemKind::from_name("T1O2"), n, seed));
    Rng rng(seed + 1);
    return build_leaf(rins, WeightVector::random(2, rng));
}

void BM_greedy_rollout(benchmark::State& state) {
    Rng rng(1);
    const ActorModel model = ActorModel::create(ProblemKind::from_name("T1O2"), 128, rng);
    const LeafInstance leaf = make_leaf(static_cast<std::size_t>(state.range(0)), 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(rollout(leaf, model, DecodeMode::Greedy));
    }
}
BENCHMARK(BM_greedy_rollout)->Arg(40)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_train_batch(benchmark::State& state) {
    TrainConfig cfg;
    cfg.kind = ProblemKind::from_name("T1O2");
    cfg.scale = 10;
    cfg.batch = 20;
    Rng arng(3), crng(4);
    ActorModel actor = ActorModel::create(cfg.kind, 128, arng);
    CriticModel critic = CriticModel::create(cfg.kind, 128, 20, crng);
    const LeafDataset data(cfg.kind, 10, 5, cfg.batch);
    std::vector<LeafInstance> batch;
    for (std::size_t i = 0; i < data.size(); ++i) batch.push_back(data.make(i));
    std::uint64_t seed = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(train_batch(batch, actor, critic, cfg, seed++));
    }
}
BENCHMARK(BM_train_batch)->Unit(benchmark::kMillisecond);

void BM_hypervolume_2d(benchmark::State& state) {
    Rng rng(7);
    std::vector<FrontPoint> pts;
    for (int i = 0; i < 100; ++i) {
        FrontPoint p;
        p.objectives.c = {rng.uniform(), rng.uniform()};
        pts.push_back(p);
    }
    const ParetoFront f = nondominated_filter(pts, 2);
    const ObjectiveVector ref{{1, 1}};
    for (auto _ : state) benchmark::DoNotOptimize(hv(f, ref));
}
BENCHMARK(BM_hypervolume_2d);

void BM_brute_force_front(benchmark::State& state) {
    const RootInstance rins =
        generate_random_rins(ProblemKind::from_name("T1O2"), static_cast<std::size_t>(state.range(0)), 9);
    for (auto _ : state) benchmark::DoNotOptimize(brute_force_front(rins));
}
BENCHMARK(BM_brute_force_front)->Arg(8)->Arg(9)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
