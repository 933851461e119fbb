#ifndef MOPN_PARETO_HPP
#define MOPN_PARETO_HPP

#include <span>

#include "mopn/actor.hpp"
#include "mopn/weights.hpp"

namespace mopn {

struct FrontPoint {
    ObjectiveVector objectives;
    Tour tour;
    WeightVector weight;  // source preference, empty for oracle points
};

/// Minimization Pareto front: no member dominates another; duplicate
/// objective vectors are collapsed to one representative.
struct ParetoFront {
    std::vector<FrontPoint> points;
    std::size_t M = 0;

    std::size_t size() const { return points.size(); }
};

/// a dominates b iff a <= b componentwise and a != b.
bool dominates(const ObjectiveVector& a, const ObjectiveVector& b);

ParetoFront nondominated_filter(std::vector<FrontPoint> points, std::size_t M);

/// One greedy rollout per weight vector, objectives evaluated on the
/// root instance, then filtered.
ParetoFront solve_front(const ActorModel& actor, std::shared_ptr<const RootInstance> rins,
                        const WeightSet& weights);

/// Exact Pareto front by enumeration of all (n-1)!/2 distinct cycles.
/// Refused above kMaxBruteForceCities.
inline constexpr std::size_t kMaxBruteForceCities = 10;
ParetoFront brute_force_front(const RootInstance& rins);

/// Number of distinct cycles brute_force_front enumerates for n cities.
std::size_t brute_force_tour_count(std::size_t n);

/// Hypervolume bounded by `ref`; exact sweep for M=2, slicing along the
/// third objective for M=3. Points beyond the reference point are
/// clipped out with a warning on stderr.
double hv(const ParetoFront& front, const ObjectiveVector& ref);

/// Componentwise maximum over all points of all fronts.
ObjectiveVector reference_point(std::span<const ParetoFront> fronts);

/// Per-objective minimizing points over all points of all fronts.
std::vector<ObjectiveVector> extreme_points(std::span<const ParetoFront> fronts);

/// Spacing indicator. For M=2 this is the D_f/D_l consecutive-distance
/// formula; for M=3 the front is projected onto the three objective
/// pairs, each projection filtered and scored, and the mean returned.
/// `extremes` holds one M-dimensional point per objective (the
/// per-objective optima of the compared methods).
double spc(const ParetoFront& front, const std::vector<ObjectiveVector>& extremes);

/// Scalarized nearest-neighbor construction plus 2-opt, per weight
/// vector; stands in for meta-heuristic baselines.
ParetoFront heuristic_baseline(const RootInstance& rins, const WeightSet& weights);

std::string front_to_csv(const ParetoFront& front);

}  // namespace mopn

#endif
