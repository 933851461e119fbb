#include "mopn/pareto.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numeric>
#include <sstream>

namespace mopn {

bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
    bool strict = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) return false;
        if (a[i] < b[i]) strict = true;
    }
    return strict;
}

ParetoFront nondominated_filter(std::vector<FrontPoint> points, std::size_t M) {
    ParetoFront front;
    front.M = M;
    // Collapse exact duplicates first.
    std::vector<FrontPoint> unique;
    for (auto& p : points) {
        const bool dup = std::any_of(unique.begin(), unique.end(), [&](const FrontPoint& q) {
            return q.objectives.c == p.objectives.c;
        });
        if (!dup) unique.push_back(std::move(p));
    }
    std::vector<std::uint8_t> keep(unique.size(), 1);
    for (std::size_t i = 0; i < unique.size(); ++i) {
        for (std::size_t j = 0; j < unique.size() && keep[i]; ++j) {
            if (i != j && dominates(unique[j].objectives, unique[i].objectives)) {
                keep[i] = 0;
            }
        }
    }
    for (std::size_t i = 0; i < unique.size(); ++i) {
        if (keep[i]) front.points.push_back(std::move(unique[i]));
    }
    return front;
}

ParetoFront solve_front(const ActorModel& actor, std::shared_ptr<const RootInstance> rins,
                        const WeightSet& weights) {
    if (!(actor.kind == rins->kind())) {
        throw InvalidArgument("model kind " + actor.kind.name() +
                              " does not match instance kind " + rins->kind().name());
    }
    std::vector<FrontPoint> points;
    points.reserve(weights.size());
    for (const auto& w : weights.vectors) {
        const LeafInstance leaf = build_leaf(rins, w);
        RolloutResult ro = rollout(leaf, actor, DecodeMode::Greedy);
        FrontPoint p;
        p.objectives = tour_objective(*rins, ro.tour);
        p.tour = std::move(ro.tour);
        p.weight = w;
        points.push_back(std::move(p));
    }
    return nondominated_filter(std::move(points), rins->kind().objective_count);
}

std::size_t brute_force_tour_count(std::size_t n) {
    std::size_t c = 1;
    for (std::size_t k = 2; k < n; ++k) c *= k;  // (n-1)!
    return n > 2 ? c / 2 : 1;
}

ParetoFront brute_force_front(const RootInstance& rins) {
    const std::size_t n = rins.n();
    if (n > kMaxBruteForceCities) {
        throw InvalidArgument("brute-force front refused for n=" + std::to_string(n) +
                              " (limit " + std::to_string(kMaxBruteForceCities) + " cities)");
    }
    std::vector<FrontPoint> archive;
    auto consider = [&](const Tour& tour) {
        ObjectiveVector obj = tour_objective(rins, tour);
        for (const auto& p : archive) {
            if (dominates(p.objectives, obj) || p.objectives.c == obj.c) return;
        }
        std::erase_if(archive, [&](const FrontPoint& p) { return dominates(obj, p.objectives); });
        archive.push_back(FrontPoint{std::move(obj), tour, {}});
    };

    // City 0 fixed first; direction canonicalized via order[1] < order[n-1].
    Tour tour;
    tour.order.resize(n);
    tour.order[0] = 0;
    std::vector<std::size_t> rest(n - 1);
    std::iota(rest.begin(), rest.end(), 1);
    do {
        if (n > 2 && rest.front() > rest.back()) continue;
        std::copy(rest.begin(), rest.end(), tour.order.begin() + 1);
        consider(tour);
    } while (std::next_permutation(rest.begin(), rest.end()));

    return nondominated_filter(std::move(archive), rins.kind().objective_count);
}

namespace {

struct Point2 {
    double x, y;
};

// Exact bi-objective hypervolume of a nondominated, ref-clipped set.
double hv2(std::vector<Point2> pts, double rx, double ry) {
    if (pts.empty()) return 0.0;
    std::sort(pts.begin(), pts.end(), [](const Point2& a, const Point2& b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    // Keep the staircase: strictly decreasing y.
    std::vector<Point2> stair;
    for (const auto& p : pts) {
        if (stair.empty() || p.y < stair.back().y) stair.push_back(p);
    }
    double area = 0.0;
    for (std::size_t i = 0; i < stair.size(); ++i) {
        const double width = (i + 1 < stair.size() ? stair[i + 1].x : rx) - stair[i].x;
        area += width * (ry - stair[i].y);
    }
    return area;
}

}  // namespace

double hv(const ParetoFront& front, const ObjectiveVector& ref) {
    if (front.points.empty()) {
        std::cerr << "warning: hypervolume of empty front is 0\n";
        return 0.0;
    }
    const std::size_t M = front.M;
    if (M != 2 && M != 3) throw InvalidArgument("hv supports 2 or 3 objectives");
    std::vector<const FrontPoint*> pts;
    for (const auto& p : front.points) {
        bool inside = true;
        for (std::size_t m = 0; m < M; ++m) {
            if (p.objectives[m] > ref[m]) inside = false;
        }
        if (inside) {
            pts.push_back(&p);
        } else {
            std::cerr << "warning: front point beyond reference point clipped from hv\n";
        }
    }
    if (pts.empty()) return 0.0;

    if (M == 2) {
        std::vector<Point2> flat;
        flat.reserve(pts.size());
        for (const auto* p : pts) flat.push_back({p->objectives[0], p->objectives[1]});
        return hv2(std::move(flat), ref[0], ref[1]);
    }

    // M == 3: slice along the third objective.
    std::sort(pts.begin(), pts.end(), [](const FrontPoint* a, const FrontPoint* b) {
        return a->objectives[2] < b->objectives[2];
    });
    double volume = 0.0;
    std::vector<Point2> active;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        active.push_back({pts[i]->objectives[0], pts[i]->objectives[1]});
        while (i + 1 < pts.size() && pts[i + 1]->objectives[2] == pts[i]->objectives[2]) {
            ++i;
            active.push_back({pts[i]->objectives[0], pts[i]->objectives[1]});
        }
        const double z0 = pts[i]->objectives[2];
        const double z1 = i + 1 < pts.size() ? pts[i + 1]->objectives[2] : ref[2];
        volume += hv2(active, ref[0], ref[1]) * (z1 - z0);
    }
    return volume;
}

ObjectiveVector reference_point(std::span<const ParetoFront> fronts) {
    ObjectiveVector ref;
    for (const auto& f : fronts) {
        for (const auto& p : f.points) {
            if (ref.c.empty()) ref.c.assign(p.objectives.size(), p.objectives[0]);
            for (std::size_t m = 0; m < p.objectives.size(); ++m) {
                ref.c[m] = std::max(ref.c[m], p.objectives[m]);
            }
        }
    }
    if (ref.c.empty()) throw InvalidArgument("reference_point: no points in any front");
    return ref;
}

std::vector<ObjectiveVector> extreme_points(std::span<const ParetoFront> fronts) {
    std::vector<ObjectiveVector> extremes;
    for (const auto& f : fronts) {
        for (const auto& p : f.points) {
            if (extremes.empty()) extremes.assign(p.objectives.size(), p.objectives);
            for (std::size_t m = 0; m < p.objectives.size(); ++m) {
                if (p.objectives[m] < extremes[m][m] ||
                    (p.objectives[m] == extremes[m][m] && p.objectives.c < extremes[m].c)) {
                    extremes[m] = p.objectives;
                }
            }
        }
    }
    if (extremes.empty()) throw InvalidArgument("extreme_points: no points in any front");
    return extremes;
}

namespace {

double dist2d(const Point2& a, const Point2& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

double spc2(std::vector<Point2> pts, const Point2& ex0, const Point2& ex1) {
    std::sort(pts.begin(), pts.end(), [](const Point2& a, const Point2& b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    auto nearest = [&](const Point2& e) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& p : pts) best = std::min(best, dist2d(e, p));
        return best;
    };
    const double df = nearest(ex0);
    const double dl = nearest(ex1);
    if (pts.size() < 2) {
        // Degenerate single-point front.
        return (df == 0.0 && dl == 0.0) ? 0.0 : 1.0;
    }
    std::vector<double> d(pts.size() - 1);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) d[i] = dist2d(pts[i], pts[i + 1]);
    const double dbar = std::accumulate(d.begin(), d.end(), 0.0) / static_cast<double>(d.size());
    double dev = 0.0;
    for (double di : d) dev += std::abs(di - dbar);
    const double denom = df + dl + static_cast<double>(d.size()) * dbar;
    if (denom == 0.0) return 0.0;  // all points and extremes coincide
    return (df + dl + dev) / denom;
}

}  // namespace

double spc(const ParetoFront& front, const std::vector<ObjectiveVector>& extremes) {
    if (front.points.empty()) throw InvalidArgument("spc of empty front");
    const std::size_t M = front.M;
    if (extremes.size() != M) throw InvalidArgument("spc: need one extreme point per objective");
    if (M == 2) {
        std::vector<Point2> pts;
        pts.reserve(front.size());
        for (const auto& p : front.points) pts.push_back({p.objectives[0], p.objectives[1]});
        return spc2(std::move(pts), {extremes[0][0], extremes[0][1]},
                    {extremes[1][0], extremes[1][1]});
    }
    if (M != 3) throw InvalidArgument("spc supports 2 or 3 objectives");

    const std::array<std::array<std::size_t, 2>, 3> pairs = {{{0, 1}, {0, 2}, {1, 2}}};
    double sum = 0.0;
    for (const auto& [a, b] : pairs) {
        std::vector<FrontPoint> proj;
        proj.reserve(front.size());
        for (const auto& p : front.points) {
            FrontPoint q;
            q.objectives.c = {p.objectives[a], p.objectives[b]};
            proj.push_back(std::move(q));
        }
        const ParetoFront pf = nondominated_filter(std::move(proj), 2);
        std::vector<Point2> pts;
        pts.reserve(pf.size());
        for (const auto& p : pf.points) pts.push_back({p.objectives[0], p.objectives[1]});
        sum += spc2(std::move(pts), {extremes[a][a], extremes[a][b]},
                    {extremes[b][a], extremes[b][b]});
    }
    return sum / 3.0;
}

namespace {

Tour nearest_neighbor_tour(const RootInstance& rins, const WeightVector& w) {
    const std::size_t n = rins.n();
    const std::size_t M = rins.kind().objective_count;
    auto edge = [&](std::size_t i, std::size_t j) {
        double c = 0.0;
        for (std::size_t m = 0; m < M; ++m) c += w[m] * rins.edge_cost(m, i, j);
        return c;
    };
    Tour tour;
    tour.order.reserve(n);
    std::vector<std::uint8_t> used(n, 0);
    std::size_t cur = 0;
    tour.order.push_back(0);
    used[0] = 1;
    for (std::size_t step = 1; step < n; ++step) {
        std::size_t best = n;
        double bestc = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < n; ++j) {
            if (used[j]) continue;
            const double c = edge(cur, j);
            if (c < bestc) {
                bestc = c;
                best = j;
            }
        }
        tour.order.push_back(best);
        used[best] = 1;
        cur = best;
    }
    return tour;
}

void two_opt(const RootInstance& rins, const WeightVector& w, Tour& tour) {
    const std::size_t n = tour.order.size();
    const std::size_t M = rins.kind().objective_count;
    auto edge = [&](std::size_t i, std::size_t j) {
        double c = 0.0;
        for (std::size_t m = 0; m < M; ++m) c += w[m] * rins.edge_cost(m, i, j);
        return c;
    };
    bool improved = true;
    while (improved) {
        improved = false;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            for (std::size_t j = i + 2; j < n; ++j) {
                if (i == 0 && j == n - 1) continue;  // same edge pair
                const std::size_t a = tour.order[i], b = tour.order[i + 1];
                const std::size_t c = tour.order[j], d = tour.order[(j + 1) % n];
                const double delta = edge(a, c) + edge(b, d) - edge(a, b) - edge(c, d);
                if (delta < -1e-12) {
                    std::reverse(tour.order.begin() + i + 1, tour.order.begin() + j + 1);
                    improved = true;
                }
            }
        }
    }
}

}  // namespace

ParetoFront heuristic_baseline(const RootInstance& rins, const WeightSet& weights) {
    std::vector<FrontPoint> points;
    points.reserve(weights.size());
    for (const auto& w : weights.vectors) {
        Tour tour = nearest_neighbor_tour(rins, w);
        two_opt(rins, w, tour);
        FrontPoint p;
        p.objectives = tour_objective(rins, tour);
        p.tour = std::move(tour);
        p.weight = w;
        points.push_back(std::move(p));
    }
    return nondominated_filter(std::move(points), rins.kind().objective_count);
}

std::string front_to_csv(const ParetoFront& front) {
    std::ostringstream out;
    out.precision(17);
    for (std::size_t m = 0; m < front.M; ++m) out << "objective" << m + 1 << ',';
    out << "weights,tour\n";
    for (const auto& p : front.points) {
        for (std::size_t m = 0; m < front.M; ++m) out << p.objectives[m] << ',';
        for (std::size_t i = 0; i < p.weight.size(); ++i) {
            if (i) out << ' ';
            out << p.weight[i];
        }
        out << ',';
        for (std::size_t i = 0; i < p.tour.order.size(); ++i) {
            if (i) out << '-';
            out << p.tour.order[i];
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace mopn
