#include <algorithm>
#include <cmath>
#include <numeric>

#include "doctest.h"
#include "mopn/pareto.hpp"

using namespace mopn;

namespace {

FrontPoint pt(std::vector<double> obj) {
    FrontPoint p;
    p.objectives.c = std::move(obj);
    return p;
}

ParetoFront front_of(std::vector<std::vector<double>> objs) {
    ParetoFront f;
    f.M = objs.empty() ? 0 : objs.front().size();
    for (auto& o : objs) f.points.push_back(pt(std::move(o)));
    return f;
}

std::vector<ObjectiveVector> all_cycle_objectives(const RootInstance& rins) {
    const std::size_t n = rins.n();
    std::vector<std::size_t> rest(n - 1);
    std::iota(rest.begin(), rest.end(), 1);
    std::vector<ObjectiveVector> out;
    Tour tour;
    tour.order.resize(n);
    tour.order[0] = 0;
    do {
        std::copy(rest.begin(), rest.end(), tour.order.begin() + 1);
        out.push_back(tour_objective(rins, tour));
    } while (std::next_permutation(rest.begin(), rest.end()));
    return out;
}

}  // namespace

TEST_CASE("dominates") {
    CHECK(dominates(ObjectiveVector{{1, 2}}, ObjectiveVector{{2, 2}}));
    CHECK(dominates(ObjectiveVector{{1, 2}}, ObjectiveVector{{2, 3}}));
    CHECK_FALSE(dominates(ObjectiveVector{{1, 2}}, ObjectiveVector{{1, 2}}));
    CHECK_FALSE(dominates(ObjectiveVector{{1, 3}}, ObjectiveVector{{2, 2}}));
    CHECK_FALSE(dominates(ObjectiveVector{{2, 2}}, ObjectiveVector{{1, 2}}));
}

TEST_CASE("nondominated_filter") {
    SUBCASE("drops dominated points and exact duplicates") {
        const ParetoFront f = nondominated_filter(
            {pt({1, 3}), pt({2, 2}), pt({1, 3}), pt({2, 4}), pt({3, 1})}, 2);
        REQUIRE(f.size() == 3);
        CHECK(f.points[0].objectives.c == std::vector<double>{1, 3});
        CHECK(f.points[1].objectives.c == std::vector<double>{2, 2});
        CHECK(f.points[2].objectives.c == std::vector<double>{3, 1});
    }

    SUBCASE("matches a pairwise oracle on random 3-objective points") {
        Rng rng(5);
        std::vector<FrontPoint> points;
        for (int i = 0; i < 50; ++i) {
            points.push_back(pt({rng.uniform(), rng.uniform(), rng.uniform()}));
        }
        const ParetoFront f = nondominated_filter(points, 3);
        std::size_t expect = 0;
        for (const auto& a : points) {
            bool keep = true;
            for (const auto& b : points) {
                if (dominates(b.objectives, a.objectives)) keep = false;
            }
            if (keep) ++expect;  // random doubles: duplicates have measure zero
        }
        CHECK(f.size() == expect);
        for (const auto& a : f.points) {
            for (const auto& b : f.points) {
                CHECK_FALSE(dominates(a.objectives, b.objectives));
            }
        }
    }
}

TEST_CASE("brute_force_front") {
    SUBCASE("cycle counts") {
        CHECK(brute_force_tour_count(3) == 1);
        CHECK(brute_force_tour_count(4) == 3);
        CHECK(brute_force_tour_count(9) == 20160);
    }

    SUBCASE("n=3 has a single tour and a single front point") {
        const RootInstance r = generate_random_rins(ProblemKind::from_name("T1O2"), 3, 1);
        const ParetoFront f = brute_force_front(r);
        CHECK(f.size() == 1);
        CHECK(f.points[0].tour.is_permutation_of(3));
    }

    SUBCASE("above the city limit is refused") {
        const RootInstance r = generate_random_rins(ProblemKind::from_name("T1O2"), 11, 2);
        CHECK_THROWS_AS(brute_force_front(r), InvalidArgument);
    }

    SUBCASE("no enumerated cycle dominates any front point (n=6 oracle)") {
        const RootInstance r = generate_random_rins(ProblemKind::from_name("T2O3"), 6, 3);
        const ParetoFront f = brute_force_front(r);
        const auto all = all_cycle_objectives(r);
        for (const auto& p : f.points) {
            CHECK(p.tour.is_permutation_of(6));
            for (const auto& o : all) {
                CHECK_FALSE(dominates(o, p.objectives));
            }
        }
        // Every nondominated objective vector of the enumeration appears.
        for (const auto& o : all) {
            const bool nd = std::none_of(all.begin(), all.end(), [&](const ObjectiveVector& q) {
                return dominates(q, o);
            });
            if (!nd) continue;
            const bool present =
                std::any_of(f.points.begin(), f.points.end(), [&](const FrontPoint& p) {
                    return p.objectives.c == o.c;
                });
            CHECK(present);
        }
    }
}

TEST_CASE("hypervolume") {
    SUBCASE("single rectangle") {
        CHECK(hv(front_of({{0.5, 0.5}}), ObjectiveVector{{1, 1}}) == 0.25);
    }

    SUBCASE("two-rectangle union is 0.3125") {
        CHECK(hv(front_of({{0.25, 0.75}, {0.75, 0.25}}), ObjectiveVector{{1, 1}}) == 0.3125);
    }

    SUBCASE("degenerate corner points contribute nothing") {
        CHECK(hv(front_of({{0, 1}, {1, 0}}), ObjectiveVector{{1, 1}}) == 0.0);
    }

    SUBCASE("staircase of three points") {
        CHECK(hv(front_of({{1, 3}, {2, 2}, {3, 1}}), ObjectiveVector{{4, 4}}) == 6.0);
    }

    SUBCASE("2-objective value matches a Monte-Carlo estimate within 1%") {
        Rng rng(7);
        std::vector<std::vector<double>> objs;
        for (int i = 0; i < 8; ++i) objs.push_back({rng.uniform(), rng.uniform()});
        const ParetoFront f = nondominated_filter(front_of(objs).points, 2);
        const ObjectiveVector ref{{1, 1}};
        const double exact = hv(f, ref);

        Rng mc(8);
        std::size_t hits = 0;
        const std::size_t samples = 1000000;
        for (std::size_t s = 0; s < samples; ++s) {
            const double x = mc.uniform(), y = mc.uniform();
            for (const auto& p : f.points) {
                if (p.objectives[0] <= x && p.objectives[1] <= y) {
                    ++hits;
                    break;
                }
            }
        }
        const double estimate = static_cast<double>(hits) / static_cast<double>(samples);
        CHECK(std::abs(exact - estimate) < 0.01 * exact);
    }

    SUBCASE("3-objective slicing matches a Monte-Carlo estimate within 1%") {
        Rng rng(9);
        std::vector<std::vector<double>> objs;
        for (int i = 0; i < 8; ++i) objs.push_back({rng.uniform(), rng.uniform(), rng.uniform()});
        const ParetoFront f = nondominated_filter(front_of(objs).points, 3);
        const ObjectiveVector ref{{1, 1, 1}};
        const double exact = hv(f, ref);

        Rng mc(10);
        std::size_t hits = 0;
        const std::size_t samples = 1000000;
        for (std::size_t s = 0; s < samples; ++s) {
            const double x = mc.uniform(), y = mc.uniform(), z = mc.uniform();
            for (const auto& p : f.points) {
                if (p.objectives[0] <= x && p.objectives[1] <= y && p.objectives[2] <= z) {
                    ++hits;
                    break;
                }
            }
        }
        const double estimate = static_cast<double>(hits) / static_cast<double>(samples);
        CHECK(std::abs(exact - estimate) < 0.01 * exact);
    }

    SUBCASE("axis-aligned 3-objective box stack has an exact value") {
        // (0.5,0.5,0.5) alone: volume 0.125.
        CHECK(hv(front_of({{0.5, 0.5, 0.5}}), ObjectiveVector{{1, 1, 1}}) == 0.125);
    }

    SUBCASE("points beyond the reference point are clipped") {
        CHECK(hv(front_of({{0.5, 0.5}, {2.0, 0.1}}), ObjectiveVector{{1, 1}}) == 0.25);
    }

    SUBCASE("hv equals hv of the nondominated filter") {
        Rng rng(11);
        std::vector<std::vector<double>> objs;
        for (int i = 0; i < 20; ++i) objs.push_back({rng.uniform(), rng.uniform()});
        ParetoFront raw = front_of(objs);
        const ParetoFront filtered = nondominated_filter(raw.points, 2);
        const ObjectiveVector ref{{1, 1}};
        CHECK(hv(raw, ref) == doctest::Approx(hv(filtered, ref)).epsilon(1e-12));
    }

    SUBCASE("adding a nondominated point never decreases hv") {
        const ObjectiveVector ref{{1, 1}};
        ParetoFront f = front_of({{0.2, 0.8}, {0.6, 0.4}});
        const double before = hv(f, ref);
        f.points.push_back(pt({0.4, 0.5}));
        CHECK(hv(f, ref) >= before);
    }
}

TEST_CASE("reference and extreme points") {
    const ParetoFront a = front_of({{1, 5}, {3, 2}});
    const ParetoFront b = front_of({{2, 4}, {0.5, 6}});
    const std::vector<ParetoFront> fronts = {a, b};

    SUBCASE("reference point is the componentwise maximum over the union") {
        const ObjectiveVector ref = reference_point(fronts);
        CHECK(ref.c == std::vector<double>{3, 6});
    }

    SUBCASE("extreme points are per-objective minimizers over the union") {
        const auto ex = extreme_points(fronts);
        REQUIRE(ex.size() == 2);
        CHECK(ex[0].c == std::vector<double>{0.5, 6});
        CHECK(ex[1].c == std::vector<double>{3, 2});
    }

    SUBCASE("empty input is rejected") {
        const std::vector<ParetoFront> none;
        CHECK_THROWS_AS(reference_point(none), InvalidArgument);
        CHECK_THROWS_AS(extreme_points(none), InvalidArgument);
    }
}

TEST_CASE("spacing") {
    SUBCASE("evenly spaced collinear front with in-set extremes is 0") {
        const ParetoFront f = front_of({{0, 2}, {1, 1}, {2, 0}});
        const std::vector<ObjectiveVector> ex = {ObjectiveVector{{0, 2}}, ObjectiveVector{{2, 0}}};
        CHECK(spc(f, ex) == 0.0);
    }

    SUBCASE("uneven 3-point front has the hand value 1/3") {
        // Gaps sqrt(2) and 2*sqrt(2): dev = sqrt(2), denom = 3*sqrt(2).
        const ParetoFront f = front_of({{0, 3}, {1, 2}, {3, 0}});
        const std::vector<ObjectiveVector> ex = {ObjectiveVector{{0, 3}}, ObjectiveVector{{3, 0}}};
        CHECK(spc(f, ex) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    }

    SUBCASE("single point equal to both extremes is 0, otherwise 1") {
        const ParetoFront f = front_of({{1, 1}});
        CHECK(spc(f, {ObjectiveVector{{1, 1}}, ObjectiveVector{{1, 1}}}) == 0.0);
        CHECK(spc(f, {ObjectiveVector{{0, 2}}, ObjectiveVector{{2, 0}}}) == 1.0);
    }

    SUBCASE("invariant under uniform positive scaling") {
        Rng rng(13);
        std::vector<std::vector<double>> objs;
        for (int i = 0; i < 6; ++i) objs.push_back({rng.uniform(), rng.uniform()});
        const ParetoFront f = nondominated_filter(front_of(objs).points, 2);
        const std::vector<ParetoFront> one = {f};
        const auto ex = extreme_points(one);
        const double base = spc(f, ex);

        const double s = 7.5;
        ParetoFront scaled = f;
        for (auto& p : scaled.points)
            for (auto& c : p.objectives.c) c *= s;
        std::vector<ObjectiveVector> exs = ex;
        for (auto& e : exs)
            for (auto& c : e.c) c *= s;
        CHECK(spc(scaled, exs) == doctest::Approx(base).epsilon(1e-9));
    }

    SUBCASE("3 objectives equal the mean of the three projected scores") {
        const std::vector<std::vector<double>> objs = {
            {0.1, 0.9, 0.4}, {0.3, 0.6, 0.8}, {0.5, 0.5, 0.2}, {0.8, 0.2, 0.6}, {0.9, 0.1, 0.9}};
        const ParetoFront f = front_of(objs);
        const std::vector<ParetoFront> one = {f};
        const auto ex = extreme_points(one);

        const std::array<std::array<std::size_t, 2>, 3> pairs = {{{0, 1}, {0, 2}, {1, 2}}};
        double expect = 0.0;
        for (const auto& [a, b] : pairs) {
            std::vector<FrontPoint> proj;
            for (const auto& o : objs) proj.push_back(pt({o[a], o[b]}));
            const ParetoFront pf = nondominated_filter(std::move(proj), 2);
            const std::vector<ObjectiveVector> pex = {ObjectiveVector{{ex[a][a], ex[a][b]}},
                                                      ObjectiveVector{{ex[b][a], ex[b][b]}}};
            expect += spc(pf, pex);
        }
        expect /= 3.0;
        CHECK(spc(f, ex) == doctest::Approx(expect).epsilon(1e-12));
    }

    SUBCASE("extreme count mismatch is rejected") {
        const ParetoFront f = front_of({{0, 1}, {1, 0}});
        CHECK_THROWS_AS(spc(f, {ObjectiveVector{{0, 1}}}), InvalidArgument);
    }
}

TEST_CASE("heuristic_baseline") {
    SUBCASE("n=4 scalarized costs are optimal among all three cycles") {
        const RootInstance r = generate_random_rins(ProblemKind::from_name("T1O2"), 4, 17);
        const WeightSet ws = simplex_lattice(2, 4);
        const ParetoFront f = heuristic_baseline(r, ws);
        const auto all = all_cycle_objectives(r);
        for (const auto& w : ws.vectors) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& o : all) best = std::min(best, scalarized_cost(o, w));
            // The front kept only nondominated representatives; the optimum
            // for each weight must still be matched by some front member.
            double achieved = std::numeric_limits<double>::infinity();
            for (const auto& p : f.points) {
                achieved = std::min(achieved, scalarized_cost(p.objectives, w));
            }
            CHECK(achieved == doctest::Approx(best).epsilon(1e-12));
        }
    }

    SUBCASE("tours are valid and points mutually nondominated") {
        const RootInstance r = generate_random_rins(ProblemKind::from_name("T2O3"), 8, 19);
        const ParetoFront f = heuristic_baseline(r, simplex_lattice(3, 3));
        CHECK(f.size() >= 1);
        for (const auto& p : f.points) {
            CHECK(p.tour.is_permutation_of(8));
            for (const auto& q : f.points) {
                CHECK_FALSE(dominates(p.objectives, q.objectives));
            }
        }
    }
}

TEST_CASE("solve_front") {
    Rng rng(23);
    const ActorModel model = ActorModel::create(ProblemKind::from_name("T1O2"), 8, rng);

    SUBCASE("one greedy point per weight before filtering, all valid") {
        auto rins = std::make_shared<RootInstance>(
            generate_random_rins(ProblemKind::from_name("T1O2"), 7, 29));
        const ParetoFront f = solve_front(model, rins, simplex_lattice(2, 9));
        CHECK(f.size() >= 1);
        CHECK(f.size() <= 10);
        for (const auto& p : f.points) {
            CHECK(p.tour.is_permutation_of(7));
            CHECK(p.weight.size() == 2);
        }
    }

    SUBCASE("kind mismatch is rejected") {
        auto rins = std::make_shared<RootInstance>(
            generate_random_rins(ProblemKind::from_name("T2O3"), 5, 31));
        CHECK_THROWS_AS(solve_front(model, rins, simplex_lattice(3, 4)), InvalidArgument);
    }
}

TEST_CASE("front CSV export") {
    ParetoFront f;
    f.M = 2;
    FrontPoint p;
    p.objectives.c = {1.5, 2.0};
    p.tour.order = {0, 2, 1};
    p.weight = WeightVector({0.25, 0.75});
    f.points.push_back(p);
    CHECK(front_to_csv(f) == "objective1,objective2,weights,tour\n1.5,2,0.25 0.75,0-2-1\n");
}
