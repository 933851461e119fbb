#include <cmath>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "mopn/instance.hpp"
#include "mopn/tsplib.hpp"

using namespace mopn;
namespace fs = std::filesystem;

namespace {

fs::path write_temp(const std::string& name, const std::string& content) {
    const fs::path p = fs::temp_directory_path() / name;
    std::ofstream out(p);
    out << content;
    return p;
}

std::string euc2d_file(const std::string& name, const std::vector<std::array<double, 2>>& pts) {
    std::string s = "NAME : " + name + "\nTYPE : TSP\nDIMENSION : " +
                    std::to_string(pts.size()) + "\nEDGE_WEIGHT_TYPE : EUC_2D\nNODE_COORD_SECTION\n";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        s += std::to_string(i + 1) + " " + std::to_string(pts[i][0]) + " " +
             std::to_string(pts[i][1]) + "\n";
    }
    return s + "EOF\n";
}

}  // namespace

TEST_CASE("problem kinds") {
    CHECK(ProblemKind::from_name("T1O2").input_width() == 6);
    CHECK(ProblemKind::from_name("T2O2").input_width() == 6);
    CHECK(ProblemKind::from_name("T2O3").input_width() == 9);
    CHECK(ProblemKind::from_name("T2O3").objective_count == 3);
    CHECK_THROWS_AS(ProblemKind::from_name("T9O9"), InvalidArgument);
}

TEST_CASE("generate_random_rins") {
    const auto kind = ProblemKind::from_name("T1O2");

    SUBCASE("features are uniform in [0,1] with the right shape") {
        const RootInstance r = generate_random_rins(kind, 40, 123);
        CHECK(r.n() == 40);
        CHECK(r.features().cols() == 4);
        for (std::size_t i = 0; i < r.features().size(); ++i) {
            CHECK(r.features()[i] >= 0.0);
            CHECK(r.features()[i] <= 1.0);
        }
    }

    SUBCASE("same seed gives bitwise-identical instances") {
        const RootInstance a = generate_random_rins(kind, 12, 99);
        const RootInstance b = generate_random_rins(kind, 12, 99);
        for (std::size_t i = 0; i < a.features().size(); ++i) {
            CHECK(a.features()[i] == b.features()[i]);
        }
    }

    SUBCASE("n < 2 is rejected") {
        CHECK_THROWS_AS(generate_random_rins(kind, 1, 0), InvalidArgument);
    }

    SUBCASE("T2O3 leaf has 9 columns") {
        auto r = std::make_shared<RootInstance>(
            generate_random_rins(ProblemKind::from_name("T2O3"), 10, 5));
        Rng rng(1);
        const LeafInstance leaf = build_leaf(r, WeightVector::random(3, rng));
        CHECK(leaf.matrix.cols() == 9);
    }
}

TEST_CASE("build_leaf layout") {
    SUBCASE("T2O2 row is (x, y, h, 1, w1, w2)") {
        auto r = std::make_shared<RootInstance>(
            ProblemKind::from_name("T2O2"), Tensor(2, 3, {0.3, 0.7, 0.2, 0.1, 0.1, 0.1}));
        const LeafInstance leaf = build_leaf(r, WeightVector({0.6, 0.4}));
        CHECK(leaf.matrix(0, 0) == 0.3);
        CHECK(leaf.matrix(0, 1) == 0.7);
        CHECK(leaf.matrix(0, 2) == 0.2);
        CHECK(leaf.matrix(0, 3) == 1.0);
        CHECK(leaf.matrix(0, 4) == 0.6);
        CHECK(leaf.matrix(0, 5) == 0.4);
    }

    SUBCASE("T1O2 row is plain concatenation plus weights") {
        auto r = std::make_shared<RootInstance>(
            ProblemKind::from_name("T1O2"),
            Tensor(2, 4, {0.1, 0.2, 0.3, 0.4, 0.5, 0.5, 0.5, 0.5}));
        const LeafInstance leaf = build_leaf(r, WeightVector({1.0, 0.0}));
        const std::vector<double> expect = {0.1, 0.2, 0.3, 0.4, 1.0, 0.0};
        for (std::size_t c = 0; c < 6; ++c) CHECK(leaf.matrix(0, c) == expect[c]);
    }

    SUBCASE("weight rows are identical across cities") {
        auto r = std::make_shared<RootInstance>(
            generate_random_rins(ProblemKind::from_name("T2O3"), 7, 3));
        const LeafInstance leaf = build_leaf(r, WeightVector({0.2, 0.3, 0.5}));
        for (std::size_t row = 0; row < 7; ++row) {
            CHECK(leaf.matrix(row, 6) == 0.2);
            CHECK(leaf.matrix(row, 7) == 0.3);
            CHECK(leaf.matrix(row, 8) == 0.5);
        }
    }

    SUBCASE("stripping padding and weights recovers the raw features") {
        const auto kind = ProblemKind::from_name("T2O3");
        auto r = std::make_shared<RootInstance>(generate_random_rins(kind, 5, 17));
        const LeafInstance leaf = build_leaf(r, WeightVector({0.1, 0.2, 0.7}));
        for (std::size_t row = 0; row < 5; ++row) {
            std::size_t col = 0;
            for (std::size_t m = 0; m < kind.objective_count; ++m) {
                for (std::size_t k = 0; k < kind.feature_dims[m]; ++k) {
                    CHECK(leaf.matrix(row, m * kind.d_max() + k) ==
                          r->features()(row, col++));
                }
            }
        }
    }

    SUBCASE("weight length mismatch is rejected") {
        auto r = std::make_shared<RootInstance>(
            generate_random_rins(ProblemKind::from_name("T1O2"), 4, 1));
        CHECK_THROWS_AS(build_leaf(r, WeightVector({0.2, 0.3, 0.5})), InvalidArgument);
    }
}

TEST_CASE("tour_objective") {
    SUBCASE("closed triangle of unit legs") {
        const RootInstance r(ProblemKind::from_name("T2O2"),
                             Tensor(3, 3, {0, 0, 0.5, 0, 1, 0.5, 1, 0, 0.5}));
        const ObjectiveVector c = tour_objective(r, Tour{{0, 1, 2}});
        CHECK(c[0] == doctest::Approx(2.0 + std::sqrt(2.0)).epsilon(1e-15));
    }

    SUBCASE("altitude objective sums absolute differences") {
        const RootInstance r(ProblemKind::from_name("T2O2"),
                             Tensor(3, 3, {0, 0, 0.1, 0, 0, 0.5, 0, 0, 0.2}));
        const ObjectiveVector c = tour_objective(r, Tour{{0, 1, 2}});
        CHECK(c[1] == doctest::Approx(0.4 + 0.3 + 0.1).epsilon(1e-15));
    }

    SUBCASE("reversal and rotation invariance") {
        const RootInstance r = generate_random_rins(ProblemKind::from_name("T2O3"), 8, 21);
        const Tour t{{3, 1, 7, 0, 2, 6, 4, 5}};
        Tour rev = t;
        std::reverse(rev.order.begin(), rev.order.end());
        Tour rot = t;
        std::rotate(rot.order.begin(), rot.order.begin() + 3, rot.order.end());
        const ObjectiveVector a = tour_objective(r, t);
        const ObjectiveVector b = tour_objective(r, rev);
        const ObjectiveVector c = tour_objective(r, rot);
        for (std::size_t m = 0; m < 3; ++m) {
            CHECK(a[m] == doctest::Approx(b[m]).epsilon(1e-12));
            CHECK(a[m] == doctest::Approx(c[m]).epsilon(1e-12));
        }
    }

    SUBCASE("invalid permutation is rejected") {
        const RootInstance r = generate_random_rins(ProblemKind::from_name("T1O2"), 4, 2);
        CHECK_THROWS_AS(tour_objective(r, Tour{{0, 1, 1, 3}}), InvalidArgument);
        CHECK_THROWS_AS(tour_objective(r, Tour{{0, 1, 2}}), InvalidArgument);
    }
}

TEST_CASE("scalarized_cost") {
    CHECK(scalarized_cost(ObjectiveVector{{3, 5}}, WeightVector({1, 0})) == 3.0);
    CHECK(scalarized_cost(ObjectiveVector{{3, 5}}, WeightVector({0.5, 0.5})) == 4.0);
    CHECK(scalarized_cost(ObjectiveVector{{2, 4, 6}},
                          WeightVector({1.0 / 3, 1.0 / 3, 1.0 / 3})) ==
          doctest::Approx(4.0).epsilon(1e-12));
    CHECK_THROWS_AS(scalarized_cost(ObjectiveVector{{1, 2, 3}}, WeightVector({0.5, 0.5})),
                    InvalidArgument);
}

TEST_CASE("native instance JSON round trip") {
    const RootInstance r = generate_random_rins(ProblemKind::from_name("T2O3"), 6, 77);
    const RootInstance back = RootInstance::from_json(r.to_json());
    CHECK(back.kind() == r.kind());
    CHECK(back.n() == r.n());
    for (std::size_t i = 0; i < r.features().size(); ++i) {
        CHECK(back.features()[i] == r.features()[i]);
    }
    CHECK_THROWS_AS(RootInstance::from_json("{\"format\":\"other\"}"), ParseError);
    CHECK_THROWS_AS(RootInstance::from_json("not json"), ParseError);
}

TEST_CASE("TSPLIB ingestion") {
    const auto a3 = write_temp("mopn_a3.tsp", euc2d_file("a3", {{0, 0}, {10, 5}, {3, 8}}));
    const auto b3 = write_temp("mopn_b3.tsp", euc2d_file("b3", {{1, 1}, {2, 9}, {7, 4}}));

    SUBCASE("pair loads as T1O2 with min-max normalized columns") {
        const RootInstance r = load_tsplib_pair(a3, b3);
        CHECK(r.kind().name() == "T1O2");
        CHECK(r.n() == 3);
        for (std::size_t c = 0; c < 4; ++c) {
            double lo = 1.0, hi = 0.0;
            for (std::size_t i = 0; i < 3; ++i) {
                lo = std::min(lo, r.features()(i, c));
                hi = std::max(hi, r.features()(i, c));
            }
            CHECK(lo == 0.0);
            CHECK(hi == 1.0);
        }
    }

    SUBCASE("dimension mismatch is a parse error naming both files") {
        const auto b2 = write_temp("mopn_b2.tsp", euc2d_file("b2", {{0, 0}, {1, 1}}));
        CHECK_THROWS_WITH_AS(load_tsplib_pair(a3, b2),
                             doctest::Contains("dimension mismatch"), ParseError);
    }

    SUBCASE("missing NODE_COORD_SECTION") {
        const auto bad = write_temp("mopn_bad1.tsp",
                                    "NAME : x\nDIMENSION : 2\nEDGE_WEIGHT_TYPE : EUC_2D\nEOF\n");
        CHECK_THROWS_WITH_AS(parse_tsplib(bad), doctest::Contains("NODE_COORD_SECTION"),
                             ParseError);
    }

    SUBCASE("non-numeric coordinates name the file and line") {
        const auto bad = write_temp(
            "mopn_bad2.tsp",
            "DIMENSION : 2\nEDGE_WEIGHT_TYPE : EUC_2D\nNODE_COORD_SECTION\n1 0 0\n2 x y\nEOF\n");
        CHECK_THROWS_WITH_AS(parse_tsplib(bad), doctest::Contains("mopn_bad2.tsp:5"), ParseError);
    }

    SUBCASE("unknown keys are ignored") {
        const auto f = write_temp("mopn_unk.tsp",
                                  "NAME : u\nCOMMENT : hello\nFANCY_KEY : 3\nDIMENSION : 2\n"
                                  "EDGE_WEIGHT_TYPE : EUC_2D\nNODE_COORD_SECTION\n"
                                  "1 0 0\n2 1 1\nEOF\n");
        CHECK(parse_tsplib(f).coords.size() == 2);
    }
}
