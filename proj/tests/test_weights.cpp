#include <algorithm>
#include <set>

#include "doctest.h"
#include "mopn/weights.hpp"

using namespace mopn;

TEST_CASE("simplex_lattice small case") {
    const WeightSet s = simplex_lattice(2, 4);
    REQUIRE(s.size() == 5);
    const std::vector<std::vector<double>> expect = {
        {1, 0}, {0.75, 0.25}, {0.5, 0.5}, {0.25, 0.75}, {0, 1}};
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(s.vectors[i].w == expect[i]);
    }
}

TEST_CASE("simplex_lattice counts match C(H+M-1, M-1)") {
    CHECK(simplex_lattice(2, 99).size() == 100);
    CHECK(simplex_lattice(3, 13).size() == 105);
    CHECK(simplex_lattice(3, 4).size() == 15);
}

TEST_CASE("lattice structure") {
    const WeightSet s = simplex_lattice(3, 6);

    SUBCASE("components are multiples of 1/H summing to 1 in rational form") {
        for (const auto& v : s.vectors) {
            std::size_t numerator_sum = 0;
            for (double c : v.w) {
                const double scaled = c * 6.0;
                const auto k = static_cast<std::size_t>(std::lround(scaled));
                CHECK(std::abs(scaled - static_cast<double>(k)) < 1e-12);
                numerator_sum += k;
            }
            CHECK(numerator_sum == 6);  // exact rational sum
        }
    }

    SUBCASE("no duplicates and lexicographic descending order") {
        std::set<std::vector<double>> seen;
        for (const auto& v : s.vectors) CHECK(seen.insert(v.w).second);
        for (std::size_t i = 0; i + 1 < s.size(); ++i) {
            CHECK(s.vectors[i].w > s.vectors[i + 1].w);
        }
    }

    SUBCASE("set is symmetric under coordinate permutation") {
        std::set<std::vector<double>> all;
        for (const auto& v : s.vectors) all.insert(v.w);
        for (const auto& v : s.vectors) {
            std::vector<double> perm = {v.w[2], v.w[0], v.w[1]};
            CHECK(all.count(perm) == 1);
        }
    }
}

TEST_CASE("simplex_lattice argument validation") {
    CHECK_THROWS_AS(simplex_lattice(1, 5), InvalidArgument);
    CHECK_THROWS_AS(simplex_lattice(2, 0), InvalidArgument);
}

TEST_CASE("weight set CSV export") {
    const WeightSet s = simplex_lattice(2, 2);
    CHECK(s.to_csv() == "1,0\n0.5,0.5\n0,1\n");
}
