#include <catch2/catch_amalgamated.hpp>

#include "curvecount/boundary.hpp"
#include "curvecount/degrees.hpp"
#include "curvecount/schubert.hpp"

using namespace curvecount;

namespace {

// Degree-1 evaluator sufficient for the d = 2 families below; keeps the
// boundary tests independent of the shift-chain recursion.
Count line_evaluator(const Problem& p) {
    REQUIRE(excess_dimension(p) == 0);
    auto canon = canonicalize(p);
    if (canon.vanishes) return 0;
    REQUIRE(canon.problem.d == 1);
    return canon.factor * line_count(canon.problem.n, canon.problem.conds);
}

const CountFn kLineFn = line_evaluator;

}  // namespace

TEST_CASE("no splittings at degree 1") {
    Problem p(3, 1, {2, 2, 2});
    CHECK(enumerate_splittings(p, 0, std::nullopt, kLineFn).empty());
    CHECK(section_dot_R(p, 0, 1, kLineFn) == 0);
    CHECK(boundary_square_sum(p, 0, kLineFn) == 0);
    CHECK(boundary_linear_sum(Problem(3, 1, {3, 2}), 0, 1, kLineFn) == 0);
}

TEST_CASE("seven-line conic family") {
    Problem p(3, 2, {2, 2, 2, 2, 2, 2, 2});
    REQUIRE(excess_dimension(p) == 1);

    SECTION("pinned enumeration: 20 splittings of weight 4") {
        auto splittings = enumerate_splittings(p, 0, 1, kLineFn);
        CHECK(splittings.size() == 20);
        std::size_t size3 = 0, size4 = 0;
        for (const auto& s : splittings) {
            CHECK(s.d1 == 1);
            CHECK(s.d2 == 1);
            CHECK(s.c1 + s.c2 == 3);
            CHECK(s.weight == 4);
            if (s.side1.size() == 3) ++size3;
            if (s.side1.size() == 4) ++size4;
        }
        CHECK(size3 == 10);
        CHECK(size4 == 10);
    }

    SECTION("single-pin enumeration: 35 splittings") {
        auto splittings = enumerate_splittings(p, 0, std::nullopt, kLineFn);
        CHECK(splittings.size() == 35);
    }

    SECTION("sums") {
        CHECK(section_dot_R(p, 0, 1, kLineFn) == 80);
        CHECK(boundary_linear_sum(p, 0, 1, kLineFn) == 80);
        CHECK(boundary_square_sum(p, 0, kLineFn) == 140);
    }

    SECTION("side-swap symmetry") {
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = i + 1; j < 4; ++j)
                CHECK(section_dot_R(p, i, j, kLineFn) == section_dot_R(p, j, i, kLineFn));
    }
}

TEST_CASE("splitting subqueries are generated sound") {
    // A mixed-codimension family; weights pass through the evaluator,
    // which re-asserts excess 0 and degree 1 on every subquery.
    Problem p(3, 2, {3, 3, 2, 2, 2});
    REQUIRE(excess_dimension(p) == 1);
    auto splittings = enumerate_splittings(p, 0, 1, kLineFn);
    CHECK_FALSE(splittings.empty());
    for (const auto& s : splittings) {
        CHECK(s.delta1 >= 0);
        CHECK(s.delta1 <= p.n - 2);
        CHECK(s.delta2 >= 0);
        CHECK(s.delta2 <= p.n - 2);
        CHECK(s.c1 + s.c2 == p.n);
        CHECK(s.side1.size() + s.side2.size() == p.conds.size());
    }
}

TEST_CASE("excess gate") {
    CHECK_THROWS_AS(enumerate_splittings(Problem(3, 2, {2, 2}), 0, std::nullopt, kLineFn),
                    DimensionMismatch);
    CHECK_THROWS_AS(section_dot_R(Problem(3, 1, {2, 2, 2, 2}), 0, 1, kLineFn), DimensionMismatch);
}

TEST_CASE("engine-backed sums match hand enumeration") {
    CountEngine engine;
    Problem p(3, 2, {2, 2, 2, 2, 2, 2, 2});
    CHECK(engine.section_dot_R(p, 0, 1) == 80);
    CHECK(engine.boundary_linear_sum(p, 0, 1) == 80);
    CHECK(engine.boundary_square_sum(p, 0) == 140);
}
