#include <catch2/catch_amalgamated.hpp>

#include "curvecount/enumerate.hpp"
#include "curvecount/gw_oracle.hpp"

using namespace curvecount;

TEST_CASE("gw frozen values") {
    GwOracle oracle(3);
    CHECK(oracle.gw_invariant(1, ConditionVector({3, 3})) == 1);
    CHECK(oracle.gw_invariant(2, ConditionVector({3, 3, 3, 3})) == 0);
    CHECK(oracle.gw_invariant(2, ConditionVector({3, 3, 3, 2, 2})) == 1);
    CHECK(oracle.gw_invariant(2, ConditionVector(std::vector<int>(8, 2))) == 92);
    CHECK(oracle.gw_invariant(3, ConditionVector(std::vector<int>(12, 2))) == 80160);
}

TEST_CASE("gw matches the Schubert floor at degree 1") {
    for (int n = 3; n <= 4; ++n) {
        GwOracle oracle(n);
        for (const auto& v : canonical_vectors(n, 2 * (n - 1)))
            CHECK(oracle.gw_invariant(1, v) == line_count(n, v));
    }
}

TEST_CASE("gw divisor rule and permutation invariance") {
    GwOracle oracle(3);
    ConditionVector base(std::vector<int>(8, 2));
    Count ref = oracle.gw_invariant(2, base);
    CHECK(oracle.gw_invariant(2, base.with_entry(1)) == 2 * ref);
    // multiset input: any listing order is the same vector
    CHECK(oracle.gw_invariant(2, ConditionVector({2, 2, 2, 2, 2, 2, 2, 2})) == ref);
}

TEST_CASE("gw outputs are nonnegative across the envelope") {
    GwOracle o3(3);
    for (int d = 1; d <= 3; ++d)
        for (const auto& p : excess0_problems(3, d)) CHECK(o3.gw_invariant(d, p.conds) >= 0);
    GwOracle o4(4);
    for (int d = 1; d <= 2; ++d)
        for (const auto& p : excess0_problems(4, d)) CHECK(o4.gw_invariant(d, p.conds) >= 0);
}

TEST_CASE("gw input gates") {
    GwOracle oracle(3);
    CHECK_THROWS_AS(oracle.gw_invariant(2, ConditionVector({2, 2})), DimensionMismatch);
    CHECK_THROWS_AS(oracle.gw_invariant(5, ConditionVector(std::vector<int>(20, 2))), InvalidInput);
    GwOracle wide(5);
    CHECK_THROWS_AS(wide.gw_invariant(2, ConditionVector(std::vector<int>(14, 2))), InvalidInput);
    // vanishing insertion class
    CHECK(oracle.gw_invariant(2, ConditionVector({4, 2, 2, 2, 2, 2})) == 0);
}
