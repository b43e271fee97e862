#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <sstream>

#include "curvecount/cache_io.hpp"
#include "curvecount/degrees.hpp"
#include "curvecount/genera.hpp"
#include "curvecount/trace.hpp"

using namespace curvecount;

TEST_CASE("cache round trip") {
    CountEngine engine;
    engine.degree_count(3, 2, {2, 2, 2, 2, 2, 2, 2, 2});
    engine.degree_count(3, 1, {3, 3});
    std::ostringstream os;
    save_cache(engine.memo(), os);

    MemoStore loaded;
    std::istringstream is(os.str());
    load_cache(loaded, is);
    CHECK(loaded.size() == engine.memo().size());
    for (const auto& [key, value] : engine.memo().entries()) {
        auto hit = loaded.lookup(key);
        REQUIRE(hit.has_value());
        CHECK(*hit == value);
    }

    // a second save is byte-identical
    std::ostringstream os2;
    save_cache(loaded, os2);
    CHECK(os.str() == os2.str());
}

TEST_CASE("corrupt caches are rejected with the line number") {
    auto reject = [](const std::string& text, long line) {
        MemoStore memo;
        std::istringstream is(text);
        try {
            load_cache(memo, is);
            FAIL("expected CacheError");
        } catch (const CacheError& e) {
            CHECK(e.line == line);
        }
    };
    reject("wrong header\n", 1);
    reject("curvecount-cache v1\n3 1 3,3\n", 2);                       // missing value
    reject("curvecount-cache v1\n3 1 3,3 1 9\n", 2);                   // trailing field
    reject("curvecount-cache v1\n3 1 3,3 -1\n", 2);                    // negative count
    reject("curvecount-cache v1\n3 1 3,3 x\n", 2);                     // non-integer
    reject("curvecount-cache v1\n3 1 2,3 1\n", 2);                     // not descending
    reject("curvecount-cache v1\n3 1 3,1 1\n", 2);                     // hyperplane entry
    reject("curvecount-cache v1\n3 1 4,2 0\n", 2);                     // entry above n
    reject("curvecount-cache v1\n3 1 3,3 1\n3 1 3,3 1\n", 3);          // duplicate key
    reject("curvecount-cache v1\n3 1 3,2 1\n", 2);                     // excess != 0
    reject("curvecount-cache v1\n3 1 3,3 1\n2 1 3,3 1\n", 3);          // n < 3
}

TEST_CASE("count trace structure") {
    CountEngine engine;
    TraceBuilder tr;
    auto [value, root] = engine.degree_count_traced(Problem(3, 2, {3, 3, 3, 2, 2}), tr);
    CHECK(value == 1);
    REQUIRE(root);
    CHECK(root->key == "3 2 3,3,3,2,2");
    CHECK(root->rule == rule::kWeightShift);
    CHECK(root->value == 1);

    const std::set<std::string> allowed = {
        rule::kBaseSchubert, rule::kWeightShift, rule::kSectionM,  rule::kSplitting,
        rule::kSquareCheck,  rule::kPointSquareCheck, rule::kGenus, rule::kHyperplane,
        rule::kVanish};
    const std::set<std::string> leaf_ok = {rule::kBaseSchubert, rule::kVanish};

    std::size_t nodes = 0;
    auto walk = [&](auto&& self, const TraceNode& node) -> void {
        ++nodes;
        CHECK(allowed.count(node.rule) == 1);
        if (node.children.empty()) {
            INFO("leaf key " << node.key << " rule " << node.rule);
            CHECK(leaf_ok.count(node.rule) == 1);
        }
        if (node.rule == rule::kHyperplane) CHECK(node.children.size() == 1);
        for (const auto& c : node.children) self(self, *c);
    };
    walk(walk, *root);
    CHECK(nodes > 10);

    auto j = trace_to_json(*root);
    CHECK(j["key"] == "3 2 3,3,3,2,2");
    CHECK(j["value"] == "1");
    CHECK(j["children"].is_array());
}

TEST_CASE("trace of vanishing and hyperplane-normalized queries") {
    CountEngine engine;
    {
        TraceBuilder tr;
        auto [value, root] = engine.degree_count_traced(Problem(3, 2, {4, 3, 2, 2, 2}), tr);
        CHECK(value == 0);
        CHECK(root->rule == rule::kVanish);
        CHECK(root->children.empty());
    }
    {
        TraceBuilder tr;
        auto [value, root] = engine.degree_count_traced(Problem(3, 1, {1, 3, 3}), tr);
        CHECK(value == 1);
        CHECK(root->rule == rule::kHyperplane);
        REQUIRE(root->children.size() == 1);
        CHECK(root->children[0]->rule == rule::kBaseSchubert);
        CHECK(root->children[0]->key == "3 1 3,3");
    }
}

TEST_CASE("traced and plain evaluation agree") {
    CountEngine plain;
    CountEngine traced_engine;
    TraceBuilder tr;
    Problem p(3, 2, {2, 2, 2, 2, 2, 2, 2, 2});
    auto [tv, root] = traced_engine.degree_count_traced(p, tr);
    CHECK(tv == plain.degree_count(p));
    CHECK(root->value == tv);
}

TEST_CASE("genus trace") {
    CountEngine engine;
    TraceBuilder tr;
    TracePtr node;
    Problem p(3, 1, {2, 2, 2});
    Count deg_k = canonical_degree(engine, p, choose_thickening(engine, p), 0, &tr, &node);
    CHECK(deg_k == -2);
    REQUIRE(node);
    CHECK(node->rule == rule::kGenus);
    CHECK_FALSE(node->children.empty());
}

TEST_CASE("check trace tags") {
    CountEngine engine;
    TraceBuilder tr;
    TracePtr node;
    Count residual = engine.square_identity_residual(Problem(3, 2, {3, 3, 3, 2}), &tr, &node);
    CHECK(residual == 0);
    REQUIRE(node);
    CHECK(node->rule == rule::kSquareCheck);
    TracePtr node8;
    engine.point_square_identity_residual(Problem(3, 2, {3, 3, 3, 2}), &tr, &node8);
    REQUIRE(node8);
    CHECK(node8->rule == rule::kPointSquareCheck);
}

TEST_CASE("memo concurrency invariants") {
    MemoStore memo;
    MemoKey key{3, 2, {3, 3, 3, 2, 2}};
    memo.store(key, 1);
    memo.store(key, 1);  // idempotent rewrite
    CHECK(memo.size() == 1);
    CHECK(memo.lookup(key).value() == 1);
    CHECK_THROWS_AS(memo.store(key, -1), ConsistencyError);
}
