#include <doctest.h>

#include "relroots/enumerate.hpp"
#include "relroots/relpoly.hpp"
#include "test_util.hpp"

using namespace relroots;
namespace tu = relroots::testutil;

namespace {

Poly P(std::vector<long long> cs) {
    std::vector<Int> v(cs.begin(), cs.end());
    return Poly(std::move(v));
}

std::vector<Int> iv(std::vector<long long> cs) { return std::vector<Int>(cs.begin(), cs.end()); }

}  // namespace

TEST_CASE("reliability: frozen closed-form cases") {
    // cycle of order 4: (1-q)^3 (1+3q)
    CHECK(reliability_poly(make_family(FamilySpec::cycle(4))) == P({1, 0, -6, 8, -3}));
    // path on 3 vertices: (1-q)^2
    CHECK(reliability_poly(make_family(FamilySpec::tree(3, FamilySpec::TreeShape::Path))) ==
          P({1, -2, 1}));
    // bundle of 3: 1 - q^3
    CHECK(reliability_poly(make_family(FamilySpec::bundle(3))) == P({1, 0, 0, -1}));
    // two components: identically zero
    CHECK(reliability_poly(Multigraph(4, {{0, 1}, {2, 3}})).is_zero());
    // single vertex: identically one
    CHECK(reliability_poly(Multigraph(1, {})) == Poly::one());
    // loops do not affect reliability
    Multigraph loopy(3, {{0, 1}, {1, 2}, {2, 0}, {1, 1}});
    CHECK(reliability_poly(loopy) == reliability_poly(make_family(FamilySpec::cycle(3))));
}

TEST_CASE("reliability: frozen engine values against subset enumeration") {
    // values computed independently by exhaustive subset enumeration
    CHECK(reliability_poly(make_family(FamilySpec::theta(1, 2, 2))) ==
          P({1, 0, -2, -4, 9, -4}));
    Multigraph k4(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    CHECK(reliability_poly(k4) == P({1, 0, 0, -4, -3, 12, -6}));
    Multigraph k5(5, {});
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j) k5.edges.emplace_back(i, j);
    CHECK(reliability_poly(k5) == P({1, 0, 0, 0, -5, 0, -10, 20, 30, -60, 24}));
}

TEST_CASE("h_vector: frozen values") {
    CHECK(h_vector(make_family(FamilySpec::cycle(6))).entries == iv({1, 5}));
    CHECK(h_vector(make_family(FamilySpec::theta(1, 2, 2))).entries == iv({1, 3, 4}));
    CHECK(h_vector(make_family(FamilySpec::pendant_cycle(2, 5))).entries == iv({1, 2}));
    CHECK(h_vector(make_family(FamilySpec::two_cycles_at_vertex(3, 3))).entries ==
          iv({1, 4, 4}));
    Multigraph k4(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    CHECK(h_vector(k4).entries == iv({1, 3, 6, 6}));
    // trees have H = (1)
    CHECK(h_vector(make_family(FamilySpec::tree(5, FamilySpec::TreeShape::Star))).entries ==
          iv({1}));
    // a loop pads the corank with a trailing zero
    Multigraph loopy(3, {{0, 1}, {1, 2}, {2, 0}, {1, 1}});
    CHECK(h_vector(loopy).entries == iv({1, 2, 0}));
    CHECK_THROWS_AS(h_vector(Multigraph(3, {{0, 1}})), std::domain_error);
}

TEST_CASE("f_vector_bruteforce: frozen values") {
    CHECK(f_vector_bruteforce(make_family(FamilySpec::cycle(4))).entries == iv({1, 4}));
    CHECK(f_vector_bruteforce(make_family(FamilySpec::theta(1, 2, 2))).entries == iv({1, 5, 8}));
    Multigraph k4(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    CHECK(f_vector_bruteforce(k4).entries == iv({1, 6, 15, 16}));
    CHECK_THROWS_AS(f_vector_bruteforce(Multigraph(3, {{0, 1}})), std::domain_error);
    Multigraph big(2, {});
    for (int i = 0; i < 26; ++i) big.edges.emplace_back(0, 1);
    CHECK_THROWS_AS(f_vector_bruteforce(big), std::domain_error);
}

TEST_CASE("closed forms match the engine") {
    std::vector<FamilySpec> specs = {
        FamilySpec::tree(6, FamilySpec::TreeShape::Path),
        FamilySpec::tree(6, FamilySpec::TreeShape::Star),
        FamilySpec::cycle(2),
        FamilySpec::cycle(7),
        FamilySpec::bundle(1),
        FamilySpec::bundle(4),
        FamilySpec::bundle(10),
        FamilySpec::pendant_cycle(3, 7),
        FamilySpec::pendant_cycle(1, 4),
    };
    for (const auto& s : specs) CHECK(closed_form(s) == reliability_poly(make_family(s)));
    CHECK(closed_form(FamilySpec::tree(6, FamilySpec::TreeShape::Path)) ==
          Poly::one_minus_q_to(5));
    CHECK(closed_form(FamilySpec::bundle(4)) == P({1, 0, 0, 0, -1}));
    CHECK(closed_form(FamilySpec::pendant_cycle(3, 7)) ==
          Poly::one_minus_q_to(6) * P({1, 3}));
    CHECK_THROWS_AS(closed_form(FamilySpec::theta(1, 2, 2)), std::domain_error);
    CHECK_THROWS_AS(closed_form(FamilySpec::two_cycles_at_vertex(3, 4)), std::domain_error);
}

TEST_CASE("oracle equivalence on the small census") {
    ReliabilityEngine engine;
    for (int n = 2; n <= 5; ++n) {
        for (const auto& g : enum_connected_simple(n).graphs) {
            Poly rel = engine.reliability(g);
            FVector brute = f_vector_bruteforce(g);
            CHECK(f_vector_from_poly(rel, g.size(), g.corank()) == brute);
            CHECK(h_vector(g, engine) == f_to_h(brute));
        }
    }
}

TEST_CASE("oracle equivalence on random multigraphs") {
    ReliabilityEngine engine;
    int done = 0;
    while (done < 120) {
        Multigraph g = tu::random_connected_multigraph(6, 6, true);
        if (g.size() > 11) continue;
        ++done;
        Poly rel = engine.reliability(g);
        FVector brute = f_vector_bruteforce(g);
        CHECK(f_vector_from_poly(rel, g.size(), g.corank()) == brute);
        CHECK(h_vector(g, engine) == f_to_h(brute));
    }
}

TEST_CASE("deletion-contraction identity") {
    ReliabilityEngine engine;
    for (int trial = 0; trial < 80; ++trial) {
        Multigraph g = tu::random_connected_multigraph(7, 5, true);
        Poly rel = engine.reliability(g);
        for (int e = 0; e < g.size(); ++e) {
            if (g.is_loop(e)) continue;
            Poly del = engine.reliability(edge_minor(g, e, MinorMode::Delete));
            Poly con = engine.reliability(edge_minor(g, e, MinorMode::Contract));
            CHECK(rel == Poly::q_power(1) * del + Poly::one_minus_q_power(1) * con);
        }
    }
}

TEST_CASE("bridge factorization") {
    ReliabilityEngine engine;
    // join two random connected graphs by a bridge
    for (int trial = 0; trial < 50; ++trial) {
        Multigraph a = tu::random_connected_multigraph(5, 4, false);
        Multigraph b = tu::random_connected_multigraph(5, 4, false);
        Multigraph joined;
        joined.n = a.n + b.n;
        joined.edges = a.edges;
        for (auto [u, v] : b.edges) joined.edges.emplace_back(u + a.n, v + a.n);
        joined.edges.emplace_back(0, a.n);
        CHECK(engine.reliability(joined) ==
              Poly::one_minus_q_power(1) * engine.reliability(a) * engine.reliability(b));
    }
}

TEST_CASE("cut-vertex factorization") {
    ReliabilityEngine engine;
    // glue two random connected graphs at one shared vertex
    for (int trial = 0; trial < 50; ++trial) {
        Multigraph a = tu::random_connected_multigraph(5, 4, false);
        Multigraph b = tu::random_connected_multigraph(5, 4, false);
        Multigraph glued;
        glued.n = a.n + b.n - 1;
        glued.edges = a.edges;
        auto remap = [&](int x) { return x == 0 ? 0 : x + a.n - 1; };
        for (auto [u, v] : b.edges) glued.edges.emplace_back(remap(u), remap(v));
        CHECK(engine.reliability(glued) == engine.reliability(a) * engine.reliability(b));
    }
    // two cycles of order 4 joined at a vertex: Rel = Rel(C4)^2
    Multigraph tc = make_family(FamilySpec::two_cycles_at_vertex(4, 4));
    Poly c4 = engine.reliability(make_family(FamilySpec::cycle(4)));
    CHECK(engine.reliability(tc) == c4 * c4);
}

TEST_CASE("eval_exact basics") {
    Poly rel = reliability_poly(make_family(FamilySpec::cycle(4)));
    CHECK(eval_exact(rel, Rat(-1, 3)) == 0);
    CHECK(eval_exact(rel, Rat(1)) == 0);
    CHECK(eval_exact(rel, Rat(0)) == 1);
    CHECK(eval_exact(rel, Rat(1, 2)) == Rat(5, 16));
}

TEST_CASE("spanning tree counts") {
    CHECK(spanning_tree_count(make_family(FamilySpec::cycle(6))) == 6);
    Multigraph k4(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    CHECK(spanning_tree_count(k4) == 16);
    Multigraph k5(5, {});
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j) k5.edges.emplace_back(i, j);
    CHECK(spanning_tree_count(k5) == 125);
    CHECK(spanning_tree_count(make_family(FamilySpec::bundle(7))) == 7);
    CHECK(spanning_tree_count(Multigraph(1, {})) == 1);
    CHECK(spanning_tree_count(Multigraph(4, {{0, 1}, {2, 3}})) == 0);
    // loops are ignored
    CHECK(spanning_tree_count(Multigraph(2, {{0, 1}, {1, 1}})) == 1);
    // sum of H equals the tree count on random multigraphs
    ReliabilityEngine engine;
    for (int trial = 0; trial < 60; ++trial) {
        Multigraph g = tu::random_connected_multigraph(7, 6, true);
        Int total = 0;
        for (const auto& e : h_vector(g, engine).entries) total += e;
        CHECK(total == spanning_tree_count(g));
    }
}

TEST_CASE("poly memo behaves as an LRU") {
    PolyMemo memo(32);
    CHECK_FALSE(memo.get("a").has_value());
    memo.put("a", P({1, 2}));
    memo.put("b", P({3}));
    auto got = memo.get("a");
    REQUIRE(got.has_value());
    CHECK(*got == P({1, 2}));
    CHECK(memo.entry_count() == 2);
    // duplicate put keeps the first value
    memo.put("a", P({9}));
    CHECK(*memo.get("a") == P({1, 2}));
    // capacity bound: with 16 shards and capacity 32, each shard holds 2
    for (int i = 0; i < 500; ++i) memo.put("key" + std::to_string(i), P({i}));
    CHECK(memo.entry_count() <= 32);
}

TEST_CASE("shared and private caches agree") {
    ReliabilityEngine shared;
    for (int trial = 0; trial < 30; ++trial) {
        Multigraph g = tu::random_connected_multigraph(7, 6, true);
        ReliabilityEngine fresh(64);  // tiny cache forces eviction
        CHECK(shared.reliability(g) == fresh.reliability(g));
        CHECK(shared.reliability(g) == reliability_poly(g));
    }
}
