#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>

#include "cutcraft/oracle.hpp"
#include "cutcraft/twincover.hpp"
#include "testsupport.hpp"

using namespace cutcraft;

namespace {

bool is_twin_cover(const Graph& g, const std::vector<int>& x) {
    std::vector<char> in(g.n, 0);
    for (int v : x) in[v] = 1;
    for (auto [u, v] : g.edges)
        if (!in[u] && !in[v] && !true_twin_edge(g, u, v)) return false;
    return true;
}

void check_structure(const Graph& g, const TwinCoverStructure& s) {
    REQUIRE(is_twin_cover(g, s.cover));
    std::vector<int> owner(g.n, -1);
    for (int x : s.cover) owner[x] = -2;
    for (size_t i = 0; i < s.cliques.size(); ++i)
        for (int v : s.cliques[i]) {
            CHECK(owner[v] == -1);   // partition: no overlap, no cover vertex
            owner[v] = (int)i;
        }
    for (int v = 0; v < g.n; ++v) CHECK(owner[v] != -1);
    REQUIRE(s.types.size() == s.cliques.size());
    for (size_t i = 0; i < s.cliques.size(); ++i)
        for (int u : s.cliques[i]) {
            for (int v : s.cliques[i])
                if (u != v) CHECK(g.has_edge(u, v));
            std::vector<int> t;
            for (int w : g.adj[u])
                if (owner[w] == -2) t.push_back(w);
            CHECK(t == s.types[i]);
        }
}

}  // namespace

TEST_CASE("twin edges and named covers") {
    auto p3 = ts::path(3);
    CHECK(!true_twin_edge(p3, 0, 1));
    CHECK(!true_twin_edge(p3, 0, 2));   // not even an edge
    CHECK(true_twin_edge(ts::clique(2), 0, 1));
    auto k4 = ts::clique(4);
    for (int u = 0; u < 4; ++u)
        for (int v = u + 1; v < 4; ++v) CHECK(true_twin_edge(k4, u, v));

    for (int n : {2, 3, 4, 5, 6}) {
        auto s = compute_twin_cover(ts::clique(n));
        CHECK(s.cover.empty());
        REQUIRE(s.cliques.size() == 1);
        CHECK((int)s.cliques[0].size() == n);
        CHECK(s.types[0].empty());
    }
    auto c4 = compute_twin_cover(ts::cycle(4));
    CHECK((int)c4.cover.size() == 2);
    auto sp3 = compute_twin_cover(ts::path(3));
    CHECK(sp3.cover == std::vector<int>{1});
    check_structure(ts::path(3), sp3);
    check_structure(ts::cycle(4), c4);
}

TEST_CASE("cover is minimum; residue structure is sound; tc <= vc") {
    for (int n = 1; n <= 5; ++n)
        for (const Graph& g : ts::connected_graphs(n, 100000)) {
            auto s = compute_twin_cover(g);
            check_structure(g, s);
            CHECK((int)s.cover.size() == ts::brute_twin_cover(g));
            CHECK((int)s.cover.size() <= ts::brute_vertex_cover(g));
            // nothing smaller passes the definition
            for (uint32_t x = 0; x < (1u << g.n); ++x) {
                if (__builtin_popcount(x) >= (int)s.cover.size()) continue;
                std::vector<int> xs;
                for (int v = 0; v < g.n; ++v)
                    if (x >> v & 1) xs.push_back(v);
                CHECK(!is_twin_cover(g, xs));
            }
        }
    Rng rng(21);
    for (int it = 0; it < 20; ++it) {
        Graph g = ts::random_connected(9, 0.4, rng);
        auto s = compute_twin_cover(g);
        check_structure(g, s);
        CHECK((int)s.cover.size() == ts::brute_twin_cover(g));
    }
}

TEST_CASE("branching cap") {
    auto p8 = ts::path(8);   // paths of length >= 2 have no twin edges
    CHECK((int)compute_twin_cover(p8, 16).cover.size() == 4);
    CHECK_THROWS_AS(compute_twin_cover(p8, 3), BudgetExceeded);
}

TEST_CASE("per-clique contribution formula") {
    CHECK(clique_cut_contribution(3, 1, 1, 2) == 7);
    for (int z = 0; z <= 6; ++z)
        for (int a = 0; a <= 3; ++a)
            for (int b = 0; b <= 3; ++b) {
                CHECK(clique_cut_contribution(z, 0, a, b) == (long long)z * b);
                CHECK(clique_cut_contribution(z, z, a, b) == (long long)z * a);
            }
    CHECK_THROWS(clique_cut_contribution(2, 3, 0, 0));
    CHECK_THROWS(clique_cut_contribution(2, -1, 0, 0));
}

TEST_CASE("named optima") {
    CHECK(*solve_cmc_twincover(ts::clique(4)).optimum == 4);
    CHECK(*solve_cmc_twincover(ts::cycle(4)).optimum == 2);
    CHECK(*solve_cmc_twincover(ts::star(5)).optimum == 5);
    CHECK(*solve_mmc_twincover(ts::clique(4)).optimum == 4);
    CHECK(*solve_mmc_twincover(ts::path(3)).optimum == 1);
    CHECK(*solve_mmc_twincover(ts::cycle(4)).optimum == 2);
}

TEST_CASE("solvers match the oracle exhaustively") {
    for (int n = 1; n <= 5; ++n)
        for (const Graph& g : ts::connected_graphs(n, 100000)) {
            std::string gtext = emit_graph(g);
            CAPTURE(gtext);
            for (Problem p : {Problem::cmc, Problem::mmc}) {
                auto want = oracle(g, p);
                auto got = p == Problem::cmc ? solve_cmc_twincover(g)
                                             : solve_mmc_twincover(g);
                REQUIRE(want.optimum.has_value() == got.optimum.has_value());
                if (want.optimum) CHECK(*got.optimum == *want.optimum);
                std::string why;
                CHECK(verify_report(g, got, &why));
                CAPTURE(why);
            }
        }
    int checked = 0;
    for (const Graph& g : ts::connected_graphs(6, 1200)) {
        auto c = solve_cmc_twincover(g), m = solve_mmc_twincover(g);
        CHECK(*c.optimum == *oracle(g, Problem::cmc).optimum);
        CHECK(*m.optimum == *oracle(g, Problem::mmc).optimum);
        CHECK(verify_report(g, c));
        CHECK(verify_report(g, m));
        ++checked;
    }
    CHECK(checked == 1200);
}

TEST_CASE("solvers match the oracle on random graphs") {
    Rng rng(4242);
    for (int it = 0; it < 40; ++it) {
        int n = 8 + (int)rng.below(5);
        Graph g = ts::random_connected(n, 0.3, rng);
        std::string gtext = emit_graph(g);
        CAPTURE(gtext);
        auto c = solve_cmc_twincover(g), m = solve_mmc_twincover(g);
        CHECK(*c.optimum == *oracle(g, Problem::cmc).optimum);
        CHECK(*m.optimum == *oracle(g, Problem::mmc).optimum);
        CHECK(verify_report(g, c));
        CHECK(verify_report(g, m));
    }
}

TEST_CASE("swallowing a whole clique must keep the complement connected") {
    // x,y form the cover; {a,b} is a clique of type {x,y}; x has no other
    // neighbors, so S = {a,b} strands x on the complement side
    Graph g = Graph::from_edges(5, {{2, 3}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {1, 4}});
    auto s = compute_twin_cover(g);
    CHECK(s.cover == std::vector<int>{0, 1});
    for (Problem p : {Problem::cmc, Problem::mmc}) {
        auto want = oracle(g, p);
        auto got = p == Problem::cmc ? solve_cmc_twincover(g) : solve_mmc_twincover(g);
        CHECK(*got.optimum == *want.optimum);
        CHECK(verify_report(g, got));
    }
}

TEST_CASE("degenerate and invalid inputs") {
    Graph g1(1);
    auto c = solve_cmc_twincover(g1);
    REQUIRE(c.optimum.has_value());
    CHECK(*c.optimum == 0);
    CHECK(c.witness->empty());
    CHECK(!solve_mmc_twincover(g1).optimum.has_value());
    CHECK(*solve_cmc_twincover(ts::clique(2)).optimum == 1);
    CHECK(*solve_mmc_twincover(ts::clique(2)).optimum == 1);

    Graph dis = Graph::from_edges(4, {{0, 1}, {2, 3}});
    CHECK_THROWS(solve_cmc_twincover(dis));
    CHECK_THROWS(compute_twin_cover(dis));

    Budget b = Budget::from_ms(0);
    CHECK_THROWS_AS(solve_cmc_twincover(ts::cycle(6), &b), BudgetExceeded);
}
