#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cutcraft/treedec.hpp"
#include "testsupport.hpp"

using namespace cutcraft;

TEST_CASE("min-fill widths on knowns") {
    CHECK(heuristic_decomposition(ts::path(3)).width() == 1);
    CHECK(heuristic_decomposition(ts::path(7)).width() == 1);
    CHECK(heuristic_decomposition(ts::cycle(4)).width() == 2);
    CHECK(heuristic_decomposition(ts::cycle(9)).width() == 2);
    CHECK(heuristic_decomposition(ts::clique(4)).width() == 3);
    CHECK(heuristic_decomposition(ts::star(6)).width() == 1);
}

TEST_CASE("heuristic decomposition validates") {
    Rng rng(5);
    for (int it = 0; it < 40; ++it) {
        Graph g = ts::random_connected(9, 0.3, rng);
        auto td = heuristic_decomposition(g);
        auto chk = validate_decomposition(g, td);
        CHECK(chk.ok);
        CHECK(td.width() >= ts::brute_treewidth(g));
    }
    CHECK_THROWS(heuristic_decomposition(Graph(3)));  // disconnected
}

TEST_CASE("validation catches broken decompositions") {
    Graph g = ts::path(4);
    auto td = heuristic_decomposition(g);
    SUBCASE("vertex dropped") {
        for (auto& b : td.bags) b.erase(std::remove(b.begin(), b.end(), 1), b.end());
        auto chk = validate_decomposition(g, td);
        CHECK(!chk.ok);
        CHECK(chk.message.find("coverage") != std::string::npos);
    }
    SUBCASE("edge uncovered") {
        // bags {0},{1},{2},{3} as a path of bags covers vertices but no edges
        TreeDecomposition t2;
        t2.n = 4;
        t2.bags = {{0}, {1}, {2}, {3}};
        t2.tree_edges = {{0, 1}, {1, 2}, {2, 3}};
        auto chk = validate_decomposition(g, t2);
        CHECK(!chk.ok);
        CHECK(chk.message.find("edge coverage") != std::string::npos);
    }
    SUBCASE("vertex subtree disconnected") {
        TreeDecomposition t2;
        t2.n = 4;
        t2.bags = {{0, 1}, {1, 2}, {2, 3}, {0, 3}};  // 0 in bags 0 and 3, not adjacent
        t2.tree_edges = {{0, 1}, {1, 2}, {2, 3}};
        auto chk = validate_decomposition(g, t2);
        CHECK(!chk.ok);
        CHECK(chk.message.find("not connected") != std::string::npos);
    }
    SUBCASE("not a tree") {
        td.tree_edges.push_back({0, 0});
        CHECK(!validate_decomposition(g, td).ok);
    }
}

TEST_CASE("td parse and canonical emit") {
    std::string text = "c hi\ns td 2 2 3\nb 1 1 2\nb 2 2 3\n1 2\n";
    auto td = parse_td(text);
    CHECK(td.n == 3);
    CHECK(td.bags.size() == 2);
    CHECK(td.bags[0] == std::vector<int>{0, 1});
    CHECK(emit_td(td) == "s td 2 2 3\nb 1 1 2\nb 2 2 3\n1 2\n");
    // round trip is bit-exact
    CHECK(emit_td(parse_td(emit_td(td))) == emit_td(td));

    CHECK_THROWS(parse_td("s td 2 2 3\nb 1 1 2\nb 2 2 5\n1 2\n"));   // vertex 5 of 3
    CHECK_THROWS(parse_td("s td 2 2 3\nb 1 1 2\nb 3 2 3\n1 2\n"));   // bag id 3 of 2
    CHECK_THROWS(parse_td("s td 2 2 3\nb 1 1 2\n1 2\n"));            // missing bag
    CHECK_THROWS(parse_td("b 1 1\n"));                               // no header
}

TEST_CASE("emit_td deterministic for heuristic output") {
    Rng rng(9);
    Graph g = ts::random_connected(10, 0.35, rng);
    auto a = emit_td(heuristic_decomposition(g));
    auto b = emit_td(heuristic_decomposition(g));
    CHECK(a == b);
}

TEST_CASE("nice decomposition structure") {
    Rng rng(13);
    for (int it = 0; it < 30; ++it) {
        Graph g = ts::random_connected(8, 0.35, rng);
        auto td = heuristic_decomposition(g);
        auto nice = to_nice(g, td);
        auto chk = validate_nice(g, nice);
        INFO(chk.message);
        CHECK(chk.ok);
        CHECK(nice.width() <= td.width());
        CHECK((int)nice.nodes.size() <= 6 * (g.n + g.m() + 1));
    }
}

TEST_CASE("anchored nice decomposition") {
    Rng rng(17);
    for (int it = 0; it < 30; ++it) {
        Graph g = ts::random_connected(8, 0.35, rng);
        auto td = heuristic_decomposition(g);
        int s = (int)rng.below(g.n), t;
        do t = (int)rng.below(g.n); while (t == s);
        auto nice = to_nice(g, td, s, t);
        auto chk = validate_nice(g, nice);
        INFO(chk.message);
        CHECK(chk.ok);
        CHECK(nice.width() <= td.width() + 2);
        // root and leaves carry exactly the anchors
        std::vector<int> base{std::min(s, t), std::max(s, t)};
        CHECK(nice.nodes[nice.root].bag == base);
        for (auto& nd : nice.nodes)
            if (nd.kind == NiceKind::Leaf) CHECK(nd.bag == base);
    }
    CHECK_THROWS(to_nice(ts::path(4), heuristic_decomposition(ts::path(4)), 2, 2));
}

TEST_CASE("nice transform on supplied decomposition") {
    // a hand-rolled decomposition with a branching bag tree
    Graph g = Graph::from_edges(6, {{0, 1}, {1, 2}, {1, 3}, {3, 4}, {3, 5}, {4, 5}});
    TreeDecomposition td;
    td.n = 6;
    td.bags = {{0, 1}, {1, 2}, {1, 3}, {3, 4, 5}};
    td.tree_edges = {{0, 2}, {1, 2}, {2, 3}};
    REQUIRE(validate_decomposition(g, td).ok);
    auto nice = to_nice(g, td);
    auto chk = validate_nice(g, nice);
    INFO(chk.message);
    CHECK(chk.ok);
    bool has_join = false;
    for (auto& nd : nice.nodes) has_join |= nd.kind == NiceKind::Join;
    CHECK(has_join);
}

TEST_CASE("nice transform rejects invalid input") {
    Graph g = ts::path(4);
    TreeDecomposition td;
    td.n = 4;
    td.bags = {{0, 1}, {2, 3}};
    td.tree_edges = {{0, 1}};
    CHECK(!validate_decomposition(g, td).ok);  // edge 1-2 uncovered
    CHECK_THROWS(to_nice(g, td));
}
