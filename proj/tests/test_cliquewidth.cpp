#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "cutcraft/cliquewidth.hpp"
#include "cutcraft/oracle.hpp"
#include "cutcraft/report.hpp"
#include "testsupport.hpp"

using namespace cutcraft;

namespace {

bool same_graph(const Graph& a, const Graph& b) {
    return a.n == b.n && a.edges == b.edges;
}

std::vector<int> leafset(const DecompositionTree& t, int v) {
    std::vector<int> out;
    std::vector<int> st{v};
    while (!st.empty()) {
        int x = st.back();
        st.pop_back();
        if (t.nodes[x].child1 < 0) out.push_back(t.nodes[x].vertex);
        else {
            st.push_back(t.nodes[x].child1);
            st.push_back(t.nodes[x].child2);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// classes at every node must partition the leaf set below it, grouping
// vertices exactly by their neighborhoods outside that leaf set
void check_tree_classes(const Graph& g, const DecompositionTree& t) {
    std::vector<int> all = leafset(t, t.root);
    std::vector<int> want(g.n);
    for (int i = 0; i < g.n; ++i) want[i] = i;
    REQUIRE(all == want);
    for (size_t v = 0; v < t.nodes.size(); ++v) {
        std::vector<int> L = leafset(t, (int)v);
        std::vector<char> inside(g.n, 0);
        for (int u : L) inside[u] = 1;
        std::vector<int> flat;
        std::map<std::vector<int>, std::set<size_t>> sig_to_class;
        for (size_t c = 0; c < t.nodes[v].classes.size(); ++c) {
            REQUIRE(!t.nodes[v].classes[c].empty());
            for (int u : t.nodes[v].classes[c]) {
                flat.push_back(u);
                std::vector<int> sig;
                for (int w : g.adj[u])
                    if (!inside[w]) sig.push_back(w);
                sig_to_class[sig].insert(c);
            }
        }
        std::sort(flat.begin(), flat.end());
        REQUIRE(flat == L);
        // same signature -> same class (maximality), one signature per class
        // (soundness)
        REQUIRE(sig_to_class.size() == t.nodes[v].classes.size());
        for (auto& [sig, cls] : sig_to_class) CHECK(cls.size() == 1);
    }
}

void check_against_oracle(const Graph& g, const CwExpression& e) {
    std::string gtext = emit_graph(g);
    CAPTURE(gtext);
    DecompositionTree t = build_decomposition_tree(g, e);
    check_tree_classes(g, t);
    for (Problem p : {Problem::cmc, Problem::mmc}) {
        SolveReport want = oracle(g, p);
        SolveReport got = solve_cw(g, t, p);
        CAPTURE((int)p);
        REQUIRE(got.optimum.has_value() == want.optimum.has_value());
        if (want.optimum) CHECK(*got.optimum == *want.optimum);
        std::string why;
        bool ok = verify_report(g, got, &why);
        CAPTURE(why);
        CHECK(ok);
    }
}

}  // namespace

TEST_CASE("expression parsing and evaluation") {
    Graph k2 = evaluate_cw(parse_cw("(join 1 2 (union (intro 1 1) (intro 2 2)))"));
    CHECK(same_graph(k2, ts::clique(2)));

    Graph p3 = evaluate_cw(parse_cw(
        "(join 2 3 (union (join 1 2 (union (intro 1 1) (intro 2 2))) (intro 3 3)))"));
    CHECK(same_graph(p3, ts::path(3)));

    // whitespace-insensitive
    Graph k2b = evaluate_cw(parse_cw("(join 1 2\n\t(union (intro 1 1)\n (intro 2 2)  ))"));
    CHECK(same_graph(k2b, ts::clique(2)));

    // n-ary union binarizes
    CwExpression tri = parse_cw("(union (intro 1 1) (intro 2 1) (intro 3 1))");
    int unions = 0;
    for (auto& nd : tri.nodes)
        if (nd.kind == CwExpression::Kind::unite) ++unions;
    CHECK(unions == 2);
    Graph g3 = evaluate_cw(tri);
    CHECK(g3.n == 3);
    CHECK(g3.m() == 0);

    // re-joining already joined labels is idempotent
    Graph k2c = evaluate_cw(
        parse_cw("(join 1 2 (join 1 2 (union (intro 1 1) (intro 2 2))))"));
    CHECK(same_graph(k2c, ts::clique(2)));

    CHECK_THROWS_AS(evaluate_cw(parse_cw("(union (intro 1 1) (intro 1 2))")),
                    std::runtime_error);  // vertex reintroduced
    CHECK_THROWS_AS(evaluate_cw(parse_cw("(union (intro 1 1) (intro 3 2))")),
                    std::runtime_error);  // ids must form 1..n
    CHECK_THROWS_AS(parse_cw("(intro 1 0)"), std::runtime_error);
    CHECK_THROWS_AS(parse_cw("(intro 0 1)"), std::runtime_error);
    CHECK_THROWS_AS(parse_cw("(join 1 1 (intro 1 1))"), std::runtime_error);
    CHECK_THROWS_AS(parse_cw("(union (intro 1 1))"), std::runtime_error);
    CHECK_THROWS_AS(parse_cw("(frob 1 2)"), std::runtime_error);
    CHECK_THROWS_AS(parse_cw("(intro 1 1) junk"), std::runtime_error);
    CHECK_THROWS_AS(parse_cw(""), std::runtime_error);
    CHECK_THROWS_AS(parse_cw("(join 1 2 (union (intro 1 1) (intro 2 2))"),
                    std::runtime_error);  // unbalanced
}

TEST_CASE("construction families build the named graphs") {
    for (int n = 1; n <= 7; ++n) {
        CAPTURE(n);
        CHECK(same_graph(evaluate_cw(cw_clique(n)), ts::clique(n)));
        CHECK(same_graph(evaluate_cw(cw_path(n)), ts::path(n)));
        CHECK(same_graph(evaluate_cw(cw_star(n - 1)), ts::star(n - 1)));
    }
    Rng rng(2026);
    for (int n = 1; n <= 10; ++n)
        for (int rep = 0; rep < 3; ++rep) {
            auto [e, g] = cw_random_cograph(n, rng);
            CAPTURE(n);
            CHECK(same_graph(evaluate_cw(e), g));
            CHECK(is_connected(g));
            CHECK(e.width <= 2);
        }
}

TEST_CASE("expressions round-trip through emit and parse") {
    Rng rng(7);
    std::vector<CwExpression> exprs{cw_clique(5), cw_path(6), cw_star(4)};
    exprs.push_back(cw_random_cograph(8, rng).first);
    for (const auto& e : exprs) {
        CwExpression back = parse_cw(emit_cw(e));
        CHECK(same_graph(evaluate_cw(back), evaluate_cw(e)));
        CHECK(back.nodes.size() == e.nodes.size());
    }
}

TEST_CASE("decomposition trees carve out twin-classes") {
    // cliques: every vertex looks alike from outside
    Graph k4 = ts::clique(4);
    DecompositionTree tk = build_decomposition_tree(k4, cw_clique(4));
    check_tree_classes(k4, tk);
    for (const auto& nd : tk.nodes)
        CHECK(nd.classes.size() == 1);
    CHECK(tk.width == 1);

    // path: the active endpoint of a prefix is its own class
    Graph p3 = ts::path(3);
    DecompositionTree tp = build_decomposition_tree(p3, cw_path(3));
    check_tree_classes(p3, tp);
    CHECK(tp.nodes[tp.root].classes.size() == 1);
    bool saw_prefix = false;
    for (size_t v = 0; v < tp.nodes.size(); ++v)
        if (leafset(tp, (int)v) == std::vector<int>{0, 1}) {
            saw_prefix = true;
            CHECK(tp.nodes[v].classes.size() == 2);
        }
    CHECK(saw_prefix);
    CHECK(tp.width == 2);

    // star: all leaves fall into one class once grouped together
    Graph s3 = ts::star(3);
    DecompositionTree tst = build_decomposition_tree(s3, cw_star(3));
    check_tree_classes(s3, tst);
    bool saw_leaves = false;
    for (size_t v = 0; v < tst.nodes.size(); ++v)
        if (leafset(tst, (int)v) == std::vector<int>{1, 2, 3}) {
            saw_leaves = true;
            CHECK(tst.nodes[v].classes.size() == 1);
        }
    CHECK(saw_leaves);

    // expression must actually build the graph it is paired with
    CHECK_THROWS_AS(build_decomposition_tree(ts::clique(3), cw_path(3)),
                    std::invalid_argument);
}

TEST_CASE("cross edge counting") {
    CHECK(cross_edges(2, 1, 1, 3, true) == 7);
    CHECK(cross_edges(2, 1, 1, 3, false) == 0);
    CHECK(cross_edges(4, 0, 0, 6, true) == 24);
    CHECK(cross_edges(0, 5, 0, 7, true) == 0);
    CHECK_THROWS_AS(cross_edges(-1, 0, 0, 0, true), std::invalid_argument);
}

TEST_CASE("named optima") {
    auto solve = [](const Graph& g, const CwExpression& e, Problem p) {
        return solve_cw(g, build_decomposition_tree(g, e), p);
    };
    Graph k4 = ts::clique(4);
    CHECK(*solve(k4, cw_clique(4), Problem::cmc).optimum == 4);
    CHECK(*solve(k4, cw_clique(4), Problem::mmc).optimum == 4);
    Graph p3 = ts::path(3);
    CHECK(*solve(p3, cw_path(3), Problem::cmc).optimum == 2);
    CHECK(*solve(p3, cw_path(3), Problem::mmc).optimum == 1);
    Graph s4 = ts::star(4);
    CHECK(*solve(s4, cw_star(4), Problem::cmc).optimum == 4);
    CHECK(*solve(s4, cw_star(4), Problem::mmc).optimum == 1);
    Graph k2 = ts::clique(2);
    CHECK(*solve(k2, cw_clique(2), Problem::cmc).optimum == 1);
    CHECK(*solve(k2, cw_clique(2), Problem::mmc).optimum == 1);
}

TEST_CASE("matches the oracle on structured families") {
    for (int n = 2; n <= 8; ++n) check_against_oracle(ts::clique(n), cw_clique(n));
    for (int n = 2; n <= 10; ++n) check_against_oracle(ts::path(n), cw_path(n));
    for (int l = 1; l <= 7; ++l) check_against_oracle(ts::star(l), cw_star(l));
}

TEST_CASE("matches the oracle on random cographs") {
    Rng rng(90210);
    for (int i = 0; i < 40; ++i) {
        int n = 2 + (int)rng.below(9);
        auto [e, g] = cw_random_cograph(n, rng);
        check_against_oracle(g, e);
    }
}

TEST_CASE("component tracking beats per-class connectivity flags") {
    // The best connected side here is {u,v}, whose only internal edge runs
    // between two twin-classes of the same child of the root. Reading
    // connectivity off one flag per class misses it and returns 4.
    Graph g = Graph::from_edges(
        7, {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {1, 5}, {1, 6}});
    CwExpression e = parse_cw(
        "(join 2 4 (union"
        " (join 1 3 (union (join 1 2 (union (intro 1 1) (intro 2 2)))"
        "                  (union (intro 3 3) (intro 4 3))))"
        " (union (union (intro 5 4) (intro 6 4)) (intro 7 4))))");
    REQUIRE(same_graph(evaluate_cw(e), g));
    DecompositionTree t = build_decomposition_tree(g, e);
    check_tree_classes(g, t);

    SolveReport want = oracle(g, Problem::cmc);
    REQUIRE(*want.optimum == 5);
    SolveReport got = solve_cw(g, t, Problem::cmc);
    CHECK(*got.optimum == 5);
    REQUIRE(got.witness.has_value());
    CHECK(*got.witness == std::vector<int>{0, 1});

    SolveReport wm = oracle(g, Problem::mmc);
    SolveReport gm = solve_cw(g, t, Problem::mmc);
    CHECK(*gm.optimum == *wm.optimum);
    std::string why;
    bool ok = verify_report(g, gm, &why);
    CAPTURE(why);
    CHECK(ok);
}

TEST_CASE("matches the oracle on searched expressions") {
    // exhaustive small graphs; the linear search finds a construction for
    // every one of them with four labels
    for (int n = 2; n <= 5; ++n) {
        auto graphs = ts::connected_graphs(n, 100000);
        int found = 0;
        for (const auto& g : graphs) {
            auto e = ts::find_cw_expression(g, 3);
            if (!e) e = ts::find_cw_expression(g, 4);
            if (!e) continue;
            ++found;
            CHECK(same_graph(evaluate_cw(*e), g));
            check_against_oracle(g, *e);
        }
        CAPTURE(n);
        CHECK(found == (int)graphs.size());
    }
    // denser random graphs; keep whatever the search reaches
    Rng rng(424242);
    int found = 0, tried = 0;
    while (tried < 12) {
        int n = 6 + (int)rng.below(3);
        Graph g = ts::random_connected(n, 0.35, rng);
        ++tried;
        auto e = ts::find_cw_expression(g, 3);
        if (!e) e = ts::find_cw_expression(g, 4);
        if (!e) continue;
        ++found;
        check_against_oracle(g, *e);
    }
    CHECK(found >= 8);
}

TEST_CASE("deterministic output") {
    Graph g = ts::path(7);
    DecompositionTree t = build_decomposition_tree(g, cw_path(7));
    SolveReport a = solve_cw(g, t, Problem::mmc);
    SolveReport b = solve_cw(g, t, Problem::mmc);
    CHECK(serialize_report(a) == serialize_report(b));
}

TEST_CASE("degenerates and guards") {
    // single vertex
    Graph k1(1);
    DecompositionTree t1 = build_decomposition_tree(k1, cw_clique(1));
    SolveReport c1 = solve_cw(k1, t1, Problem::cmc);
    CHECK(*c1.optimum == 0);
    CHECK(c1.witness->empty());
    SolveReport m1 = solve_cw(k1, t1, Problem::mmc);
    CHECK(!m1.optimum.has_value());
    CHECK(!m1.witness.has_value());

    // anchored tags have no root rule here
    Graph p3 = ts::path(3);
    DecompositionTree tp = build_decomposition_tree(p3, cw_path(3));
    CHECK_THROWS_AS(solve_cw(p3, tp, Problem::cmc_st), std::invalid_argument);

    // width caps
    CHECK_THROWS_AS(solve_cw(p3, tp, Problem::cmc, nullptr, 1), BudgetExceeded);
    CHECK_THROWS_AS(solve_cw(p3, tp, Problem::cmc, nullptr, 0), std::invalid_argument);
    CHECK_THROWS_AS(solve_cw(p3, tp, Problem::cmc, nullptr, 6), std::invalid_argument);

    // disconnected input
    CwExpression two = parse_cw("(union (intro 1 1) (intro 2 1))");
    Graph g2 = evaluate_cw(two);
    DecompositionTree t2 = build_decomposition_tree(g2, two);
    CHECK_THROWS_AS(solve_cw(g2, t2, Problem::cmc), std::runtime_error);

    // expired time budget
    Graph k6 = ts::clique(6);
    DecompositionTree t6 = build_decomposition_tree(k6, cw_clique(6));
    Budget b = Budget::from_ms(0);
    CHECK_THROWS_AS(solve_cw(k6, t6, Problem::mmc, &b), BudgetExceeded);

    // stats land
    SolveStats st;
    solve_cw(k6, t6, Problem::cmc, nullptr, 5, &st);
    CHECK(st.table_cells > 0);

    // tree paired with the wrong graph
    CHECK_THROWS_AS(solve_cw(ts::clique(3), t6, Problem::cmc), std::invalid_argument);
}
