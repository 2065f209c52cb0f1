#include "cutcraft/driver.hpp"

#include <algorithm>
#include <stdexcept>

#include "cutcraft/cutcount.hpp"
#include "cutcraft/oracle.hpp"
#include "cutcraft/treedp.hpp"
#include "cutcraft/twincover.hpp"

namespace cutcraft {

WinWin win_win(const Graph& g, long long k) {
    if (!is_connected(g)) throw std::invalid_argument("disconnected input graph");
    if (k < 1) throw std::invalid_argument("k must be positive");

    WinWin out;
    if (g.n >= 2) {
        int root = 0;
        for (int v = 1; v < g.n; ++v)
            if (g.adj[v].size() > g.adj[root].size()) root = v;

        std::vector<char> in_tree(g.n, 0), internal(g.n, 0);
        in_tree[root] = 1;
        int covered = 1;
        while (covered < g.n) {
            int best = -1, gain = 0;
            for (int u = 0; u < g.n; ++u) {
                if (!in_tree[u]) continue;
                int c = 0;
                for (int w : g.adj[u]) c += !in_tree[w];
                if (c > gain) gain = c, best = u;
            }
            internal[best] = 1;
            for (int w : g.adj[best])
                if (!in_tree[w]) in_tree[w] = 1, ++covered;
        }

        long long leaves = 0;
        std::vector<int> s;
        for (int v = 0; v < g.n; ++v) {
            if (internal[v]) s.push_back(v);
            else ++leaves;
        }
        if (leaves >= k && !s.empty()) {
            auto side = make_side(g, s);
            long long cut = cut_size(g, side);
            if (cut >= k && is_connected_subset(g, side)) {
                out.yes = true;
                out.witness = std::move(s);
                out.cut = cut;
                return out;
            }
        }
    }
    out.fallback = heuristic_decomposition(g);
    return out;
}

KDecision solve_k(const Graph& g, Problem p, long long k, uint64_t seed,
                  const Budget* budget) {
    (void)seed;
    if (k < 1) throw std::invalid_argument("k must be positive");

    KDecision out;
    TreeDecomposition td;
    if (p == Problem::cmc) {
        auto ww = win_win(g, k);
        if (ww.yes) {
            out.yes = true;
            out.report.problem = p;
            out.report.algorithm = "winwin";
            out.report.n = g.n;
            out.report.m = g.m();
            out.report.optimum = ww.cut;
            out.report.witness = std::move(ww.witness);
            return out;
        }
        td = std::move(ww.fallback);
    } else {
        td = heuristic_decomposition(g);
    }
    out.report = solve_treedp(g, td, p, true, -1, -1, budget, nullptr, k);
    out.yes = out.report.optimum && *out.report.optimum >= k;
    return out;
}

AutoChoice auto_select(const Graph& g, Problem p) {
    AutoChoice c;
    if (g.n <= 18) {
        c.algorithm = "oracle";
        return c;
    }
    if (!problem_is_anchored(p)) {
        try {
            compute_twin_cover(g, 8);
            c.algorithm = "twincover";
            return c;
        } catch (const BudgetExceeded&) {
        }
    }
    c.td = heuristic_decomposition(g);
    c.has_td = true;
    int w = c.td.width();
    c.algorithm = w <= 7 ? "twdp" : w <= 14 ? "rank" : "cutcount";
    return c;
}

SolveReport solve_auto(const Graph& g, Problem p, const std::string& algorithm, int s, int t,
                       uint64_t seed, int repeats, const Budget* budget, SolveStats* stats,
                       const TreeDecomposition* td) {
    std::string algo = algorithm;
    TreeDecomposition own;
    if (algo.empty() || algo == "auto") {
        auto c = auto_select(g, p);
        algo = c.algorithm;
        if (c.has_td && !td) {
            own = std::move(c.td);
            td = &own;
        }
    }
    auto need_td = [&]() -> const TreeDecomposition& {
        if (!td) {
            own = heuristic_decomposition(g);
            td = &own;
        }
        return *td;
    };
    if (algo == "oracle") return oracle(g, p, s, t, 22, budget);
    if (algo == "twincover") {
        if (problem_is_anchored(p))
            throw std::invalid_argument("twin-cover solver handles unanchored problems only");
        return p == Problem::cmc ? solve_cmc_twincover(g, budget)
                                 : solve_mmc_twincover(g, budget);
    }
    if (algo == "twdp") return solve_treedp(g, need_td(), p, false, s, t, budget, stats);
    if (algo == "rank") return solve_treedp(g, need_td(), p, true, s, t, budget, stats);
    if (algo == "cutcount") {
        CutCountOptions opt;
        opt.repeats = repeats;
        opt.seed = seed;
        opt.td = td;
        opt.budget = budget;
        return solve_cutcount(g, p, opt, s, t);
    }
    throw std::invalid_argument("unknown algorithm: " + algo);
}

}  // namespace cutcraft
