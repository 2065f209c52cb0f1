#include "cutcraft/twincover.hpp"

#include <algorithm>
#include <array>
#include <climits>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace cutcraft {

bool true_twin_edge(const Graph& g, int u, int v) {
    if (!g.has_edge(u, v)) return false;
    std::vector<int> nu = g.adj[u], nv = g.adj[v];
    nu.push_back(u);
    nv.push_back(v);
    std::sort(nu.begin(), nu.end());
    std::sort(nv.begin(), nv.end());
    return nu == nv;
}

TwinCoverStructure compute_twin_cover(const Graph& g, int max_size) {
    if (!is_connected(g)) throw std::runtime_error("disconnected input graph");
    std::vector<std::pair<int, int>> hard;   // edges not between true twins
    for (auto [u, v] : g.edges)
        if (!true_twin_edge(g, u, v)) hard.push_back({u, v});

    std::vector<char> in_x(g.n, 0);
    // branch on either endpoint of the first uncovered edge, depth-limited
    std::function<bool(int)> dfs = [&](int depth) -> bool {
        const std::pair<int, int>* pick = nullptr;
        for (auto& e : hard)
            if (!in_x[e.first] && !in_x[e.second]) {
                pick = &e;
                break;
            }
        if (!pick) return true;
        if (depth == 0) return false;
        for (int w : {pick->first, pick->second}) {
            in_x[w] = 1;
            if (dfs(depth - 1)) return true;
            in_x[w] = 0;
        }
        return false;
    };
    int limit = 0;
    while (limit <= max_size && !dfs(limit)) ++limit;
    if (limit > max_size) throw BudgetExceeded("twin-cover branching cap");

    TwinCoverStructure res;
    for (int v = 0; v < g.n; ++v)
        if (in_x[v]) res.cover.push_back(v);

    // components of G - X must be cliques whose vertices share one type
    std::vector<char> seen(g.n, 0);
    for (int v0 = 0; v0 < g.n; ++v0) {
        if (in_x[v0] || seen[v0]) continue;
        std::vector<int> comp{v0};
        seen[v0] = 1;
        for (size_t i = 0; i < comp.size(); ++i)
            for (int w : g.adj[comp[i]])
                if (!in_x[w] && !seen[w]) {
                    seen[w] = 1;
                    comp.push_back(w);
                }
        std::sort(comp.begin(), comp.end());
        auto x_part = [&](int u) {
            std::vector<int> t;
            for (int w : g.adj[u])
                if (in_x[w]) t.push_back(w);
            return t;
        };
        std::vector<int> type = x_part(comp[0]);
        for (int u : comp) {
            if (x_part(u) != type) throw std::logic_error("clique members disagree on type");
            for (int u2 : comp)
                if (u2 != u && !g.has_edge(u, u2))
                    throw std::logic_error("cover residue is not a clique");
        }
        res.cliques.push_back(std::move(comp));
        res.types.push_back(std::move(type));
    }
    return res;
}

long long clique_cut_contribution(int z, int p, int a, int b) {
    if (p < 0 || p > z || a < 0 || b < 0)
        throw std::invalid_argument("bad clique contribution arguments");
    return (long long)p * (z - p) + (long long)p * a + (long long)(z - p) * b;
}

namespace {

constexpr long long kNone = LLONG_MIN / 4;

// Everything the guess loops need, with cover vertices renumbered to bits.
struct View {
    const Graph& g;
    TwinCoverStructure s;
    int nx = 0;
    std::vector<int> xid;                      // vertex -> cover bit, else -1
    std::vector<uint32_t> typeset;             // distinct type masks
    std::vector<std::vector<int>> of_type;     // typeset idx -> clique indices
    std::vector<std::pair<int, int>> xedges;   // cover-internal edges, as bits
    std::vector<char> conn_without;            // G - clique connected and non-empty
};

View make_view(const Graph& g, int max_cover) {
    View v{g, compute_twin_cover(g, max_cover), 0, {}, {}, {}, {}, {}};
    v.nx = (int)v.s.cover.size();
    v.xid.assign(g.n, -1);
    for (int i = 0; i < v.nx; ++i) v.xid[v.s.cover[i]] = i;
    for (size_t i = 0; i < v.s.cliques.size(); ++i) {
        uint32_t m = 0;
        for (int x : v.s.types[i]) m |= 1u << v.xid[x];
        auto it = std::find(v.typeset.begin(), v.typeset.end(), m);
        if (it == v.typeset.end()) {
            v.typeset.push_back(m);
            v.of_type.push_back({});
            it = std::prev(v.typeset.end());
        }
        v.of_type[it - v.typeset.begin()].push_back((int)i);
    }
    for (auto [a, b] : g.edges)
        if (v.xid[a] >= 0 && v.xid[b] >= 0) v.xedges.push_back({v.xid[a], v.xid[b]});
    for (auto& z : v.s.cliques) {
        std::vector<char> side(g.n, 1);
        for (int u : z) side[u] = 0;
        v.conn_without.push_back((int)z.size() < g.n && is_connected_subset(g, side));
    }
    return v;
}

long long xcut(const View& v, uint32_t xm) {
    long long c = 0;
    for (auto [a, b] : v.xedges) c += (xm >> a ^ xm >> b) & 1;
    return c;
}

struct Dsu {
    std::vector<int> p;
    explicit Dsu(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int a) {
        while (p[a] != a) a = p[a] = p[p[a]];
        return a;
    }
    void unite(int a, int b) { p[find(a)] = find(b); }
};

// One side of a guess is connected iff its quotient is: the chosen cover
// vertices plus one stand-in per type present on that side, where a stand-in
// touches exactly the chosen cover vertices its type contains. Sound because
// clique vertices of one type are interchangeable and cliques are internally
// connected.
bool side_connected(const View& v, uint32_t xm, uint32_t tm) {
    int nt = (int)v.typeset.size();
    Dsu d(v.nx + nt);
    for (auto [a, b] : v.xedges)
        if ((xm >> a & 1) && (xm >> b & 1)) d.unite(a, b);
    for (int t = 0; t < nt; ++t)
        if (tm >> t & 1)
            for (uint32_t r = v.typeset[t] & xm; r; r &= r - 1)
                d.unite(v.nx + t, __builtin_ctz(r));
    int root = -1;
    auto meets = [&](int node) {
        if (root < 0) {
            root = d.find(node);
            return true;
        }
        return d.find(node) == root;
    };
    for (int a = 0; a < v.nx; ++a)
        if ((xm >> a & 1) && !meets(a)) return false;
    for (int t = 0; t < nt; ++t)
        if ((tm >> t & 1) && !meets(v.nx + t)) return false;
    return true;
}

// per-clique cut contributions for a fixed X' split, by |S ∩ Z| category
struct CliqueCats {
    long long at_zero, at_full, mid;   // p = 0, p = z, best of 1..z-1
    int mid_p;                          // argmax of the middle range
};

std::vector<CliqueCats> clique_cats(const View& v, uint32_t xm) {
    std::vector<CliqueCats> cats(v.s.cliques.size());
    for (size_t t = 0; t < v.typeset.size(); ++t) {
        int a = __builtin_popcount(v.typeset[t] & ~xm & ((1u << v.nx) - 1));
        int b = __builtin_popcount(v.typeset[t] & xm);
        for (int j : v.of_type[t]) {
            int z = (int)v.s.cliques[j].size();
            CliqueCats c{clique_cut_contribution(z, 0, a, b),
                         clique_cut_contribution(z, z, a, b), kNone, -1};
            for (int p = 1; p < z; ++p) {
                long long val = clique_cut_contribution(z, p, a, b);
                if (val > c.mid) {
                    c.mid = val;
                    c.mid_p = p;
                }
            }
            cats[j] = c;
        }
    }
    return cats;
}

void append_clique_prefix(const View& v, int j, int p, std::vector<int>& out) {
    out.insert(out.end(), v.s.cliques[j].begin(), v.s.cliques[j].begin() + p);
}

std::vector<int> cover_subset(const View& v, uint32_t xm) {
    std::vector<int> out;
    for (int a = 0; a < v.nx; ++a)
        if (xm >> a & 1) out.push_back(v.s.cover[a]);
    return out;
}

void check_witness(const Graph& g, Problem p, const std::vector<int>& wit,
                   long long claimed) {
    auto side = make_side(g, wit);
    if (cut_size(g, side) != claimed || !feasible_cut(g, p, side))
        throw std::logic_error("assembled twin-cover witness does not match its value");
}

}  // namespace

SolveReport solve_cmc_twincover(const Graph& g, const Budget* budget, int max_cover) {
    if (!is_connected(g)) throw std::runtime_error("disconnected input graph");
    View v = make_view(g, max_cover);
    int nt = (int)v.typeset.size();
    if (v.nx > 30 || nt > 24) throw BudgetExceeded("twin-cover guess space too large");

    SolveReport rep;
    rep.problem = Problem::cmc;
    rep.algorithm = "twincover";
    rep.n = g.n;
    rep.m = g.m();

    long long best = 0;
    std::vector<int> bestwit;   // S = ∅ always scores 0

    // no cover vertex in S: S lives inside a single clique
    for (size_t j = 0; j < v.s.cliques.size(); ++j) {
        int z = (int)v.s.cliques[j].size(), deg = (int)v.s.types[j].size();
        for (int p = 1; p <= z; ++p) {
            long long val = clique_cut_contribution(z, p, deg, 0);
            if (val > best) {
                best = val;
                bestwit.clear();
                append_clique_prefix(v, (int)j, p, bestwit);
            }
        }
    }

    for (uint32_t xm = 1; v.nx > 0 && xm < (1u << v.nx); ++xm) {
        if (budget) budget->check("twin-cover cmc guess");
        long long xc = xcut(v, xm);
        auto cats = clique_cats(v, xm);
        // a selected type must put at least one vertex into S; charge the
        // cheapest clique for that when none prefers it on its own
        std::vector<long long> sel(nt), unsel(nt);
        for (int t = 0; t < nt; ++t) {
            long long sum0 = 0, delta = kNone;
            for (int j : v.of_type[t]) {
                long long b0 = std::max(cats[j].at_zero,
                                        std::max(cats[j].at_full, cats[j].mid));
                long long b1 = std::max(cats[j].at_full, cats[j].mid);
                sum0 += b0;
                delta = (delta == kNone) ? b0 - b1 : std::min(delta, b0 - b1);
                unsel[t] += cats[j].at_zero;
            }
            sel[t] = sum0 - delta;
        }
        for (uint32_t tm = 0; tm < (1u << nt); ++tm) {
            if (budget && (tm & 1023) == 0) budget->check("twin-cover cmc guess");
            if (!side_connected(v, xm, tm)) continue;
            long long val = xc;
            for (int t = 0; t < nt; ++t) val += (tm >> t & 1) ? sel[t] : unsel[t];
            if (val <= best) continue;
            best = val;
            bestwit = cover_subset(v, xm);
            for (int t = 0; t < nt; ++t) {
                if (!(tm >> t & 1)) continue;
                // replay the charge: argmax per clique, forcing the one
                // with the smallest unconstrained-vs-forced gap
                int forced = -1;
                long long fdelta = kNone;
                for (int j : v.of_type[t]) {
                    long long b0 = std::max(cats[j].at_zero,
                                            std::max(cats[j].at_full, cats[j].mid));
                    long long b1 = std::max(cats[j].at_full, cats[j].mid);
                    if (fdelta == kNone || b0 - b1 < fdelta) {
                        fdelta = b0 - b1;
                        forced = j;
                    }
                }
                for (int j : v.of_type[t]) {
                    int z = (int)v.s.cliques[j].size();
                    long long b0 = std::max(cats[j].at_zero,
                                            std::max(cats[j].at_full, cats[j].mid));
                    int p;
                    if (j == forced || cats[j].at_zero < b0)
                        p = (cats[j].at_full >= cats[j].mid) ? z : cats[j].mid_p;
                    else
                        p = 0;
                    append_clique_prefix(v, j, p, bestwit);
                }
            }
        }
    }

    std::sort(bestwit.begin(), bestwit.end());
    check_witness(g, Problem::cmc, bestwit, best);
    rep.optimum = best;
    rep.witness = bestwit;
    return rep;
}

SolveReport solve_mmc_twincover(const Graph& g, const Budget* budget, int max_cover) {
    if (!is_connected(g)) throw std::runtime_error("disconnected input graph");
    View v = make_view(g, max_cover);
    int nt = (int)v.typeset.size();
    if (v.nx > 30 || nt > 24) throw BudgetExceeded("twin-cover guess space too large");

    SolveReport rep;
    rep.problem = Problem::mmc;
    rep.algorithm = "twincover";
    rep.n = g.n;
    rep.m = g.m();

    long long best = kNone;
    std::vector<int> bestwit;

    // boundary guesses: one side avoids the cover entirely, so it is confined
    // to a single clique; swallowing the whole clique is allowed only when
    // the rest of the graph stays connected (and non-empty)
    for (size_t j = 0; j < v.s.cliques.size(); ++j) {
        int z = (int)v.s.cliques[j].size(), deg = (int)v.s.types[j].size();
        for (int p = 1; p <= z; ++p) {
            if (p == z && !v.conn_without[j]) continue;
            long long val = clique_cut_contribution(z, p, deg, 0);
            if (val > best) {
                best = val;
                bestwit.clear();
                append_clique_prefix(v, (int)j, p, bestwit);
            }
        }
        if (v.nx == 0) continue;   // complement-confined case coincides above
        for (int q = 1; q <= z; ++q) {
            if (q == z && !v.conn_without[j]) continue;
            long long val = clique_cut_contribution(z, z - q, 0, deg);
            if (val > best) {
                best = val;
                std::vector<char> drop(g.n, 0);
                for (int i = 0; i < q; ++i) drop[v.s.cliques[j][i]] = 1;
                bestwit.clear();
                for (int u = 0; u < g.n; ++u)
                    if (!drop[u]) bestwit.push_back(u);
            }
        }
    }

    // proper non-empty cover split; each type goes all-S, all-complement, or
    // mixed, and both sides must come out connected
    uint32_t full = v.nx > 0 ? (1u << v.nx) - 1 : 0;
    std::vector<int> asg(nt, 0);
    for (uint32_t xm = 1; v.nx > 1 && xm < full; ++xm) {
        long long xc = xcut(v, xm);
        auto cats = clique_cats(v, xm);
        std::fill(asg.begin(), asg.end(), 0);
        long long guesses = 1;
        for (int t = 0; t < nt; ++t) guesses *= 3;
        for (long long gi = 0; gi < guesses; ++gi) {
            if (budget && (gi & 63) == 0) budget->check("twin-cover mmc guess");
            uint32_t stm = 0, ctm = 0;
            long long val = xc;
            bool ok = true;
            for (int t = 0; t < nt && ok; ++t) {
                if (asg[t] == 0) {   // type entirely inside S
                    stm |= 1u << t;
                    for (int j : v.of_type[t]) val += cats[j].at_full;
                } else if (asg[t] == 1) {   // entirely outside S
                    ctm |= 1u << t;
                    for (int j : v.of_type[t]) val += cats[j].at_zero;
                } else {   // both sides touched, best split via a flag DP
                    stm |= 1u << t;
                    ctm |= 1u << t;
                    long long dp[4] = {0, kNone, kNone, kNone};
                    for (int j : v.of_type[t]) {
                        long long nx2[4] = {kNone, kNone, kNone, kNone};
                        for (int f = 0; f < 4; ++f) {
                            if (dp[f] == kNone) continue;
                            auto relax = [&](int flag, long long add) {
                                if (add > kNone && dp[f] + add > nx2[f | flag])
                                    nx2[f | flag] = dp[f] + add;
                            };
                            relax(1, cats[j].at_full);
                            relax(2, cats[j].at_zero);
                            relax(3, cats[j].mid);
                        }
                        std::copy(nx2, nx2 + 4, dp);
                    }
                    if (dp[3] == kNone)
                        ok = false;
                    else
                        val += dp[3];
                }
            }
            if (ok && val > best && side_connected(v, xm, stm) &&
                side_connected(v, full & ~xm, ctm)) {
                best = val;
                bestwit = cover_subset(v, xm);
                for (int t = 0; t < nt; ++t) {
                    if (asg[t] == 0) {
                        for (int j : v.of_type[t])
                            append_clique_prefix(v, j, (int)v.s.cliques[j].size(), bestwit);
                    } else if (asg[t] == 2) {
                        // re-run the DP with choice tracking
                        int k = (int)v.of_type[t].size();
                        std::vector<std::array<long long, 4>> dp(k + 1,
                            {kNone, kNone, kNone, kNone});
                        std::vector<std::array<std::pair<int, int>, 4>> from(k);
                        dp[0][0] = 0;
                        for (int i = 0; i < k; ++i) {
                            int j = v.of_type[t][i];
                            from[i].fill({-1, -1});
                            long long cat[3] = {cats[j].at_full, cats[j].at_zero,
                                                cats[j].mid};
                            int flg[3] = {1, 2, 3};
                            for (int f = 0; f < 4; ++f) {
                                if (dp[i][f] == kNone) continue;
                                for (int c = 0; c < 3; ++c) {
                                    if (cat[c] == kNone) continue;
                                    int f2 = f | flg[c];
                                    if (dp[i][f] + cat[c] > dp[i + 1][f2]) {
                                        dp[i + 1][f2] = dp[i][f] + cat[c];
                                        from[i][f2] = {f, c};
                                    }
                                }
                            }
                        }
                        int f = 3;
                        std::vector<int> pick(k);
                        for (int i = k - 1; i >= 0; --i) {
                            auto [pf, c] = from[i][f];
                            pick[i] = c;
                            f = pf;
                        }
                        for (int i = 0; i < k; ++i) {
                            int j = v.of_type[t][i];
                            int z = (int)v.s.cliques[j].size();
                            int p = pick[i] == 0 ? z : pick[i] == 1 ? 0 : cats[j].mid_p;
                            append_clique_prefix(v, j, p, bestwit);
                        }
                    }
                }
            }
            for (int t = nt - 1; t >= 0; --t) {   // next base-3 assignment
                if (++asg[t] < 3) break;
                asg[t] = 0;
            }
        }
    }

    if (best == kNone) return rep;   // no cut at all (single vertex)
    std::sort(bestwit.begin(), bestwit.end());
    check_witness(g, Problem::mmc, bestwit, best);
    rep.optimum = best;
    rep.witness = bestwit;
    return rep;
}

}  // namespace cutcraft
