#include "cutcraft/reductions.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>
#include <string>

namespace cutcraft {

namespace {

constexpr long long kVertexCap = 10'000'000;

long long isqrt_ll(long long k) {
    long long r = (long long)std::sqrt((double)k);
    while (r > 0 && r * r > k) --r;
    while ((r + 1) * (r + 1) <= k) ++r;
    return r;
}

bool is_permutation_of(const std::vector<int>& order, int k) {
    if ((int)order.size() != k) return false;
    std::vector<char> seen(k, 0);
    for (int x : order) {
        if (x < 0 || x >= k || seen[x]) return false;
        seen[x] = 1;
    }
    return true;
}

void check_cap(long long total) {
    if (total > kVertexCap) throw std::invalid_argument("generated instance would be too large");
}

std::vector<int> iota_ids(int from, int count) {
    std::vector<int> v(count);
    for (int i = 0; i < count; ++i) v[i] = from + i;
    return v;
}

}  // namespace

bool layout_ok(const MonotoneFormula& f) {
    if (f.n < 0) return false;
    const int m = f.m();
    std::vector<int> vord = f.var_order, cord = f.clause_order;
    if (vord.empty()) {
        vord.resize(f.n);
        for (int i = 0; i < f.n; ++i) vord[i] = i;
    }
    if (cord.empty()) {
        cord.resize(m);
        for (int j = 0; j < m; ++j) cord[j] = j;
    }
    if (!is_permutation_of(vord, f.n) || !is_permutation_of(cord, m)) return false;

    std::vector<int> pos(f.n);
    for (int i = 0; i < f.n; ++i) pos[vord[i]] = i;

    // Spine span of each clause, in drawing positions.
    std::vector<std::pair<int, int>> span(m);
    for (int j = 0; j < m; ++j) {
        int lo = f.n, hi = -1;
        for (int v : f.clauses[j].vars) {
            if (v < 0 || v >= f.n) return false;
            lo = std::min(lo, pos[v]);
            hi = std::max(hi, pos[v]);
        }
        span[j] = {lo, hi};
    }

    // Clauses listed spine-outward: a same-side pair must be interior-disjoint
    // or have the earlier clause nested inside the later one.
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b) {
            const auto& ca = f.clauses[cord[a]];
            const auto& cb = f.clauses[cord[b]];
            if (ca.positive != cb.positive) continue;
            auto [a1, b1] = span[cord[a]];
            auto [a2, b2] = span[cord[b]];
            if (b1 <= a2 || b2 <= a1) continue;
            if (a2 <= a1 && b1 <= b2) continue;
            return false;
        }
    return true;
}

bool formula_satisfied(const MonotoneFormula& f, const std::vector<bool>& assignment) {
    if ((int)assignment.size() != f.n)
        throw std::invalid_argument("assignment size does not match variable count");
    for (const auto& c : f.clauses) {
        bool sat = false;
        for (int v : c.vars) {
            if (v < 0 || v >= f.n) throw std::invalid_argument("clause variable out of range");
            if (assignment[v] == c.positive) sat = true;
        }
        if (!sat) return false;
    }
    return true;
}

MonotoneFormula random_monotone_formula(int n, int m, Rng& rng) {
    if (n < 1 || m < 0) throw std::invalid_argument("bad formula shape");
    for (int attempt = 0; attempt < 1000; ++attempt) {
        MonotoneFormula f;
        f.n = n;
        for (int j = 0; j < m; ++j) {
            MonotoneClause c;
            c.positive = rng.below(2) == 0;
            for (auto& v : c.vars) v = (int)rng.below((uint64_t)n);
            f.clauses.push_back(c);
        }
        // Innermost-first candidate order: narrow spans before wide ones.
        std::vector<int> order(m);
        for (int j = 0; j < m; ++j) order[j] = j;
        auto width = [&](int j) {
            auto [lo, hi] = std::minmax_element(f.clauses[j].vars.begin(), f.clauses[j].vars.end());
            return std::make_pair(*hi - *lo, *lo);
        };
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return width(a) < width(b); });
        f.clause_order = order;
        if (layout_ok(f)) return f;
    }
    throw std::runtime_error("no nesting-valid formula found for these parameters");
}

ReducedInstance gen_pm3sat_cmc(const MonotoneFormula& f, long long K, bool unsound_scale) {
    const long long n = f.n, m = f.m();
    if (n < 1) throw std::invalid_argument("formula needs at least one variable");
    if (!layout_ok(f)) throw std::invalid_argument("clause layout is not nesting-valid");
    if (K < 1) throw std::invalid_argument("K must be positive");
    const long long r = isqrt_ll(K);
    if (r * r != K) throw std::invalid_argument("K must be a perfect square");
    if (!unsound_scale && K <= m * m)
        throw std::invalid_argument("K must exceed m^2 (pass unsound_scale to override)");

    const long long total = 2 * n + m + n * K + (n - 1) + m * r + n * K * K + (n - 1) * K;
    check_cap(total);

    ReducedInstance out;
    out.problem = Problem::cmc;
    out.threshold = m * r + n * K * K + (2 * n - 1) * K + 2 * (n - 1);

    int at = 0;
    auto take = [&](const char* role, long long count) {
        out.roles[role] = iota_ids(at, (int)count);
        at += (int)count;
        return out.roles[role];
    };
    const auto lit_pos = take("literal_pos", n);
    const auto lit_neg = take("literal_neg", n);
    const auto clause = take("clause", m);
    const auto helper = take("helper", n * K);
    const auto bridge = take("bridge", n - 1);
    const auto cpend = take("clause_pendant", m * r);
    const auto hpend = take("helper_pendant", n * K * K);
    const auto bpend = take("bridge_pendant", (n - 1) * K);

    Graph g((int)total);
    for (long long i = 0; i < n; ++i)
        for (long long k = 0; k < K; ++k) {
            int h = helper[i * K + k];
            g.add_edge(h, lit_pos[i]);
            g.add_edge(h, lit_neg[i]);
            for (long long p = 0; p < K; ++p) g.add_edge(h, hpend[(i * K + k) * K + p]);
        }
    for (long long j = 0; j < m; ++j) {
        for (int v : f.clauses[j].vars)
            g.add_edge(clause[j], f.clauses[j].positive ? lit_pos[v] : lit_neg[v]);
        for (long long p = 0; p < r; ++p) g.add_edge(clause[j], cpend[j * r + p]);
    }
    for (long long i = 0; i + 1 < n; ++i) {
        int b = bridge[i];
        g.add_edge(b, lit_pos[i]);
        g.add_edge(b, lit_neg[i]);
        g.add_edge(b, lit_pos[i + 1]);
        g.add_edge(b, lit_neg[i + 1]);
        for (long long p = 0; p < K; ++p) g.add_edge(b, bpend[i * K + p]);
    }
    g.finalize();
    out.g = std::move(g);

    if (!is_bipartite(out.g) || !is_connected(out.g))
        throw std::logic_error("formula gadget lost bipartiteness or connectivity");
    return out;
}

std::vector<int> pm3sat_witness(const ReducedInstance& inst, const MonotoneFormula& f,
                                const std::vector<bool>& assignment) {
    if (!formula_satisfied(f, assignment))
        throw std::invalid_argument("assignment does not satisfy the formula");
    std::vector<int> s;
    const auto& pos = inst.roles.at("literal_pos");
    const auto& neg = inst.roles.at("literal_neg");
    if ((int)pos.size() != f.n) throw std::invalid_argument("instance does not match the formula");
    for (int i = 0; i < f.n; ++i) s.push_back(assignment[i] ? pos[i] : neg[i]);
    for (const char* role : {"clause", "helper", "bridge"})
        for (int v : inst.roles.at(role)) s.push_back(v);
    return s;
}

ReducedInstance gen_subdivision_mmc(const Graph& g) {
    if (!is_connected(g)) throw std::invalid_argument("input graph must be connected");
    check_cap((long long)g.n + g.m());

    ReducedInstance out;
    out.problem = Problem::mmc;
    Graph h(g.n + g.m());
    for (int e = 0; e < g.m(); ++e) {
        auto [u, v] = g.edges[e];
        h.add_edge(u, g.n + e);
        h.add_edge(v, g.n + e);
    }
    h.finalize();
    out.g = std::move(h);
    out.roles["original"] = iota_ids(0, g.n);
    out.roles["subdivider"] = iota_ids(g.n, g.m());

    if (!is_bipartite(out.g)) throw std::logic_error("subdivision lost bipartiteness");
    return out;
}

std::vector<int> subdivision_witness(const ReducedInstance& inst, const Graph& source,
                                     const std::vector<int>& s) {
    const auto& sub = inst.roles.at("subdivider");
    if ((int)inst.roles.at("original").size() != source.n || (int)sub.size() != source.m())
        throw std::invalid_argument("instance was not generated from this graph");
    auto side = make_side(source, s);
    std::vector<int> out = s;
    for (int e = 0; e < source.m(); ++e) {
        auto [u, v] = source.edges[e];
        if (side[u] || side[v]) out.push_back(sub[e]);
    }
    return out;
}

ReducedInstance gen_x3c_cmc(int num_elements, const std::vector<std::array<int, 3>>& triples,
                            long long M, bool unsound_scale) {
    if (num_elements < 3 || num_elements % 3 != 0)
        throw std::invalid_argument("element count must be a positive multiple of 3");
    const long long n = num_elements / 3;
    if (M < 0) M = 3 * n + 1;
    if (!unsound_scale && M < 3 * n + 1)
        throw std::invalid_argument("M below its sound bound (pass unsound_scale to override)");
    if (triples.empty()) throw std::invalid_argument("triple family is empty");
    for (const auto& t : triples) {
        for (int x : t)
            if (x < 0 || x >= num_elements) throw std::invalid_argument("triple element out of range");
        if (t[0] == t[1] || t[0] == t[2] || t[1] == t[2])
            throw std::invalid_argument("triple has repeated elements");
    }

    std::vector<long long> cov(num_elements, 0);
    for (const auto& t : triples)
        for (int x : t) ++cov[x];
    for (int x = 0; x < num_elements; ++x)
        if (cov[x] == 0) throw std::invalid_argument("every element must occur in some triple");

    // Top up coverage by appending copies; originals keep their indices.
    std::vector<std::array<int, 3>> fam = triples;
    if (!unsound_scale) {
        const long long need = 3 * (n + 2);
        for (int x = 0; x < num_elements; ++x) {
            if (cov[x] >= need) continue;
            auto pick = std::find_if(triples.begin(), triples.end(), [&](const auto& t) {
                return t[0] == x || t[1] == x || t[2] == x;
            });
            while (cov[x] < need) {
                fam.push_back(*pick);
                for (int y : *pick) ++cov[y];
            }
        }
    }

    const long long m = (long long)fam.size();
    if (m < 2 * n) throw std::invalid_argument("family too small for the clique frame (m < 2n)");
    const long long fillers = m - 2 * n;
    const long long total = 2 * (m - n) + num_elements + fillers * M;
    check_cap(total);

    ReducedInstance out;
    out.problem = Problem::cmc;
    out.threshold = (m - n) * (m - n) + 3 * (m - n) + fillers * M;

    int at = 0;
    auto take = [&](const char* role, long long count) {
        out.roles[role] = iota_ids(at, (int)count);
        at += (int)count;
        return out.roles[role];
    };
    const auto triple = take("triple", m);
    const auto filler = take("filler", fillers);
    const auto element = take("element", num_elements);
    const auto fpend = take("filler_pendant", fillers * M);

    Graph g((int)total);
    const long long cliq = 2 * (m - n);
    for (long long i = 0; i < cliq; ++i)
        for (long long j = i + 1; j < cliq; ++j) g.add_edge((int)i, (int)j);
    for (long long i = 0; i < m; ++i)
        for (int x : fam[i]) g.add_edge(triple[i], element[x]);
    for (long long i = 0; i < fillers; ++i)
        for (long long p = 0; p < M; ++p) g.add_edge(filler[i], fpend[i * M + p]);
    g.finalize();
    out.g = std::move(g);

    std::vector<int> indep = element;
    indep.insert(indep.end(), fpend.begin(), fpend.end());
    std::vector<int> cliqv = triple;
    cliqv.insert(cliqv.end(), filler.begin(), filler.end());
    if (!is_split(out.g, cliqv, indep) || !is_connected(out.g))
        throw std::logic_error("cover gadget lost split structure or connectivity");
    return out;
}

std::vector<int> x3c_witness(const ReducedInstance& inst, const std::vector<int>& cover) {
    const auto& triple = inst.roles.at("triple");
    std::vector<int> s;
    for (int i : cover) {
        if (i < 0 || i >= (int)triple.size()) throw std::invalid_argument("cover index out of range");
        s.push_back(triple[i]);
    }
    for (const char* role : {"filler", "element"})
        for (int v : inst.roles.at(role)) s.push_back(v);
    return s;
}

ReducedInstance gen_maxcut_mmc_split(const Graph& g, long long ell) {
    if (g.n < 1) throw std::invalid_argument("source graph is empty");
    if (ell < 0) ell = (long long)g.n * g.n * g.n;
    if (ell < 1) throw std::invalid_argument("multiplier must be positive");
    const long long total = g.n + (long long)g.m() * ell;
    check_cap(total);

    ReducedInstance out;
    out.problem = Problem::mmc;
    out.multiplier = ell;

    Graph h((int)total);
    for (int u = 0; u < g.n; ++u)
        for (int v = u + 1; v < g.n; ++v) h.add_edge(u, v);
    for (int e = 0; e < g.m(); ++e) {
        auto [u, v] = g.edges[e];
        for (long long j = 0; j < ell; ++j) {
            int c = (int)(g.n + e * ell + j);
            h.add_edge(c, u);
            h.add_edge(c, v);
        }
    }
    h.finalize();
    out.g = std::move(h);
    out.roles["original"] = iota_ids(0, g.n);
    out.roles["edge_copy"] = iota_ids(g.n, (int)((long long)g.m() * ell));

    if (!is_split(out.g, out.roles["original"], out.roles["edge_copy"]))
        throw std::logic_error("cut gadget lost split structure");
    return out;
}

std::vector<int> maxcut_witness(const ReducedInstance& inst, const Graph& source,
                                const std::vector<int>& s) {
    const long long ell = inst.multiplier;
    if ((int)inst.roles.at("original").size() != source.n ||
        (long long)inst.roles.at("edge_copy").size() != source.m() * ell)
        throw std::invalid_argument("instance was not generated from this graph");
    auto side = make_side(source, s);
    std::vector<int> out = s;
    const auto& copies = inst.roles.at("edge_copy");
    for (int e = 0; e < source.m(); ++e) {
        auto [u, v] = source.edges[e];
        if (side[u] || side[v])
            for (long long j = 0; j < ell; ++j) out.push_back(copies[e * ell + j]);
    }
    return out;
}

bool is_bipartite(const Graph& g) {
    std::vector<int> color(g.n, -1);
    std::deque<int> q;
    for (int s = 0; s < g.n; ++s) {
        if (color[s] != -1) continue;
        color[s] = 0;
        q.push_back(s);
        while (!q.empty()) {
            int u = q.front();
            q.pop_front();
            for (int v : g.adj[u]) {
                if (color[v] == -1) {
                    color[v] = color[u] ^ 1;
                    q.push_back(v);
                } else if (color[v] == color[u]) {
                    return false;
                }
            }
        }
    }
    return true;
}

bool is_split(const Graph& g, const std::vector<int>& clique,
              const std::vector<int>& independent) {
    std::vector<char> mark(g.n, 0);
    if ((long long)clique.size() + (long long)independent.size() != g.n) return false;
    for (int v : clique) {
        if (v < 0 || v >= g.n || mark[v]) return false;
        mark[v] = 1;
    }
    for (int v : independent) {
        if (v < 0 || v >= g.n || mark[v]) return false;
        mark[v] = 2;
    }
    for (size_t i = 0; i < clique.size(); ++i)
        for (size_t j = i + 1; j < clique.size(); ++j)
            if (!g.has_edge(clique[i], clique[j])) return false;
    for (int v : independent)
        for (int u : g.adj[v])
            if (mark[u] == 2) return false;
    return true;
}

}  // namespace cutcraft
