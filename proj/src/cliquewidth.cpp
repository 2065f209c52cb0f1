#include "cutcraft/cliquewidth.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace cutcraft {

namespace {

using Kind = CwExpression::Kind;

constexpr int kMaxLabel = 31;

int push_node(CwExpression& e, Kind k, int a, int b, int c1 = -1, int c2 = -1) {
    e.nodes.push_back({k, a, b, c1, c2});
    return (int)e.nodes.size() - 1;
}

// ---- s-expression reader ---------------------------------------------------

struct Tok {
    enum K { lparen, rparen, atom } k;
    std::string text;
};

std::vector<Tok> lex(const std::string& text) {
    std::vector<Tok> out;
    size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (c == '(') { out.push_back({Tok::lparen, "("}); ++i; }
        else if (c == ')') { out.push_back({Tok::rparen, ")"}); ++i; }
        else if (std::isspace((unsigned char)c)) { ++i; }
        else {
            size_t j = i;
            while (j < text.size() && !std::isspace((unsigned char)text[j]) &&
                   text[j] != '(' && text[j] != ')')
                ++j;
            out.push_back({Tok::atom, text.substr(i, j - i)});
            i = j;
        }
    }
    return out;
}

struct ExprParser {
    const std::vector<Tok>& toks;
    size_t pos = 0;
    CwExpression e;

    [[noreturn]] void fail(const std::string& msg) {
        throw std::runtime_error("expression parse error: " + msg);
    }
    const Tok& peek() {
        if (pos >= toks.size()) fail("unexpected end of input");
        return toks[pos];
    }
    void expect(Tok::K k, const char* what) {
        if (peek().k != k) fail(std::string("expected ") + what + " near '" + peek().text + "'");
        ++pos;
    }
    int number() {
        const Tok& t = peek();
        if (t.k != Tok::atom) fail("expected a number near '" + t.text + "'");
        size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(t.text, &used);
        } catch (const std::exception&) {
            fail("expected a number, got '" + t.text + "'");
        }
        if (used != t.text.size()) fail("expected a number, got '" + t.text + "'");
        ++pos;
        return v;
    }
    int label() {
        int l = number();
        if (l < 1 || l > kMaxLabel) fail("label out of range: " + std::to_string(l));
        return l;
    }

    int expr() {
        expect(Tok::lparen, "'('");
        const Tok& head = peek();
        if (head.k != Tok::atom) fail("expected an operator near '" + head.text + "'");
        std::string op = head.text;
        ++pos;
        if (op == "intro") {
            int v = number();
            if (v < 1) fail("vertex ids are 1-based");
            int l = label();
            expect(Tok::rparen, "')'");
            return push_node(e, Kind::intro, v - 1, l);
        }
        if (op == "union") {
            std::vector<int> kids;
            while (peek().k != Tok::rparen) kids.push_back(expr());
            ++pos;  // rparen
            if (kids.size() < 2) fail("union needs at least two operands");
            int cur = kids[0];
            for (size_t i = 1; i < kids.size(); ++i)
                cur = push_node(e, Kind::unite, 0, 0, cur, kids[i]);
            return cur;
        }
        if (op == "join" || op == "relabel") {
            int i = label(), j = label();
            int child = expr();
            expect(Tok::rparen, "')'");
            if (op == "join") {
                if (i == j) fail("join of a label with itself");
                return push_node(e, Kind::join, i, j, child);
            }
            return push_node(e, Kind::relabel, i, j, child);
        }
        fail("unknown operator '" + op + "'");
    }
};

// ---- evaluation ------------------------------------------------------------

struct EvalResult {
    Graph g;
    std::vector<std::vector<int>> verts;  // per expression node, unsorted
    std::vector<int> live_labels;         // per node; set for unite nodes only
};

EvalResult eval_core(const CwExpression& e) {
    if (e.root < 0 || e.nodes.empty()) throw std::runtime_error("empty expression");
    int maxid = -1, intros = 0;
    for (const auto& nd : e.nodes)
        if (nd.kind == Kind::intro) { ++intros; maxid = std::max(maxid, nd.a); }
    if (intros == 0) throw std::runtime_error("expression introduces no vertices");
    int n = maxid + 1;
    if (n > 1000000) throw std::runtime_error("expression too large");
    if (intros != n)
        throw std::runtime_error("introduced vertex ids must form 1..n");

    EvalResult r;
    r.verts.resize(e.nodes.size());
    r.live_labels.assign(e.nodes.size(), 0);
    std::vector<int> label(n, 0);
    std::vector<char> seen(n, 0);
    std::set<std::pair<int, int>> es;

    for (size_t i = 0; i < e.nodes.size(); ++i) {
        const auto& nd = e.nodes[i];
        if (nd.child1 >= (int)i || nd.child2 >= (int)i)
            throw std::runtime_error("malformed expression: child after parent");
        switch (nd.kind) {
            case Kind::intro: {
                if (nd.a < 0 || nd.a >= n) throw std::runtime_error("vertex id out of range");
                if (nd.b < 1 || nd.b > kMaxLabel) throw std::runtime_error("label out of range");
                if (seen[nd.a])
                    throw std::runtime_error("vertex " + std::to_string(nd.a + 1) + " reintroduced");
                seen[nd.a] = 1;
                label[nd.a] = nd.b;
                r.verts[i] = {nd.a};
                break;
            }
            case Kind::unite: {
                r.verts[i] = r.verts[nd.child1];
                r.verts[i].insert(r.verts[i].end(), r.verts[nd.child2].begin(),
                                  r.verts[nd.child2].end());
                std::set<int> live;
                for (int u : r.verts[i]) live.insert(label[u]);
                r.live_labels[i] = (int)live.size();
                break;
            }
            case Kind::join: {
                if (nd.a == nd.b) throw std::runtime_error("join of a label with itself");
                r.verts[i] = r.verts[nd.child1];
                std::vector<int> A, B;
                for (int u : r.verts[i]) {
                    if (label[u] == nd.a) A.push_back(u);
                    else if (label[u] == nd.b) B.push_back(u);
                }
                for (int u : A)
                    for (int v : B) es.insert({std::min(u, v), std::max(u, v)});
                break;
            }
            case Kind::relabel: {
                r.verts[i] = r.verts[nd.child1];
                for (int u : r.verts[i])
                    if (label[u] == nd.a) label[u] = nd.b;
                break;
            }
        }
    }
    if ((int)r.verts[e.root].size() != n)
        throw std::runtime_error("expression is not a single tree over all vertices");
    r.g = Graph::from_edges(n, {es.begin(), es.end()});
    return r;
}

void emit_rec(const CwExpression& e, int i, std::string& out) {
    const auto& nd = e.nodes[i];
    switch (nd.kind) {
        case Kind::intro:
            out += "(intro " + std::to_string(nd.a + 1) + " " + std::to_string(nd.b) + ")";
            break;
        case Kind::unite:
            out += "(union ";
            emit_rec(e, nd.child1, out);
            out += " ";
            emit_rec(e, nd.child2, out);
            out += ")";
            break;
        case Kind::join:
        case Kind::relabel:
            out += nd.kind == Kind::join ? "(join " : "(relabel ";
            out += std::to_string(nd.a) + " " + std::to_string(nd.b) + " ";
            emit_rec(e, nd.child1, out);
            out += ")";
            break;
    }
}

}  // namespace

CwExpression parse_cw(const std::string& text) {
    auto toks = lex(text);
    ExprParser p{toks};
    int root = p.expr();
    if (p.pos != toks.size())
        throw std::runtime_error("expression parse error: trailing input");
    p.e.root = root;
    for (const auto& nd : p.e.nodes) {
        if (nd.kind == Kind::intro) p.e.width = std::max(p.e.width, nd.b);
        else if (nd.kind != Kind::unite)
            p.e.width = std::max({p.e.width, nd.a, nd.b});
    }
    return std::move(p.e);
}

CwExpression parse_cw_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_cw(ss.str());
}

std::string emit_cw(const CwExpression& e) {
    if (e.root < 0) throw std::runtime_error("empty expression");
    std::string out;
    emit_rec(e, e.root, out);
    out += "\n";
    return out;
}

Graph evaluate_cw(const CwExpression& e) { return eval_core(e).g; }

// ---- decomposition tree ----------------------------------------------------

std::vector<int> DecompositionTree::postorder() const {
    std::vector<int> out;
    out.reserve(nodes.size());
    std::vector<std::pair<int, int>> st{{root, 0}};
    while (!st.empty()) {
        auto& [v, stage] = st.back();
        if (nodes[v].child1 < 0 || stage == 2) {
            out.push_back(v);
            st.pop_back();
        } else if (stage == 0) {
            stage = 1;
            st.emplace_back(nodes[v].child1, 0);
        } else {
            stage = 2;
            st.emplace_back(nodes[v].child2, 0);
        }
    }
    return out;
}

DecompositionTree build_decomposition_tree(const Graph& g, const CwExpression& e) {
    EvalResult ev = eval_core(e);
    if (ev.g.n != g.n || ev.g.edges != g.edges)
        throw std::invalid_argument("expression does not build this graph");

    DecompositionTree t;
    std::vector<int> tnode(e.nodes.size(), -1);
    std::vector<std::vector<int>> tverts;
    std::vector<int> tbound;  // live-label bound per tree node (0 = none)
    for (size_t i = 0; i < e.nodes.size(); ++i) {
        const auto& nd = e.nodes[i];
        switch (nd.kind) {
            case Kind::intro: {
                t.nodes.push_back({-1, -1, nd.a, {}});
                tverts.push_back({nd.a});
                tbound.push_back(1);
                tnode[i] = (int)t.nodes.size() - 1;
                break;
            }
            case Kind::unite: {
                t.nodes.push_back({tnode[nd.child1], tnode[nd.child2], -1, {}});
                tverts.push_back(ev.verts[i]);
                tbound.push_back(ev.live_labels[i]);
                tnode[i] = (int)t.nodes.size() - 1;
                break;
            }
            default:
                tnode[i] = tnode[nd.child1];
        }
    }
    t.root = tnode[e.root];

    std::vector<char> inside(g.n, 0);
    for (size_t v = 0; v < t.nodes.size(); ++v) {
        std::vector<int> L = tverts[v];
        std::sort(L.begin(), L.end());
        for (int u : L) inside[u] = 1;
        std::map<std::vector<int>, std::vector<int>> groups;
        for (int u : L) {
            std::vector<int> sig;
            for (int w : g.adj[u])
                if (!inside[w]) sig.push_back(w);
            groups[sig].push_back(u);
        }
        for (int u : L) inside[u] = 0;
        auto& cls = t.nodes[v].classes;
        for (auto& [sig, members] : groups) cls.push_back(members);
        std::sort(cls.begin(), cls.end(),
                  [](const std::vector<int>& a, const std::vector<int>& b) {
                      return a.front() < b.front();
                  });
        if ((int)cls.size() > tbound[v])
            throw std::logic_error("twin-class count exceeds live label count");
        t.width = std::max(t.width, (int)cls.size());
    }
    return t;
}

long long cross_edges(long long p_a, long long pbar_a, long long p_b,
                      long long pbar_b, bool adjacent) {
    if (p_a < 0 || pbar_a < 0 || p_b < 0 || pbar_b < 0)
        throw std::invalid_argument("negative side count");
    return adjacent ? p_a * pbar_b + p_b * pbar_a : 0;
}

// ---- solver ----------------------------------------------------------------
//
// Per node we keep, for every reachable configuration, the best cut size.
// A configuration is the vector of S-counts per twin-class plus, per side, a
// multiset of component signatures: each connected component of the side
// restricted to the node's leaf set is recorded as the set of twin-classes it
// touches, with multiplicities capped at two (two identically-shaped
// components behave the same as any larger number under every future merge).
// Signatures evolve by class coarsening and by complete cross-child
// adjacencies, which fuse every component touching either endpoint class.
// Tracking components this way, instead of one connectivity bit per class,
// is what keeps sides built from several mutually wired classes of the same
// child honest; a per-class bit cannot express them.

namespace {

struct CwKey {
    uint64_t p = 0, ms = 0, mc = 0;
    bool operator<(const CwKey& o) const {
        return std::tie(p, ms, mc) < std::tie(o.p, o.ms, o.mc);
    }
};

struct CwEnt {
    long long val = 0;
    CwKey ka, kb;
};

inline int sig_count(uint64_t m, int sig) { return (int)((m >> (2 * sig)) & 3); }

inline uint64_t sig_add(uint64_t m, int sig) {
    int c = sig_count(m, sig);
    if (c < 2) m += 1ull << (2 * sig);
    return m;
}

// Combine the two children's component multisets under the merge events, then
// rename classes into the parent's class space.
uint64_t merge_components(uint64_t ma, uint64_t mb, int wa, int wb,
                          const std::vector<std::pair<int, int>>& events,
                          const std::vector<int>& amap, const std::vector<int>& bmap) {
    uint32_t sig[128];
    int uf[128];
    int nc = 0;
    for (int s = 1; s < (1 << wa); ++s)
        for (int k = sig_count(ma, s); k-- > 0;) sig[nc++] = (uint32_t)s;
    for (int s = 1; s < (1 << wb); ++s)
        for (int k = sig_count(mb, s); k-- > 0;) sig[nc++] = (uint32_t)s << wa;
    for (int c = 0; c < nc; ++c) uf[c] = c;
    auto find = [&](int x) {
        while (uf[x] != x) x = uf[x] = uf[uf[x]];
        return x;
    };
    for (auto [i, j] : events) {
        uint32_t bits = (1u << i) | (1u << (wa + j));
        int first = -1;
        for (int c = 0; c < nc; ++c) {
            if (!(sig[c] & bits)) continue;
            if (first < 0) first = find(c);
            else uf[find(c)] = first = find(first);
        }
    }
    uint32_t gsig[128] = {};
    for (int c = 0; c < nc; ++c) gsig[find(c)] |= sig[c];
    uint64_t out = 0;
    for (int c = 0; c < nc; ++c) {
        if (find(c) != c) continue;
        uint32_t ps = 0;
        for (int slot = 0; slot < wa + wb; ++slot)
            if (gsig[c] & (1u << slot))
                ps |= 1u << (slot < wa ? amap[slot] : bmap[slot - wa]);
        out = sig_add(out, (int)ps);
    }
    return out;
}

constexpr uint64_t kOneComp = 1ull << 2;  // single component touching class 0

}  // namespace

SolveReport solve_cw(const Graph& g, const DecompositionTree& t, Problem prob,
                     const Budget* budget, int width_cap, SolveStats* stats) {
    if (prob != Problem::cmc && prob != Problem::mmc)
        throw std::invalid_argument("anchored problems are not supported on decomposition trees");
    if (width_cap < 1 || width_cap > 5)
        throw std::invalid_argument("width cap must be in 1..5");
    if (!is_connected(g)) throw std::runtime_error("disconnected input graph");
    if (t.width > width_cap) throw BudgetExceeded("decomposition width above cap");
    if (g.n > 255) throw BudgetExceeded("graph too large for clique-width tables");

    const bool two_sided = problem_two_sided(prob);
    const int n = g.n;

    if (t.root < 0 || t.root >= (int)t.nodes.size())
        throw std::invalid_argument("decomposition tree has no root");
    int leaf_count = 0;
    for (const auto& nd : t.nodes) {
        if (nd.child1 < 0) {
            ++leaf_count;
            if (nd.vertex < 0 || nd.vertex >= n)
                throw std::invalid_argument("decomposition tree does not match the graph");
        }
        for (const auto& c : nd.classes)
            for (int u : c)
                if (u < 0 || u >= n)
                    throw std::invalid_argument("decomposition tree does not match the graph");
    }
    if (leaf_count != n)
        throw std::invalid_argument("decomposition tree does not match the graph");

    SolveReport rep;
    rep.problem = prob;
    rep.algorithm = "cliquewidth";
    rep.n = n;
    rep.m = g.m();

    // class index per vertex, per node
    std::vector<std::vector<int>> vcls(t.nodes.size(), std::vector<int>(n, -1));
    for (size_t v = 0; v < t.nodes.size(); ++v)
        for (size_t i = 0; i < t.nodes[v].classes.size(); ++i)
            for (int u : t.nodes[v].classes[i]) vcls[v][u] = (int)i;

    std::vector<std::map<CwKey, CwEnt>> tab(t.nodes.size());
    long long steps = 0;

    for (int v : t.postorder()) {
        const auto& nd = t.nodes[v];
        if (budget) budget->check("clique-width dp");
        if (nd.child1 < 0) {
            tab[v][{1, kOneComp, 0}] = CwEnt{0, {}, {}};
            tab[v][{0, 0, two_sided ? kOneComp : 0}] = CwEnt{0, {}, {}};
            continue;
        }
        const int a = nd.child1, b = nd.child2;
        const auto& ca = t.nodes[a].classes;
        const auto& cb = t.nodes[b].classes;
        const int wa = (int)ca.size(), wb = (int)cb.size();

        std::vector<int> amap(wa), bmap(wb), sza(wa), szb(wb);
        for (int i = 0; i < wa; ++i) {
            amap[i] = vcls[v][ca[i][0]];
            sza[i] = (int)ca[i].size();
            for (int u : ca[i])
                if (vcls[v][u] != amap[i])
                    throw std::logic_error("child class splits across parent classes");
        }
        for (int j = 0; j < wb; ++j) {
            bmap[j] = vcls[v][cb[j][0]];
            szb[j] = (int)cb[j].size();
            for (int u : cb[j])
                if (vcls[v][u] != bmap[j])
                    throw std::logic_error("child class splits across parent classes");
        }
        std::vector<std::vector<char>> adj(wa, std::vector<char>(wb));
        for (int i = 0; i < wa; ++i)
            for (int j = 0; j < wb; ++j) {
                bool first = g.has_edge(ca[i][0], cb[j][0]);
                for (int u : ca[i])
                    for (int w : cb[j])
                        if (g.has_edge(u, w) != first)
                            throw std::logic_error("ragged adjacency between twin-classes");
                adj[i][j] = first;
            }

        auto& out = tab[v];
        std::vector<std::pair<int, int>> evs, evc;
        for (const auto& [ka, ea] : tab[a]) {
            int pa[8], qa[8];
            for (int i = 0; i < wa; ++i) {
                pa[i] = (int)((ka.p >> (8 * i)) & 0xff);
                qa[i] = sza[i] - pa[i];
            }
            for (const auto& [kb, eb] : tab[b]) {
                if (((++steps) & 1023) == 0 && budget) budget->check("clique-width dp");
                int pb[8], qb[8];
                for (int j = 0; j < wb; ++j) {
                    pb[j] = (int)((kb.p >> (8 * j)) & 0xff);
                    qb[j] = szb[j] - pb[j];
                }
                long long val = ea.val + eb.val;
                evs.clear();
                evc.clear();
                for (int i = 0; i < wa; ++i)
                    for (int j = 0; j < wb; ++j) {
                        if (!adj[i][j]) continue;
                        val += (long long)pa[i] * qb[j] + (long long)pb[j] * qa[i];
                        if (pa[i] > 0 && pb[j] > 0) evs.push_back({i, j});
                        if (two_sided && qa[i] > 0 && qb[j] > 0) evc.push_back({i, j});
                    }
                CwKey kv;
                for (int i = 0; i < wa; ++i)
                    kv.p += (uint64_t)pa[i] << (8 * amap[i]);
                for (int j = 0; j < wb; ++j)
                    kv.p += (uint64_t)pb[j] << (8 * bmap[j]);
                kv.ms = merge_components(ka.ms, kb.ms, wa, wb, evs, amap, bmap);
                if (two_sided)
                    kv.mc = merge_components(ka.mc, kb.mc, wa, wb, evc, amap, bmap);
                auto [it, fresh] = out.try_emplace(kv, CwEnt{val, ka, kb});
                if (!fresh && val > it->second.val) it->second = CwEnt{val, ka, kb};
            }
        }
    }

    if (stats) {
        stats->table_cells = 0;
        for (const auto& m : tab) stats->table_cells += (long long)m.size();
    }

    if (t.nodes[t.root].classes.size() != 1)
        throw std::logic_error("root of a decomposition tree must have one twin-class");
    const CwEnt* best = nullptr;
    CwKey bestk;
    for (const auto& [k, e] : tab[t.root]) {
        long long p = (long long)(k.p & 0xff);
        if (p < 1 || p > n - 1) continue;
        if (k.ms != kOneComp) continue;
        if (two_sided && k.mc != kOneComp) continue;
        if (!best || e.val > best->val) { best = &e; bestk = k; }
    }
    if (!best) {
        // single-vertex graphs: no proper side exists
        if (prob == Problem::cmc) {
            rep.optimum = 0;
            rep.witness = std::vector<int>{};
        }
        return rep;
    }
    rep.optimum = best->val;

    std::vector<int> side;
    std::vector<std::pair<int, CwKey>> walk{{t.root, bestk}};
    while (!walk.empty()) {
        auto [node, key] = walk.back();
        walk.pop_back();
        const auto& ndd = t.nodes[node];
        if (ndd.child1 < 0) {
            if ((key.p & 0xff) == 1) side.push_back(ndd.vertex);
            continue;
        }
        const CwEnt& en = tab[node].at(key);
        walk.emplace_back(ndd.child1, en.ka);
        walk.emplace_back(ndd.child2, en.kb);
    }
    std::sort(side.begin(), side.end());
    if (cut_size(g, side) != *rep.optimum ||
        !feasible_cut(g, prob, make_side(g, side)))
        throw std::logic_error("assembled clique-width witness does not match its value");
    rep.witness = std::move(side);
    return rep;
}

// ---- expression families ---------------------------------------------------

CwExpression cw_clique(int n) {
    if (n < 1) throw std::invalid_argument("clique needs at least one vertex");
    CwExpression e;
    int cur = push_node(e, Kind::intro, 0, 1);
    for (int k = 1; k < n; ++k) {
        int iv = push_node(e, Kind::intro, k, 2);
        int un = push_node(e, Kind::unite, 0, 0, cur, iv);
        int jn = push_node(e, Kind::join, 1, 2, un);
        cur = push_node(e, Kind::relabel, 2, 1, jn);
    }
    e.root = cur;
    e.width = n > 1 ? 2 : 1;
    return e;
}

CwExpression cw_path(int n) {
    if (n < 1) throw std::invalid_argument("path needs at least one vertex");
    CwExpression e;
    if (n == 1) {
        e.root = push_node(e, Kind::intro, 0, 1);
        e.width = 1;
        return e;
    }
    int cur = push_node(e, Kind::intro, 0, 2);
    for (int k = 1; k < n; ++k) {
        int iv = push_node(e, Kind::intro, k, 3);
        int un = push_node(e, Kind::unite, 0, 0, cur, iv);
        int jn = push_node(e, Kind::join, 2, 3, un);
        int r1 = push_node(e, Kind::relabel, 2, 1, jn);
        cur = push_node(e, Kind::relabel, 3, 2, r1);
    }
    e.root = cur;
    e.width = 3;
    return e;
}

CwExpression cw_star(int leaves) {
    if (leaves < 0) throw std::invalid_argument("negative leaf count");
    CwExpression e;
    if (leaves == 0) {
        e.root = push_node(e, Kind::intro, 0, 1);
        e.width = 1;
        return e;
    }
    int cluster = push_node(e, Kind::intro, 1, 2);
    for (int k = 2; k <= leaves; ++k) {
        int iv = push_node(e, Kind::intro, k, 2);
        cluster = push_node(e, Kind::unite, 0, 0, cluster, iv);
    }
    int c = push_node(e, Kind::intro, 0, 1);
    int un = push_node(e, Kind::unite, 0, 0, c, cluster);
    e.root = push_node(e, Kind::join, 1, 2, un);
    e.width = 2;
    return e;
}

std::pair<CwExpression, Graph> cw_random_cograph(int n, Rng& rng) {
    if (n < 1) throw std::invalid_argument("cograph needs at least one vertex");
    CwExpression e;
    std::vector<std::pair<int, int>> es;
    std::function<int(int, int, bool)> build = [&](int lo, int hi, bool force_join) -> int {
        if (hi - lo == 1) return push_node(e, Kind::intro, lo, 1);
        int mid = lo + 1 + (int)rng.below((uint64_t)(hi - lo - 1));
        bool joined = force_join || rng.below(2) == 0;
        int A = build(lo, mid, false);
        int B = build(mid, hi, false);
        if (!joined) return push_node(e, Kind::unite, 0, 0, A, B);
        for (int u = lo; u < mid; ++u)
            for (int w = mid; w < hi; ++w) es.push_back({u, w});
        int b2 = push_node(e, Kind::relabel, 1, 2, B);
        int un = push_node(e, Kind::unite, 0, 0, A, b2);
        int jn = push_node(e, Kind::join, 1, 2, un);
        return push_node(e, Kind::relabel, 2, 1, jn);
    };
    e.root = build(0, n, true);
    e.width = n > 1 ? 2 : 1;
    return {std::move(e), Graph::from_edges(n, std::move(es))};
}

}  // namespace cutcraft
