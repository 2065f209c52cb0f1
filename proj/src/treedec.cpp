#include "cutcraft/treedec.hpp"

#include <algorithm>
#include <cassert>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace cutcraft {

int TreeDecomposition::width() const {
    size_t w = 0;
    for (auto& b : bags) w = std::max(w, b.size());
    return (int)w - 1;
}

TdCheck validate_decomposition(const Graph& g, const TreeDecomposition& td) {
    auto bad = [](std::string m) { return TdCheck{false, std::move(m)}; };
    int B = (int)td.bags.size();
    if (B == 0) return bad("no bags");
    if (td.n != g.n) return bad("decomposition is for a different vertex count");
    if ((int)td.tree_edges.size() != B - 1) return bad("bag tree is not a tree (edge count)");
    std::vector<std::vector<int>> tadj(B);
    for (auto [a, b] : td.tree_edges) {
        if (a < 0 || b < 0 || a >= B || b >= B || a == b) return bad("bad tree edge");
        tadj[a].push_back(b);
        tadj[b].push_back(a);
    }
    {  // connected (with B-1 edges this also implies acyclic)
        std::vector<char> seen(B, 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        int cnt = 1;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (int y : tadj[x])
                if (!seen[y]) {
                    seen[y] = 1;
                    ++cnt;
                    stack.push_back(y);
                }
        }
        if (cnt != B) return bad("bag tree is not connected");
    }
    std::vector<std::vector<int>> holds(g.n);
    for (int i = 0; i < B; ++i)
        for (int v : td.bags[i]) {
            if (v < 0 || v >= g.n) return bad("bag references vertex " + std::to_string(v + 1) +
                                              " of a " + std::to_string(g.n) + "-vertex graph");
            holds[v].push_back(i);
        }
    for (int v = 0; v < g.n; ++v)
        if (holds[v].empty()) return bad("vertex coverage violated: " + std::to_string(v + 1));
    for (auto [u, v] : g.edges) {
        bool ok = false;
        for (int i : holds[u]) {
            if (std::binary_search(td.bags[i].begin(), td.bags[i].end(), v)) {
                ok = true;
                break;
            }
        }
        if (!ok)
            return bad("edge coverage violated: " + std::to_string(u + 1) + "-" +
                       std::to_string(v + 1));
    }
    // per-vertex bags must induce a connected subtree
    for (int v = 0; v < g.n; ++v) {
        std::vector<char> inset(B, 0);
        for (int i : holds[v]) inset[i] = 1;
        std::vector<char> seen(B, 0);
        std::vector<int> stack{holds[v][0]};
        seen[holds[v][0]] = 1;
        int cnt = 1;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (int y : tadj[x])
                if (inset[y] && !seen[y]) {
                    seen[y] = 1;
                    ++cnt;
                    stack.push_back(y);
                }
        }
        if (cnt != (int)holds[v].size())
            return bad("bags of vertex " + std::to_string(v + 1) + " are not connected");
    }
    return {};
}

TreeDecomposition heuristic_decomposition(const Graph& g) {
    if (!is_connected(g)) throw std::runtime_error("disconnected input graph");
    if (g.n > 4096) throw std::runtime_error("heuristic decomposition caps at 4096 vertices");
    int n = g.n;
    TreeDecomposition td;
    td.n = n;
    if (n == 0) {
        td.bags.push_back({});
        return td;
    }
    int W = (n + 63) / 64;
    std::vector<uint64_t> row((size_t)n * W, 0);
    auto bit = [&](int v, int w) -> uint64_t& { return row[(size_t)v * W + w]; };
    auto get = [&](int u, int v) { return bit(u, v / 64) >> (v % 64) & 1; };
    auto set = [&](int u, int v) { bit(u, v / 64) |= 1ULL << (v % 64); };
    auto clear = [&](int u, int v) { bit(u, v / 64) &= ~(1ULL << (v % 64)); };
    for (auto [u, v] : g.edges) {
        set(u, v);
        set(v, u);
    }
    std::vector<char> alive(n, 1);
    std::vector<int> elimpos(n, -1);
    std::vector<int> order;
    order.reserve(n);

    auto fill_of = [&](int v) {
        long long cnt = 0;
        for (int w = 0; w < W; ++w) {
            uint64_t bits = bit(v, w);
            while (bits) {
                int a = w * 64 + __builtin_ctzll(bits);
                bits &= bits - 1;
                // neighbors of v not adjacent to a (excluding a itself)
                for (int w2 = 0; w2 < W; ++w2)
                    cnt += __builtin_popcountll(bit(v, w2) & ~bit(a, w2));
                --cnt;  // a itself
            }
        }
        return cnt / 2;
    };

    for (int step = 0; step < n; ++step) {
        int best = -1;
        long long bestfill = -1;
        for (int v = 0; v < n; ++v) {
            if (!alive[v]) continue;
            long long f = fill_of(v);
            if (best < 0 || f < bestfill) {
                best = v;
                bestfill = f;
            }
        }
        int v = best;
        std::vector<int> nb;
        for (int w = 0; w < W; ++w) {
            uint64_t bits = bit(v, w);
            while (bits) {
                nb.push_back(w * 64 + __builtin_ctzll(bits));
                bits &= bits - 1;
            }
        }
        std::vector<int> bag = nb;
        bag.push_back(v);
        std::sort(bag.begin(), bag.end());
        td.bags.push_back(bag);
        elimpos[v] = step;
        order.push_back(v);
        // clique-fill the neighborhood, drop v
        for (int a : nb) {
            for (int w = 0; w < W; ++w) bit(a, w) |= bit(v, w);
            clear(a, a);
            clear(a, v);
        }
        alive[v] = 0;
        for (int w = 0; w < W; ++w) bit(v, w) = 0;
    }
    (void)get;
    // connect each bag to the bag of its earliest-eliminated later neighbor
    for (int i = 0; i < n; ++i) {
        int nxt = -1;
        for (int u : td.bags[i])
            if (u != order[i] && (nxt < 0 || elimpos[u] < nxt)) nxt = elimpos[u];
        if (nxt >= 0) td.tree_edges.push_back({std::min(i, nxt), std::max(i, nxt)});
    }
    std::sort(td.tree_edges.begin(), td.tree_edges.end());
    return td;
}

TreeDecomposition parse_td(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    bool have_header = false;
    int B = 0, maxbag = 0, n = 0;
    std::map<int, std::vector<int>> bagmap;
    std::vector<std::pair<int, int>> tedges;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == 'c') continue;
        std::istringstream ls(line);
        if (line[0] == 's') {
            std::string s, td;
            if (!(ls >> s >> td >> B >> maxbag >> n) || td != "td" || B < 0 || n < 0)
                throw std::runtime_error("malformed td header at line " + std::to_string(lineno));
            have_header = true;
            continue;
        }
        if (!have_header) throw std::runtime_error("content before td header");
        if (line[0] == 'b') {
            char b;
            int id;
            ls >> b >> id;
            if (ls.fail() || id < 1 || id > B)
                throw std::runtime_error("bag id out of range at line " + std::to_string(lineno));
            if (bagmap.count(id - 1))
                throw std::runtime_error("duplicate bag " + std::to_string(id));
            std::vector<int> verts;
            int v;
            while (ls >> v) {
                if (v < 1 || v > n)
                    throw std::runtime_error("bag references vertex " + std::to_string(v) +
                                             " of a " + std::to_string(n) + "-vertex graph");
                verts.push_back(v - 1);
            }
            std::sort(verts.begin(), verts.end());
            verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
            if ((int)verts.size() > maxbag)
                throw std::runtime_error("bag " + std::to_string(id) + " exceeds declared size");
            bagmap[id - 1] = verts;
            continue;
        }
        int a, c;
        std::istringstream ls2(line);
        if (!(ls2 >> a >> c) || a < 1 || c < 1 || a > B || c > B)
            throw std::runtime_error("header mismatch with referenced bag ids at line " +
                                     std::to_string(lineno));
        tedges.push_back({std::min(a, c) - 1, std::max(a, c) - 1});
    }
    if (!have_header) throw std::runtime_error("missing td header");
    if ((int)bagmap.size() != B) throw std::runtime_error("bag count does not match header");
    TreeDecomposition td;
    td.n = n;
    td.bags.resize(B);
    for (auto& [id, verts] : bagmap) td.bags[id] = verts;
    std::sort(tedges.begin(), tedges.end());
    td.tree_edges = tedges;
    return td;
}

TreeDecomposition parse_td_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_td(ss.str());
}

std::string emit_td(const TreeDecomposition& td) {
    std::ostringstream out;
    size_t maxbag = 0;
    for (auto& b : td.bags) maxbag = std::max(maxbag, b.size());
    out << "s td " << td.bags.size() << " " << maxbag << " " << td.n << "\n";
    for (size_t i = 0; i < td.bags.size(); ++i) {
        out << "b " << i + 1;
        for (int v : td.bags[i]) out << " " << v + 1;
        out << "\n";
    }
    auto es = td.tree_edges;
    for (auto& [a, b] : es)
        if (a > b) std::swap(a, b);
    std::sort(es.begin(), es.end());
    for (auto [a, b] : es) out << a + 1 << " " << b + 1 << "\n";
    return out.str();
}

// ---- nice form -------------------------------------------------------------

int NiceTreeDecomposition::width() const {
    size_t w = 0;
    for (auto& nd : nodes) w = std::max(w, nd.bag.size());
    return (int)w - 1;
}

std::vector<int> NiceTreeDecomposition::postorder() const {
    std::vector<int> out, stack{root};
    std::vector<char> expanded(nodes.size(), 0);
    while (!stack.empty()) {
        int x = stack.back();
        if (expanded[x]) {
            stack.pop_back();
            out.push_back(x);
            continue;
        }
        expanded[x] = 1;
        if (nodes[x].child1 >= 0) stack.push_back(nodes[x].child1);
        if (nodes[x].child2 >= 0) stack.push_back(nodes[x].child2);
    }
    return out;
}

namespace {

struct NiceBuilder {
    const Graph& g;
    std::vector<NiceNode> nodes;
    std::set<std::pair<int, int>> edges_done;
    int s, t;

    NiceBuilder(const Graph& g_, int s_, int t_) : g(g_), s(s_), t(t_) {}

    bool is_anchor(int v) const { return v == s || v == t; }

    int emit(NiceKind k, std::vector<int> bag, int c1 = -1, int c2 = -1, int v = -1, int u = -1) {
        NiceNode nd;
        nd.kind = k;
        nd.bag = std::move(bag);
        nd.child1 = c1;
        nd.child2 = c2;
        nd.v = v;
        nd.u = u;
        nodes.push_back(std::move(nd));
        return (int)nodes.size() - 1;
    }

    // chain from `top` (whose bag is `from`) to bag `to`: forgets first
    // (edges introduced immediately below each forget), then introduces
    int adapt(int top, std::vector<int> from, const std::vector<int>& to) {
        std::vector<int> cur = from;
        for (int v : from) {
            if (std::binary_search(to.begin(), to.end(), v)) continue;
            assert(!is_anchor(v));
            for (int u : cur) {
                if (u == v || !g.has_edge(u, v)) continue;
                auto key = std::minmax(u, v);
                if (edges_done.count(key)) continue;
                edges_done.insert(key);
                top = emit(NiceKind::IntroduceEdge, cur, top, -1, key.second, key.first);
            }
            cur.erase(std::find(cur.begin(), cur.end(), v));
            top = emit(NiceKind::Forget, cur, top, -1, v);
        }
        for (int v : to) {
            if (std::binary_search(from.begin(), from.end(), v)) continue;
            cur.insert(std::upper_bound(cur.begin(), cur.end(), v), v);
            top = emit(NiceKind::IntroduceVertex, cur, top, -1, v);
        }
        assert(cur == to);
        return top;
    }

    std::vector<int> base_bag() const {
        std::vector<int> b;
        if (s >= 0) b = {std::min(s, t), std::max(s, t)};
        return b;
    }
};

}  // namespace

NiceTreeDecomposition to_nice(const Graph& g, const TreeDecomposition& td, int s, int t) {
    if ((s < 0) != (t < 0)) throw std::runtime_error("anchors must be given together");
    if (s >= 0 && (s == t || s >= g.n || t >= g.n))
        throw std::runtime_error("anchors must be two distinct vertices");
    auto chk = validate_decomposition(g, td);
    if (!chk.ok) throw std::runtime_error("invalid decomposition: " + chk.message);

    // anchors join every bag
    std::vector<std::vector<int>> bags = td.bags;
    if (s >= 0)
        for (auto& b : bags) {
            for (int a : {s, t})
                if (!std::binary_search(b.begin(), b.end(), a))
                    b.insert(std::upper_bound(b.begin(), b.end(), a), a);
        }

    int B = (int)bags.size();
    std::vector<std::vector<int>> tadj(B);
    for (auto [a, b] : td.tree_edges) {
        tadj[a].push_back(b);
        tadj[b].push_back(a);
    }
    for (auto& a : tadj) std::sort(a.begin(), a.end());

    NiceBuilder nb(g, s, t);
    // iterative post-order from root bag 0
    std::vector<int> parent(B, -2), dfs{0};
    parent[0] = -1;
    std::vector<int> topo;
    while (!dfs.empty()) {
        int x = dfs.back();
        dfs.pop_back();
        topo.push_back(x);
        for (int y : tadj[x])
            if (parent[y] == -2) {
                parent[y] = x;
                dfs.push_back(y);
            }
    }
    std::vector<int> built(B, -1);
    for (int i = B - 1; i >= 0; --i) {
        int x = topo[i];
        std::vector<int> kids;
        for (int y : tadj[x])
            if (parent[y] == x) kids.push_back(y);
        if (kids.empty()) {
            int leaf = nb.emit(NiceKind::Leaf, nb.base_bag());
            built[x] = nb.adapt(leaf, nb.base_bag(), bags[x]);
        } else {
            std::vector<int> tops;
            for (int y : kids) tops.push_back(nb.adapt(built[y], bags[y], bags[x]));
            int acc = tops[0];
            for (size_t j = 1; j < tops.size(); ++j)
                acc = nb.emit(NiceKind::Join, bags[x], acc, tops[j]);
            built[x] = acc;
        }
    }
    int top = nb.adapt(built[0], bags[0], nb.base_bag());
    if (s >= 0 && g.has_edge(s, t) && !nb.edges_done.count(std::minmax(s, t))) {
        auto key = std::minmax(s, t);
        nb.edges_done.insert(key);
        top = nb.emit(NiceKind::IntroduceEdge, nb.base_bag(), top, -1, key.second, key.first);
    }
    if ((int)nb.edges_done.size() != g.m())
        throw std::logic_error("nice transform failed to introduce every edge");

    NiceTreeDecomposition out;
    out.nodes = std::move(nb.nodes);
    out.root = top;
    out.s = s;
    out.t = t;
    return out;
}

TdCheck validate_nice(const Graph& g, const NiceTreeDecomposition& nd) {
    auto bad = [](std::string m) { return TdCheck{false, std::move(m)}; };
    if (nd.root < 0 || nd.root >= (int)nd.nodes.size()) return bad("bad root");
    std::vector<int> forget_count(g.n, 0);
    std::map<std::pair<int, int>, int> edge_count;
    std::vector<int> base;
    if (nd.s >= 0) base = {std::min(nd.s, nd.t), std::max(nd.s, nd.t)};
    auto has = [](const std::vector<int>& b, int v) {
        return std::binary_search(b.begin(), b.end(), v);
    };
    for (int i : nd.postorder()) {
        const NiceNode& x = nd.nodes[i];
        if (!std::is_sorted(x.bag.begin(), x.bag.end())) return bad("unsorted bag");
        if (nd.s >= 0 && (!has(x.bag, nd.s) || !has(x.bag, nd.t)))
            return bad("anchor missing from a bag");
        switch (x.kind) {
            case NiceKind::Leaf:
                if (x.child1 >= 0 || x.bag != base) return bad("bad leaf");
                break;
            case NiceKind::IntroduceVertex: {
                if (x.child1 < 0 || x.child2 >= 0) return bad("introduce arity");
                auto cb = nd.nodes[x.child1].bag;
                if (has(cb, x.v) || !has(x.bag, x.v)) return bad("introduce bag mismatch");
                cb.insert(std::upper_bound(cb.begin(), cb.end(), x.v), x.v);
                if (cb != x.bag) return bad("introduce bag delta");
                if (x.v == nd.s || x.v == nd.t) return bad("anchor introduced");
                break;
            }
            case NiceKind::Forget: {
                if (x.child1 < 0 || x.child2 >= 0) return bad("forget arity");
                auto cb = nd.nodes[x.child1].bag;
                if (!has(cb, x.v) || has(x.bag, x.v)) return bad("forget bag mismatch");
                cb.erase(std::find(cb.begin(), cb.end(), x.v));
                if (cb != x.bag) return bad("forget bag delta");
                if (x.v == nd.s || x.v == nd.t) return bad("anchor forgotten");
                ++forget_count[x.v];
                break;
            }
            case NiceKind::IntroduceEdge: {
                if (x.child1 < 0 || x.child2 >= 0) return bad("introduce-edge arity");
                if (nd.nodes[x.child1].bag != x.bag) return bad("introduce-edge bag changed");
                if (!has(x.bag, x.u) || !has(x.bag, x.v)) return bad("edge endpoints not in bag");
                if (!g.has_edge(x.u, x.v)) return bad("introduced non-edge");
                ++edge_count[std::minmax(x.u, x.v)];
                break;
            }
            case NiceKind::Join: {
                if (x.child1 < 0 || x.child2 < 0) return bad("join arity");
                if (nd.nodes[x.child1].bag != x.bag || nd.nodes[x.child2].bag != x.bag)
                    return bad("join bags differ");
                break;
            }
        }
    }
    if (nd.nodes[nd.root].bag != base) return bad("root bag is not the anchor set");
    if ((int)edge_count.size() != g.m()) return bad("missing edge introductions");
    for (auto& [e, c] : edge_count)
        if (c != 1) return bad("edge introduced more than once");
    for (int v = 0; v < g.n; ++v) {
        bool anchor = v == nd.s || v == nd.t;
        if (anchor && forget_count[v] != 0) return bad("anchor forgotten");
        if (!anchor && forget_count[v] != 1)
            return bad("vertex " + std::to_string(v + 1) + " forgotten " +
                       std::to_string(forget_count[v]) + " times");
    }
    return {};
}

}  // namespace cutcraft
