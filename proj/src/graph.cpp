#include "cutcraft/graph.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "cutcraft/util.hpp"

namespace cutcraft {

void Graph::add_edge(int u, int v) {
    if (u == v) throw std::runtime_error("self-loop at vertex " + std::to_string(u + 1));
    if (u < 0 || v < 0 || u >= n || v >= n)
        throw std::runtime_error("edge endpoint out of range: " + std::to_string(std::max(u, v) + 1));
    if (u > v) std::swap(u, v);
    edges.emplace_back(u, v);
}

bool Graph::has_edge(int u, int v) const {
    if (u > v) std::swap(u, v);
    return std::binary_search(edges.begin(), edges.end(), std::make_pair(u, v));
}

void Graph::finalize() {
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    adj.assign(n, {});
    for (auto [u, v] : edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    for (auto& a : adj) std::sort(a.begin(), a.end());
}

Graph Graph::from_edges(int n, std::vector<std::pair<int, int>> es) {
    Graph g(n);
    for (auto [u, v] : es) g.add_edge(u, v);
    g.finalize();
    return g;
}

ParsedGraph parse_graph(const std::string& text) {
    ParsedGraph out;
    std::istringstream in(text);
    std::string line;
    bool have_header = false;
    int n = 0;
    long declared_m = 0, seen = 0;
    std::vector<std::pair<int, int>> raw;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == 'c') continue;
        std::istringstream ls(line);
        if (line[0] == 'p') {
            std::string p, kind;
            if (!(ls >> p >> kind >> n >> declared_m) || kind != "tw" || n < 0 || declared_m < 0)
                throw std::runtime_error("malformed header at line " + std::to_string(lineno));
            if (have_header) throw std::runtime_error("duplicate header at line " + std::to_string(lineno));
            have_header = true;
            continue;
        }
        if (!have_header) throw std::runtime_error("edge before header at line " + std::to_string(lineno));
        long u, v;
        if (!(ls >> u >> v)) throw std::runtime_error("malformed edge at line " + std::to_string(lineno));
        std::string rest;
        if (ls >> rest) throw std::runtime_error("trailing tokens at line " + std::to_string(lineno));
        if (u < 1 || v < 1 || u > n || v > n)
            throw std::runtime_error("edge endpoint out of range at line " + std::to_string(lineno));
        if (u == v) throw std::runtime_error("self-loop at line " + std::to_string(lineno));
        ++seen;
        int a = (int)u - 1, b = (int)v - 1;
        if (a > b) std::swap(a, b);
        raw.emplace_back(a, b);
    }
    if (!have_header) throw std::runtime_error("missing header");
    if (seen != declared_m)
        throw std::runtime_error("edge count mismatch: header says " + std::to_string(declared_m) +
                                 ", found " + std::to_string(seen));
    std::sort(raw.begin(), raw.end());
    for (size_t i = 1; i < raw.size(); ++i)
        if (raw[i] == raw[i - 1] && (i == 1 || raw[i] != raw[i - 2]))
            out.warnings.push_back("duplicate edge " + std::to_string(raw[i].first + 1) + " " +
                                   std::to_string(raw[i].second + 1) + " ignored");
    raw.erase(std::unique(raw.begin(), raw.end()), raw.end());
    Graph g(n);
    g.edges = std::move(raw);
    g.finalize();
    out.graph = std::move(g);
    return out;
}

ParsedGraph parse_graph_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_graph(ss.str());
}

std::string emit_graph(const Graph& g) {
    std::ostringstream out;
    out << "p tw " << g.n << " " << g.m() << "\n";
    for (auto [u, v] : g.edges) out << u + 1 << " " << v + 1 << "\n";
    return out.str();
}

std::vector<char> make_side(const Graph& g, const std::vector<int>& s) {
    std::vector<char> side(g.n, 0);
    for (int v : s) {
        if (v < 0 || v >= g.n) throw std::runtime_error("vertex out of range: " + std::to_string(v + 1));
        side[v] = 1;
    }
    return side;
}

int cut_size(const Graph& g, const std::vector<char>& side) {
    int c = 0;
    for (auto [u, v] : g.edges) c += side[u] != side[v];
    return c;
}

int cut_size(const Graph& g, const std::vector<int>& s) { return cut_size(g, make_side(g, s)); }

bool is_connected_subset(const Graph& g, const std::vector<char>& side) {
    int start = -1, total = 0;
    for (int v = 0; v < g.n; ++v)
        if (side[v]) {
            if (start < 0) start = v;
            ++total;
        }
    if (total == 0) return true;
    std::vector<int> stack{start};
    std::vector<char> seen(g.n, 0);
    seen[start] = 1;
    int reached = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : g.adj[v])
            if (side[w] && !seen[w]) {
                seen[w] = 1;
                ++reached;
                stack.push_back(w);
            }
    }
    return reached == total;
}

bool is_connected_subset(const Graph& g, const std::vector<int>& s) {
    return is_connected_subset(g, make_side(g, s));
}

bool is_connected(const Graph& g) {
    if (g.n == 0) return true;
    std::vector<char> all(g.n, 1);
    return is_connected_subset(g, all);
}

bool is_minimal_cut(const Graph& g, const std::vector<int>& s) {
    if (!is_connected(g)) throw std::runtime_error("disconnected input graph");
    auto side = make_side(g, s);
    int cnt = 0;
    for (char c : side) cnt += c;
    if (cnt == 0 || cnt == g.n) throw std::runtime_error("cut sides must both be non-empty");
    std::vector<char> other(g.n);
    for (int v = 0; v < g.n; ++v) other[v] = !side[v];
    return is_connected_subset(g, side) && is_connected_subset(g, other);
}

const char* problem_name(Problem p) {
    switch (p) {
        case Problem::cmc: return "cmc";
        case Problem::mmc: return "mmc";
        case Problem::cmc_st: return "cmc-st";
        case Problem::mmc_st: return "mmc-st";
    }
    return "?";
}

std::optional<Problem> problem_from_name(const std::string& s) {
    if (s == "cmc") return Problem::cmc;
    if (s == "mmc") return Problem::mmc;
    if (s == "cmc-st") return Problem::cmc_st;
    if (s == "mmc-st") return Problem::mmc_st;
    return std::nullopt;
}

bool problem_is_anchored(Problem p) { return p == Problem::cmc_st || p == Problem::mmc_st; }

bool problem_two_sided(Problem p) { return p == Problem::mmc || p == Problem::mmc_st; }

bool feasible_cut(const Graph& g, Problem p, const std::vector<char>& side, int s, int t) {
    if (problem_is_anchored(p)) {
        if (s < 0 || t < 0 || !side[s] || side[t]) return false;
    }
    if (problem_two_sided(p)) {
        int cnt = 0;
        for (char c : side) cnt += c;
        if (cnt == 0 || cnt == g.n) return false;
        std::vector<char> other(g.n);
        for (int v = 0; v < g.n; ++v) other[v] = !side[v];
        return is_connected_subset(g, side) && is_connected_subset(g, other);
    }
    return is_connected_subset(g, side);
}

Graph random_connected(int n, double p, Rng& rng) {
    if (n <= 0) throw std::invalid_argument("random_connected: n must be positive");
    for (int attempt = 0; attempt < 200; ++attempt) {
        Graph g(n);
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (rng.real() < p) g.add_edge(u, v);
        g.finalize();
        if (is_connected(g)) return g;
    }
    Graph g(n);
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    for (int i = n - 1; i > 0; --i) std::swap(order[i], order[rng.below((uint64_t)i + 1)]);
    for (int i = 1; i < n; ++i) g.add_edge(order[i], order[(int)rng.below((uint64_t)i)]);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (!g.has_edge(u, v) && rng.real() < p) g.add_edge(u, v);
    g.finalize();
    return g;
}

}  // namespace cutcraft
