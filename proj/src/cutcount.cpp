#include "cutcraft/cutcount.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#if defined(__x86_64__) || defined(_M_X64)
#include <wmmintrin.h>
#define CC_HAVE_CLMUL_INTRIN 1
#endif

namespace cutcraft {

namespace {

// ---- GF(2^64), modulus x^64 + x^4 + x^3 + x + 1 ----------------------------

uint64_t gfmul_soft(uint64_t a, uint64_t b) {
    // 4-bit windowed carry-less multiply, then modular fold
    uint64_t tab_lo[16], tab_hi[16];
    tab_lo[0] = tab_hi[0] = 0;
    uint64_t cur_lo = a, cur_hi = 0;
    for (int i = 1; i < 16; i <<= 1) {
        tab_lo[i] = cur_lo;
        tab_hi[i] = cur_hi;
        for (int j = 1; j < i; ++j) {
            tab_lo[i + j] = cur_lo ^ tab_lo[j];
            tab_hi[i + j] = cur_hi ^ tab_hi[j];
        }
        cur_hi = (cur_hi << 1) | (cur_lo >> 63);
        cur_lo <<= 1;
    }
    uint64_t lo = 0, hi = 0;
    for (int sh = 60; sh >= 0; sh -= 4) {
        hi = (hi << 4) | (lo >> 60);
        lo <<= 4;
        int w = (int)(b >> sh) & 15;
        lo ^= tab_lo[w];
        hi ^= tab_hi[w];
    }
    // fold hi down: x^64 == x^4 + x^3 + x + 1 (0x1b)
    while (hi) {
        uint64_t h = hi;
        hi = (h >> 60) ^ (h >> 61) ^ (h >> 63);  // overflow of h * 0x1b
        lo ^= h ^ (h << 1) ^ (h << 3) ^ (h << 4);
    }
    return lo;
}

#ifdef CC_HAVE_CLMUL_INTRIN
__attribute__((target("pclmul,sse2"))) uint64_t gfmul_clmul(uint64_t a, uint64_t b) {
    const __m128i m = _mm_set_epi64x(0, 0x1b);
    __m128i x = _mm_set_epi64x(0, (long long)a);
    __m128i y = _mm_set_epi64x(0, (long long)b);
    __m128i p = _mm_clmulepi64_si128(x, y, 0x00);          // 128-bit product
    __m128i f1 = _mm_clmulepi64_si128(p, m, 0x01);         // hi * 0x1b
    __m128i f2 = _mm_clmulepi64_si128(f1, m, 0x01);        // fold the residue
    __m128i r = _mm_xor_si128(_mm_xor_si128(p, f1), f2);
    return (uint64_t)_mm_cvtsi128_si64(r);
}
#endif

using GfMulFn = uint64_t (*)(uint64_t, uint64_t);

GfMulFn pick_gfmul() {
#ifdef CC_HAVE_CLMUL_INTRIN
    if (__builtin_cpu_supports("pclmul")) return gfmul_clmul;
#endif
    return gfmul_soft;
}

GfMulFn const gfmul = pick_gfmul();

uint64_t gfpow(uint64_t a, uint64_t e) {
    uint64_t r = 1;
    while (e) {
        if (e & 1) r = gfmul(r, a);
        a = gfmul(a, a);
        e >>= 1;
    }
    return r;
}

uint64_t gfinv(uint64_t a) { return gfpow(a, ~1ull); }  // a^(2^64 - 2)

// ---- class-assignment keys: 2 bits per sorted bag position -----------------

inline uint32_t get2(uint32_t key, int pos) { return key >> (2 * pos) & 3; }
inline uint32_t insert2(uint32_t key, int pos, uint32_t cls) {
    uint32_t low = key & ((1u << (2 * pos)) - 1);
    uint32_t high = (key >> (2 * pos)) << (2 * pos + 2);
    return high | (cls << (2 * pos)) | low;
}
inline uint32_t erase2(uint32_t key, int pos) {
    uint32_t low = key & ((1u << (2 * pos)) - 1);
    uint32_t high = (key >> (2 * pos + 2)) << (2 * pos);
    return high | low;
}

int pos_of(const std::vector<int>& bag, int v) {
    return (int)(std::lower_bound(bag.begin(), bag.end(), v) - bag.begin());
}

// ---- flat GF(2) polynomial helpers (exact cells) ---------------------------

void shl_bits(std::vector<uint64_t>& v, int sh) {
    if (sh == 0 || v.empty()) return;
    int wsh = sh >> 6, bsh = sh & 63;
    v.insert(v.begin(), wsh, 0);
    if (bsh) {
        uint64_t carry = 0;
        for (size_t i = wsh; i < v.size(); ++i) {
            uint64_t nxt = v[i] >> (64 - bsh);
            v[i] = (v[i] << bsh) | carry;
            carry = nxt;
        }
        if (carry) v.push_back(carry);
    }
}

void shr_bits(std::vector<uint64_t>& v, int sh) {
    if (sh == 0 || v.empty()) return;
    int wsh = sh >> 6, bsh = sh & 63;
    if (wsh >= (int)v.size()) {
        v.clear();
        return;
    }
    v.erase(v.begin(), v.begin() + wsh);
    if (bsh) {
        for (size_t i = 0; i < v.size(); ++i) {
            v[i] >>= bsh;
            if (i + 1 < v.size()) v[i] |= v[i + 1] << (64 - bsh);
        }
    }
    while (!v.empty() && v.back() == 0) v.pop_back();
}

void xor_into(std::vector<uint64_t>& dst, const std::vector<uint64_t>& src) {
    if (src.size() > dst.size()) dst.resize(src.size(), 0);
    for (size_t i = 0; i < src.size(); ++i) dst[i] ^= src[i];
    while (!dst.empty() && dst.back() == 0) dst.pop_back();
}

std::vector<uint64_t> clmul_bits(const std::vector<uint64_t>& a,
                                 const std::vector<uint64_t>& b) {
    std::vector<uint64_t> out;
    if (a.empty() || b.empty()) return out;
    out.assign(a.size() + b.size(), 0);
    for (size_t i = 0; i < a.size(); ++i) {
        uint64_t w = a[i];
        while (w) {
            int sh = __builtin_ctzll(w);
            w &= w - 1;
            for (size_t j = 0; j < b.size(); ++j) {
                out[i + j] ^= b[j] << sh;
                if (sh) out[i + j + 1] ^= b[j] >> (64 - sh);
            }
        }
    }
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

// ---- the service DP, templated over the cell representation ----------------

struct EvalOps {
    // R weight-assignment channels evaluated at random points of GF(2^64);
    // one cell = dense-by-cut-size blocks of R field elements
    using Cell = std::vector<uint64_t>;
    int R;
    std::vector<std::vector<int>> wv;        // [r][v]
    std::vector<std::vector<uint64_t>> fwd;  // alpha^wv
    std::vector<std::vector<uint64_t>> bwd;  // alpha^-wv
    const Budget* budget;

    EvalOps(const Graph& g, int repeats, uint64_t seed, const Budget* bgt)
        : R(repeats), budget(bgt) {
        int n = g.n;
        wv.assign(R, std::vector<int>(n));
        fwd.assign(R, std::vector<uint64_t>(n));
        bwd.assign(R, std::vector<uint64_t>(n));
        Rng base(seed);
        for (int r = 0; r < R; ++r) {
            Rng ch = base.split((uint64_t)r + 1);
            uint64_t alpha = 0;
            while (!alpha) alpha = ch.next();
            uint64_t alpha_inv = gfinv(alpha);
            for (int v = 0; v < n; ++v) {
                wv[r][v] = 1 + (int)ch.below((uint64_t)2 * n);
                fwd[r][v] = gfpow(alpha, (uint64_t)wv[r][v]);
                bwd[r][v] = gfpow(alpha_inv, (uint64_t)wv[r][v]);
            }
        }
    }

    Cell one() const { return Cell((size_t)R, 1); }
    bool zero(const Cell& c) const {
        for (uint64_t x : c)
            if (x) return false;
        return true;
    }
    void mul_weight(Cell& c, int v) const {
        for (size_t i = 0; i < c.size(); ++i)
            if (c[i]) c[i] = gfmul(c[i], fwd[i % R][v]);
    }
    void shift_ell(Cell& c) const { c.insert(c.begin(), (size_t)R, 0); }
    void add(Cell& dst, Cell&& src) const {
        if (src.size() > dst.size()) dst.resize(src.size(), 0);
        for (size_t i = 0; i < src.size(); ++i) dst[i] ^= src[i];
    }
    Cell join(const Cell& a, const Cell& b, const std::vector<int>& s_verts) const {
        size_t la = a.size() / R, lb = b.size() / R;
        Cell out((la + lb - 1) * R, 0);
        for (size_t i = 0; i < la; ++i) {
            if (budget && (i & 15) == 0) budget->check("cut-count join");
            for (int r = 0; r < R; ++r) {
                uint64_t av = a[i * R + r];
                if (!av) continue;
                for (size_t j = 0; j < lb; ++j) {
                    uint64_t bv = b[j * R + r];
                    if (bv) out[(i + j) * R + r] ^= gfmul(av, bv);
                }
            }
        }
        // shared bag weights were counted in both children; divide one out
        for (int r = 0; r < R; ++r) {
            uint64_t corr = 1;
            for (int v : s_verts) corr = gfmul(corr, bwd[r][v]);
            if (corr == 1) continue;
            for (size_t i = r; i < out.size(); i += R)
                if (out[i]) out[i] = gfmul(out[i], corr);
        }
        return out;
    }
    // largest cut size any channel certifies, -1 if none
    long long best_ell(const Cell& c) const {
        for (long long l = (long long)c.size() / R - 1; l >= 0; --l)
            for (int r = 0; r < R; ++r)
                if (c[(size_t)l * R + r]) return l;
        return -1;
    }
};

struct ExactOps {
    // one bit per (cut size l, weight w): flat GF(2) polynomial with lane
    // stride wide enough that join products cannot cross lanes
    using Cell = std::vector<uint64_t>;
    int stride;
    std::vector<int> wv;

    ExactOps(const Graph& g, const std::vector<int>& weights)
        : stride(4 * g.n * (g.n - 1) + 2), wv(weights) {}

    Cell one() const { return Cell{1}; }
    bool zero(const Cell& c) const {
        for (uint64_t x : c)
            if (x) return false;
        return true;
    }
    void mul_weight(Cell& c, int v) const { shl_bits(c, wv[v]); }
    void shift_ell(Cell& c) const { shl_bits(c, stride); }
    void add(Cell& dst, Cell&& src) const { xor_into(dst, src); }
    Cell join(const Cell& a, const Cell& b, const std::vector<int>& s_verts) const {
        Cell out = clmul_bits(a, b);
        int wbag = 0;
        for (int v : s_verts) wbag += wv[v];
        shr_bits(out, wbag);
        return out;
    }
};

template <class Ops>
using Table = std::unordered_map<uint32_t, typename Ops::Cell>;

template <class Ops, class Sink>
Table<Ops> run_cc(const NiceTreeDecomposition& nd, bool two_sided,
                  const Ops& ops, const Budget* budget, Sink&& sink) {
    auto order = nd.postorder();
    std::vector<Table<Ops>> tables(nd.nodes.size());
    const uint32_t kT = 2;  // left complement class; one-sided runs use it alone
    int nclasses = two_sided ? 4 : 3;

    auto emit = [&](Table<Ops>& tab, uint32_t key, typename Ops::Cell&& cell) {
        if (ops.zero(cell)) return;
        auto it = tab.find(key);
        if (it == tab.end())
            tab.emplace(key, std::move(cell));
        else
            ops.add(it->second, std::move(cell));
    };

    for (int ni : order) {
        if (budget) budget->check("cut-count dp");
        const NiceNode& nodei = nd.nodes[ni];
        if ((int)nodei.bag.size() > 16) throw BudgetExceeded("bag too large for counting dp");
        Table<Ops> out;
        switch (nodei.kind) {
            case NiceKind::Leaf: {
                // s takes the left S half (class 0), t the left complement half
                uint32_t key = kT << (2 * pos_of(nodei.bag, nd.t));
                emit(out, key, ops.one());
                break;
            }
            case NiceKind::IntroduceVertex: {
                auto& child = tables[nodei.child1];
                int pv = pos_of(nodei.bag, nodei.v);
                out.reserve(child.size() * nclasses);
                for (auto& [k0, c0] : child) {
                    for (int cls = 0; cls < nclasses; ++cls) {
                        typename Ops::Cell c = c0;
                        if (cls < 2) ops.mul_weight(c, nodei.v);
                        emit(out, insert2(k0, pv, (uint32_t)cls), std::move(c));
                    }
                }
                break;
            }
            case NiceKind::IntroduceEdge: {
                auto& child = tables[nodei.child1];
                int pu = pos_of(nodei.bag, nodei.u);
                int pv = pos_of(nodei.bag, nodei.v);
                out.reserve(child.size());
                for (auto& [k0, c0] : child) {
                    uint32_t cu = get2(k0, pu), cv = get2(k0, pv);
                    bool su = cu < 2, sv = cv < 2;
                    if (su != sv) {
                        typename Ops::Cell c = std::move(c0);
                        ops.shift_ell(c);
                        emit(out, k0, std::move(c));
                    } else if (cu == cv) {
                        emit(out, k0, std::move(c0));
                    }
                    // same side, different halves: the cut is inconsistent
                }
                break;
            }
            case NiceKind::Forget: {
                auto& child = tables[nodei.child1];
                int pv = pos_of(nd.nodes[nodei.child1].bag, nodei.v);
                out.reserve(child.size());
                for (auto& [k0, c0] : child)
                    emit(out, erase2(k0, pv), std::move(c0));
                break;
            }
            case NiceKind::Join: {
                auto& A = tables[nodei.child1];
                auto& B = tables[nodei.child2];
                if (B.size() < A.size()) std::swap(A, B);
                out.reserve(A.size());
                std::vector<int> s_verts;
                for (auto& [key, ca] : A) {
                    auto it = B.find(key);
                    if (it == B.end()) continue;
                    if (budget) budget->check("cut-count dp");
                    s_verts.clear();
                    for (size_t p = 0; p < nodei.bag.size(); ++p)
                        if (get2(key, (int)p) < 2 && nodei.bag[p] != nd.s)
                            s_verts.push_back(nodei.bag[p]);
                    emit(out, key, ops.join(ca, it->second, s_verts));
                }
                break;
            }
        }
        tables[ni] = std::move(out);
        sink(ni, tables[ni]);
        if (nodei.child1 >= 0) Table<Ops>{}.swap(tables[nodei.child1]);
        if (nodei.child2 >= 0) Table<Ops>{}.swap(tables[nodei.child2]);
    }
    return std::move(tables[nd.root]);
}

uint32_t root_key(const NiceTreeDecomposition& nd) {
    const auto& bag = nd.nodes[nd.root].bag;
    uint32_t key = 0;
    key |= 0u << (2 * pos_of(bag, nd.s));
    key |= 2u << (2 * pos_of(bag, nd.t));
    return key;
}

}  // namespace

long long count_consistent_cuts(const Graph& g, const std::vector<int>& vs, int pinned) {
    int k = (int)vs.size();
    if (k > 20) throw std::runtime_error("consistent-cut counting capped at 20 vertices");
    int pi = -1;
    for (int i = 0; i < k; ++i)
        if (vs[i] == pinned) pi = i;
    if (pi < 0) throw std::runtime_error("pinned vertex not in the set");
    long long count = 0;
    for (uint32_t half = 0; half < (1u << k); ++half) {
        if (!(half >> pi & 1)) continue;
        bool ok = true;
        for (int i = 0; i < k && ok; ++i)
            for (int j = i + 1; j < k && ok; ++j)
                if ((half >> i & 1) != (half >> j & 1) && g.has_edge(vs[i], vs[j])) ok = false;
        count += ok;
    }
    return count;
}

ExactTables cc_exact_tables(const Graph& g, const NiceTreeDecomposition& nd,
                            bool two_sided, const std::vector<int>& weights) {
    if ((int)weights.size() != g.n) throw std::invalid_argument("one weight per vertex");
    ExactOps ops(g, weights);
    ExactTables res;
    res.wcap = 2 * g.n * (g.n - 1);
    res.node.resize(nd.nodes.size());
    run_cc(nd, two_sided, ops, nullptr, [&](int ni, const Table<ExactOps>& tab) {
        for (auto& [key, cell] : tab) {
            ExactCell ec;
            ec.stride = ops.stride;
            ec.bits = cell;
            res.node[ni].emplace(key, std::move(ec));
        }
    });
    return res;
}

namespace {

// best certified cut size for one anchored pair, -1 when nothing certified
long long run_pair(const Graph& g, const TreeDecomposition& td, int s, int t,
                   bool two_sided, const EvalOps& ops, const Budget* budget) {
    auto nice = to_nice(g, td, s, t);
    auto root = run_cc(nice, two_sided, ops, budget, [](int, const Table<EvalOps>&) {});
    auto it = root.find(root_key(nice));
    if (it == root.end()) return -1;
    return ops.best_ell(it->second);
}

struct DriverPlan {
    std::vector<std::pair<int, int>> pairs;
    int repeats;
};

DriverPlan plan_driver(const Graph& g, Problem p, const CutCountOptions& opt, int s, int t) {
    if (!is_connected(g)) throw std::runtime_error("disconnected input graph");
    DriverPlan dp;
    dp.repeats = opt.repeats > 0
                     ? opt.repeats
                     : std::max(10, (int)std::ceil(std::log2(std::max(2, g.n))));
    if (problem_is_anchored(p)) {
        if (s < 0 || t < 0 || s == t || s >= g.n || t >= g.n)
            throw std::runtime_error("anchored problem needs distinct anchors s, t");
        dp.pairs = {{s, t}};
        return dp;
    }
    // pivot sweep: any optimal cut either misses vertex 0 (anchor it opposite)
    // or, for the one-sided problem, contains it (anchor it inside)
    for (int v = 1; v < g.n; ++v) dp.pairs.push_back({v, 0});
    if (!problem_two_sided(p))
        for (int v = 1; v < g.n; ++v) dp.pairs.push_back({0, v});
    return dp;
}

}  // namespace

SolveReport solve_cutcount(const Graph& g, Problem p, const CutCountOptions& opt, int s,
                           int t) {
    DriverPlan plan = plan_driver(g, p, opt, s, t);
    SolveReport rep;
    rep.problem = p;
    rep.algorithm = "cutcount";
    rep.n = g.n;
    rep.m = g.m();
    rep.seed = opt.seed;
    rep.repeats = plan.repeats;
    if (problem_is_anchored(p)) rep.anchors = std::make_pair(s, t);

    if (g.n == 1) {
        if (!problem_two_sided(p)) rep.optimum = 0;  // the empty side
        return rep;
    }
    const TreeDecomposition* td = opt.td;
    TreeDecomposition own;
    if (!td) {
        own = heuristic_decomposition(g);
        td = &own;
    }
    EvalOps ops(g, plan.repeats, opt.seed, opt.budget);
    long long best = -1;
    for (auto [a, b] : plan.pairs)
        best = std::max(best, run_pair(g, *td, a, b, problem_two_sided(p), ops, opt.budget));
    if (best >= 0)
        rep.optimum = best;
    else if (!problem_two_sided(p))
        rep.optimum = 0;  // S = {} is a certificate for the one-sided problem
    return rep;
}

namespace ccdetail {
uint64_t gfmul_test(uint64_t a, uint64_t b) { return gfmul(a, b); }
uint64_t gfmul_soft_test(uint64_t a, uint64_t b) { return gfmul_soft(a, b); }
uint64_t gfinv_test(uint64_t a) { return gfinv(a); }
}  // namespace ccdetail

bool decide_cutcount(const Graph& g, Problem p, long long k, const CutCountOptions& opt,
                     int s, int t) {
    DriverPlan plan = plan_driver(g, p, opt, s, t);
    if (k <= 0) {
        // deterministic certificates: the empty side for the one-sided
        // problem; a spanning-tree split for the two-sided one (n >= 2)
        if (!problem_two_sided(p)) return true;
        return g.n >= 2;
    }
    if (g.n == 1 || k > g.m()) return false;
    const TreeDecomposition* td = opt.td;
    TreeDecomposition own;
    if (!td) {
        own = heuristic_decomposition(g);
        td = &own;
    }
    EvalOps ops(g, plan.repeats, opt.seed, opt.budget);
    for (auto [a, b] : plan.pairs)
        if (run_pair(g, *td, a, b, problem_two_sided(p), ops, opt.budget) >= k) return true;
    return false;
}

}  // namespace cutcraft
