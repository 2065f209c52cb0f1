#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "cutcraft/graph.hpp"
#include "cutcraft/util.hpp"

namespace cutcraft {

// Hardness-construction instance generators. Each generator builds a graph
// whose optimum encodes a source problem, together with the decision
// threshold and a role map naming every gadget vertex. They double as a
// source of structured hard instances for the bench harness.

// ---- monotone 3-CNF ---------------------------------------------------------

// A clause holds three variable indices (0-based, repeats allowed) and is
// either all-positive or all-negative.
struct MonotoneClause {
    bool positive = true;
    std::array<int, 3> vars{};
};

// Formula plus a drawing witness: var_order lists the variables as placed on
// the spine (identity when empty), clause_order lists all clauses from the
// spine outward (identity when empty). Same-side clauses must nest: spans in
// spine positions are either interior-disjoint or the earlier one lies inside
// the later one. This is a nesting-consistency check on the claimed order,
// not an embedding computation.
struct MonotoneFormula {
    int n = 0;
    std::vector<MonotoneClause> clauses;
    std::vector<int> var_order;
    std::vector<int> clause_order;

    int m() const { return (int)clauses.size(); }
};

// Does the (possibly implicit) layout witness nest correctly? False also for
// malformed fields: bad variable indices, non-permutation orders.
bool layout_ok(const MonotoneFormula& f);

// Truth of the formula under an assignment (size n, true = positive).
bool formula_satisfied(const MonotoneFormula& f, const std::vector<bool>& assignment);

// Random formula with a valid layout, by rejection: clause sets are drawn
// until ordering them innermost-first nests. Throws after too many misses
// (dense clause sets over few variables may admit no nesting).
MonotoneFormula random_monotone_formula(int n, int m, Rng& rng);

// ---- generated instances ----------------------------------------------------

// threshold: decision bound in the generated graph (0 when the construction
// scales a source bound instead — see multiplier). multiplier: a source
// certificate of value k yields a generated cut of size >= k * multiplier.
// roles: gadget name -> vertex ids, contiguous per gadget, in gadget order.
struct ReducedInstance {
    Graph g;
    Problem problem = Problem::cmc;
    long long threshold = 0;
    long long multiplier = 1;
    std::map<std::string, std::vector<int>> roles;
};

// Monotone 3-SAT -> connected max cut on a bipartite graph. Per variable: two
// literal vertices and K helpers adjacent to both; per clause: a clause
// vertex wired to its literals with sqrt(K) pendants; consecutive variables
// are linked by a bridge vertex over all four literals. Helpers and bridges
// carry K pendants each. Satisfiable iff optimum >= threshold
//   m*sqrt(K) + n*K^2 + (2n-1)*K + 2(n-1),
// valid for K a perfect square with K > m^2. unsound_scale permits smaller
// squares: the graph is still well-formed but only the forward direction of
// the equivalence survives.
ReducedInstance gen_pm3sat_cmc(const MonotoneFormula& f, long long K,
                               bool unsound_scale = false);

// Witness assembly for a satisfying assignment: the true literal of every
// variable plus all clause, helper and bridge vertices.
std::vector<int> pm3sat_witness(const ReducedInstance& inst, const MonotoneFormula& f,
                                const std::vector<bool>& assignment);

// Subdivide every edge once. Output is bipartite (originals vs subdividers)
// and preserves the two-sided optimum whenever it exceeds 2; subcubic when
// the input is cubic. threshold stays 0: the bound carries over unchanged.
ReducedInstance gen_subdivision_mmc(const Graph& g);

// Lift an S-side of the source graph: subdividers join S unless both
// endpoints lie outside it.
std::vector<int> subdivision_witness(const ReducedInstance& inst, const Graph& source,
                                     const std::vector<int>& s);

// Exact cover by 3-sets -> connected max cut on a split graph. Triples become
// clique vertices; m - 2n filler clique vertices carry M pendants each;
// elements form the independent set, wired to the triples containing them.
// Triples are copied (appended, originals first) until every element lies in
// at least 3(n+2) of them, with n = |X|/3. An exact cover exists iff optimum
// >= threshold
//   (m-n)^2 + 3m - 3n + (m-2n)*M
// with m the final triple count. M < 0 selects the default 3n+1.
// unsound_scale skips the copying step and allows smaller M.
ReducedInstance gen_x3c_cmc(int num_elements, const std::vector<std::array<int, 3>>& triples,
                            long long M = -1, bool unsound_scale = false);

// Witness for an exact cover (triple indices into the family as passed;
// copies are appended after the originals, so original indices stay valid):
// chosen triples, all fillers, all elements. Cuts exactly the threshold.
std::vector<int> x3c_witness(const ReducedInstance& inst, const std::vector<int>& cover);

// Max cut -> two-sided cut on a split graph: the source vertices become a
// clique, each source edge gains ell independent copy vertices adjacent to
// its endpoints. A source cut of size k lifts to a minimal cut of size
// >= k * ell; the guarantee direction back needs ell = n^3 (the default,
// ell < 0).
ReducedInstance gen_maxcut_mmc_split(const Graph& g, long long ell = -1);

// Lift a source cut side: edge copies join S unless both endpoints lie
// outside it.
std::vector<int> maxcut_witness(const ReducedInstance& inst, const Graph& source,
                                const std::vector<int>& s);

// ---- structural validators ----------------------------------------------------

bool is_bipartite(const Graph& g);

// Do the two lists partition V into a clique and an independent set?
bool is_split(const Graph& g, const std::vector<int>& clique,
              const std::vector<int>& independent);

}  // namespace cutcraft
