#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "cutcraft/bench.hpp"
#include "cutcraft/cliquewidth.hpp"
#include "cutcraft/driver.hpp"
#include "cutcraft/oracle.hpp"
#include "cutcraft/reductions.hpp"
#include "cutcraft/treedec.hpp"
#include "cutcraft/util.hpp"

using namespace cutcraft;
using nlohmann::json;

namespace {

// Exit codes: 0 yes/solved, 1 no, 2 input error, 3 budget exceeded.
constexpr int kOk = 0;
constexpr int kNo = 1;
constexpr int kInputError = 2;
constexpr int kBudget = 3;

// "u,v" with 1-based vertex ids.
std::pair<int, int> parse_vertex_pair(const std::string& s, int n) {
    size_t comma = s.find(',');
    if (comma == std::string::npos)
        throw std::runtime_error("expected two vertices as 'u,v', got '" + s + "'");
    int u, v;
    try {
        size_t pos;
        u = std::stoi(s.substr(0, comma), &pos);
        if (pos != comma) throw std::invalid_argument("");
        std::string rest = s.substr(comma + 1);
        v = std::stoi(rest, &pos);
        if (pos != rest.size()) throw std::invalid_argument("");
    } catch (...) {
        throw std::runtime_error("expected two vertices as 'u,v', got '" + s + "'");
    }
    if (u < 1 || u > n || v < 1 || v > n)
        throw std::runtime_error("vertex ids are 1.." + std::to_string(n));
    if (u == v) throw std::runtime_error("the two vertices must differ");
    return {u - 1, v - 1};
}

Graph load_graph(const std::string& path) {
    ParsedGraph pg = parse_graph_file(path);
    for (const auto& w : pg.warnings) std::cerr << "warning: " << w << "\n";
    return pg.graph;
}

std::string id_list(const std::vector<int>& raw) {
    std::vector<int> ids(raw);
    std::sort(ids.begin(), ids.end());
    std::string line;
    for (int v : ids) {
        if (!line.empty()) line += " ";
        line += std::to_string(v + 1);
    }
    return line;
}

std::string witness_line(const std::vector<int>& w) {
    std::string line = id_list(w);
    return line.empty() ? "(empty side)" : line;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

std::string read_text(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Plain text formula:
//   first line:  <variables> <clauses>
//   clause line: + a b c   (all-positive)  or  - a b c  (all-negative), 1-based
//   optional:    order p1 ... pn      variable spine order
//   optional:    clauses c1 ... cm    same-side nesting order, inner first
// '#' starts a comment.
MonotoneFormula parse_formula_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<std::vector<std::string>> rows;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::vector<std::string> toks;
        std::string t;
        while (ls >> t) toks.push_back(t);
        if (!toks.empty()) rows.push_back(std::move(toks));
    }
    if (rows.empty()) throw std::runtime_error("formula file is empty");
    if (rows[0].size() != 2)
        throw std::runtime_error("first line must be '<variables> <clauses>'");
    MonotoneFormula f;
    f.n = std::stoi(rows[0][0]);
    int m = std::stoi(rows[0][1]);
    if (f.n < 1 || m < 0) throw std::runtime_error("bad formula header");
    size_t row = 1;
    for (int c = 0; c < m; ++c, ++row) {
        if (row >= rows.size()) throw std::runtime_error("missing clause lines");
        const auto& r = rows[row];
        if (r.size() != 4 || (r[0] != "+" && r[0] != "-"))
            throw std::runtime_error("clause line must be '+|- a b c'");
        MonotoneClause cl;
        cl.positive = (r[0] == "+");
        for (int i = 0; i < 3; ++i) {
            int var = std::stoi(r[i + 1]);
            if (var < 1 || var > f.n) throw std::runtime_error("clause variable out of range");
            cl.vars[i] = var - 1;
        }
        f.clauses.push_back(cl);
    }
    for (; row < rows.size(); ++row) {
        const auto& r = rows[row];
        bool vars = r[0] == "order", cls = r[0] == "clauses";
        if (!vars && !cls) throw std::runtime_error("unexpected line '" + r[0] + " ...'");
        std::vector<int> ids;
        for (size_t i = 1; i < r.size(); ++i) ids.push_back(std::stoi(r[i]) - 1);
        (vars ? f.var_order : f.clause_order) = std::move(ids);
    }
    return f;
}

json formula_to_json(const MonotoneFormula& f) {
    json jf;
    jf["variables"] = f.n;
    json jcl = json::array();
    for (const auto& c : f.clauses) {
        json one;
        one["sign"] = c.positive ? "+" : "-";
        one["vars"] = {c.vars[0] + 1, c.vars[1] + 1, c.vars[2] + 1};
        jcl.push_back(one);
    }
    jf["clauses"] = jcl;
    auto order1 = [](const std::vector<int>& v) {
        json a = json::array();
        for (int x : v) a.push_back(x + 1);
        return a;
    };
    if (!f.var_order.empty()) jf["order"] = order1(f.var_order);
    if (!f.clause_order.empty()) jf["clause_order"] = order1(f.clause_order);
    return jf;
}

// gr file plus a .json sidecar with everything needed to interpret the
// instance: problem, threshold, scale, and the role map (1-based ids).
void write_instance(const std::string& base, const ReducedInstance& inst,
                    json extra = json::object()) {
    write_text(base + ".gr", emit_graph(inst.g));
    json side;
    side["problem"] = problem_name(inst.problem);
    side["threshold"] = inst.threshold;
    side["multiplier"] = inst.multiplier;
    json roles;
    for (const auto& [name, ids] : inst.roles) {
        json a = json::array();
        for (int v : ids) a.push_back(v + 1);
        roles[name] = a;
    }
    side["roles"] = roles;
    for (auto& [k, v] : extra.items()) side[k] = v;
    write_text(base + ".json", side.dump(2) + "\n");
    std::cout << "wrote " << base << ".gr (n=" << inst.g.n << " m=" << inst.g.m()
              << ") threshold " << inst.threshold << "\n";
}

struct SolveArgs {
    std::string graph_path, problem = "cmc", algo = "auto", td_path, cwd_path, st, out;
    long long k = -1;
    int repeats = 0;
    uint64_t seed = 1;
    int64_t budget_ms = 0;
    bool quiet = false;
};

int do_solve(const SolveArgs& a) {
    Graph g = load_graph(a.graph_path);
    auto problem = problem_from_name(a.problem);
    if (!problem) throw std::runtime_error("unknown problem '" + a.problem + "'");
    int s = -1, t = -1;
    if (problem_is_anchored(*problem)) {
        if (a.st.empty())
            throw std::runtime_error("anchored problems need --st u,v");
        std::tie(s, t) = parse_vertex_pair(a.st, g.n);
    } else if (!a.st.empty()) {
        throw std::runtime_error("--st only applies to cmc-st / mmc-st");
    }
    if (!a.cwd_path.empty() && a.algo != "cliquewidth")
        throw std::runtime_error("--cwd only applies to --algo cliquewidth");

    std::optional<TreeDecomposition> td;
    if (!a.td_path.empty()) {
        td = parse_td_file(a.td_path);
        TdCheck chk = validate_decomposition(g, *td);
        if (!chk.ok) throw std::runtime_error("bad decomposition: " + chk.message);
    }
    Budget budget;
    const Budget* bp = nullptr;
    if (a.budget_ms > 0) {
        budget = Budget::from_ms(a.budget_ms);
        bp = &budget;
    }

    SolveReport rep;
    if (a.algo == "cliquewidth") {
        if (a.cwd_path.empty())
            throw std::runtime_error("--algo cliquewidth needs --cwd <expression file>");
        if (problem_is_anchored(*problem))
            throw std::runtime_error("the clique-width solver handles cmc and mmc only");
        CwExpression expr = parse_cw_file(a.cwd_path);
        Graph built = evaluate_cw(expr);
        if (built.n != g.n || built.edges != g.edges)
            throw std::runtime_error("expression builds a different graph than --graph");
        DecompositionTree tree = build_decomposition_tree(g, expr);
        rep = solve_cw(g, tree, *problem, bp);
    } else if (a.k >= 0 && a.algo == "auto" && !problem_is_anchored(*problem)) {
        if (a.k < 1) throw std::runtime_error("--k must be at least 1");
        KDecision d = solve_k(g, *problem, a.k, a.seed, bp);
        if (!a.out.empty()) write_text(a.out, serialize_report(d.report) + "\n");
        if (!a.quiet) {
            if (d.yes) {
                std::cout << "yes (cut of size " << *d.report.optimum << " found, algorithm "
                          << d.report.algorithm << ")\n";
                if (d.report.witness) std::cout << "S: " << witness_line(*d.report.witness) << "\n";
            } else {
                std::cout << "no\n";
            }
        }
        return d.yes ? kOk : kNo;
    } else {
        rep = solve_auto(g, *problem, a.algo, s, t, a.seed, a.repeats, bp, nullptr,
                         td ? &*td : nullptr);
    }

    if (!a.out.empty()) write_text(a.out, serialize_report(rep) + "\n");
    if (a.k >= 0) {
        if (a.k < 1) throw std::runtime_error("--k must be at least 1");
        bool yes = rep.optimum && *rep.optimum >= a.k;
        if (!a.quiet) {
            if (yes) {
                std::cout << "yes (cut of size " << *rep.optimum << ", algorithm "
                          << rep.algorithm << ")\n";
                if (rep.witness) std::cout << "S: " << witness_line(*rep.witness) << "\n";
            } else {
                std::cout << "no\n";
            }
        }
        return yes ? kOk : kNo;
    }
    if (!a.quiet) {
        std::cout << "problem " << problem_name(rep.problem) << "\n"
                  << "algorithm " << rep.algorithm << "\n"
                  << "n " << rep.n << " m " << rep.m << "\n";
        if (rep.optimum) {
            std::cout << "optimum " << *rep.optimum << "\n";
            if (rep.witness) std::cout << "S: " << witness_line(*rep.witness) << "\n";
        } else {
            std::cout << "optimum none (no feasible cut)\n";
        }
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cutcraft: exact solvers for connected and minimal maximum cuts"};
    app.require_subcommand(1);

    SolveArgs sa;
    auto* solve = app.add_subcommand("solve", "solve one instance");
    solve->add_option("--graph", sa.graph_path, "input graph (.gr)")->required();
    solve->add_option("--problem", sa.problem, "cmc|mmc|cmc-st|mmc-st");
    solve->add_option("--algo", sa.algo,
                      "auto|oracle|twdp|rank|cutcount|twincover|cliquewidth");
    solve->add_option("--td", sa.td_path, "use this tree decomposition (.td)");
    solve->add_option("--cwd", sa.cwd_path, "clique-width expression file");
    solve->add_option("--st", sa.st, "anchored endpoints as u,v (1-based)");
    solve->add_option("--k", sa.k, "decide: is there a feasible cut of size >= k?");
    solve->add_option("--repeats", sa.repeats, "repetitions for the counting solver");
    solve->add_option("--seed", sa.seed, "random seed");
    solve->add_option("--budget-ms", sa.budget_ms, "time budget in milliseconds");
    solve->add_option("-o,--output", sa.out, "write the report as JSON here");
    solve->add_flag("--quiet", sa.quiet, "suppress the human-readable result");

    std::string vg, vr;
    auto* verify = app.add_subcommand("verify", "check a report against its graph");
    verify->add_option("--graph", vg, "input graph (.gr)")->required();
    verify->add_option("--report", vr, "report JSON")->required();

    auto* gen = app.add_subcommand("gen", "instance generators");
    gen->require_subcommand(1);

    int rn = 8;
    double rp = 0.35;
    uint64_t rseed = 1;
    std::string rout;
    auto* grandom = gen->add_subcommand("random", "connected G(n,p)");
    grandom->add_option("--n", rn, "vertices")->required();
    grandom->add_option("--p", rp, "edge probability");
    grandom->add_option("--seed", rseed, "random seed");
    grandom->add_option("-o,--output", rout, "output .gr path (default stdout)");

    int pvars = 0, pclauses = 0;
    long long pK = 9;
    uint64_t pseed = 1;
    std::string pformula, pout;
    auto* gpm = gen->add_subcommand("pm3sat", "planar-style monotone 3-SAT gadget");
    gpm->add_option("--formula", pformula, "formula file (see README for the format)");
    gpm->add_option("--vars", pvars, "random formula: variable count");
    gpm->add_option("--clauses", pclauses, "random formula: clause count");
    gpm->add_option("--K", pK, "gadget scale (perfect square > clauses^2)");
    gpm->add_option("--seed", pseed, "random seed");
    gpm->add_option("-o,--output", pout, "output base path")->required();

    int xelems = 0;
    long long xM = -1;
    std::string xtriples, xout;
    auto* gx3c = gen->add_subcommand("x3c", "exact-cover-by-3-sets gadget");
    gx3c->add_option("--elements", xelems, "element count (multiple of 3)")->required();
    gx3c->add_option("--triples", xtriples, "file with one 'a b c' triple per line")
        ->required();
    gx3c->add_option("--M", xM, "filler pendant count (default 3(|X|/3)+1)");
    gx3c->add_option("-o,--output", xout, "output base path")->required();

    std::string sgraph, sout;
    auto* gsub = gen->add_subcommand("subdivision", "split every edge once");
    gsub->add_option("--graph", sgraph, "source graph (.gr)")->required();
    gsub->add_option("-o,--output", sout, "output base path")->required();

    std::string mgraph, mout;
    long long mell = -1;
    auto* gmc = gen->add_subcommand("maxcut-split", "max-cut to minimal-cut gadget");
    gmc->add_option("--graph", mgraph, "source graph (.gr)")->required();
    gmc->add_option("--ell", mell, "copies per source edge (default n^3)");
    gmc->add_option("-o,--output", mout, "output base path")->required();

    std::string dgraph, dout, danchors;
    bool dnice = false;
    auto* decompose = app.add_subcommand("decompose", "min-fill tree decomposition");
    decompose->add_option("--graph", dgraph, "input graph (.gr)")->required();
    decompose->add_option("-o,--output", dout, "output .td path (default stdout)");
    decompose->add_flag("--nice", dnice, "print the nice form's node list");
    decompose->add_option("--anchors", danchors, "keep u,v in every nice bag (1-based)");

    std::string bmanifest, bcsv, brepro = "bench-repro";
    auto* bench = app.add_subcommand("bench", "cross-validation benchmark");
    bench->add_option("--manifest", bmanifest, "JSON manifest")->required();
    bench->add_option("--csv", bcsv, "write the CSV here (default stdout)");
    bench->add_option("--repro", brepro, "directory for disagreement bundles");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInputError;
    }

    try {
        if (*solve) return do_solve(sa);

        if (*verify) {
            Graph g = load_graph(vg);
            SolveReport rep = parse_report_file(vr);
            std::string why;
            if (verify_report(g, rep, &why)) {
                std::cout << "valid\n";
                return kOk;
            }
            std::cout << "invalid: " << why << "\n";
            return kNo;
        }

        if (*grandom) {
            Rng rng(rseed);
            Graph g = random_connected(rn, rp, rng);
            std::string text = emit_graph(g);
            if (rout.empty()) {
                std::cout << text;
            } else {
                write_text(rout, text);
                std::cout << "wrote " << rout << " (n=" << g.n << " m=" << g.m() << ")\n";
            }
            return kOk;
        }

        if (*gpm) {
            MonotoneFormula f;
            if (!pformula.empty()) {
                if (pvars || pclauses)
                    throw std::runtime_error("--formula and --vars/--clauses are exclusive");
                f = parse_formula_text(read_text(pformula));
            } else {
                if (pvars < 1 || pclauses < 1)
                    throw std::runtime_error("need --formula or both --vars and --clauses");
                Rng rng(pseed);
                f = random_monotone_formula(pvars, pclauses, rng);
            }
            ReducedInstance inst = gen_pm3sat_cmc(f, pK);
            json extra;
            extra["formula"] = formula_to_json(f);
            extra["K"] = pK;
            write_instance(pout, inst, extra);
            return kOk;
        }

        if (*gx3c) {
            std::vector<std::array<int, 3>> triples;
            std::istringstream in(read_text(xtriples));
            std::string line;
            while (std::getline(in, line)) {
                if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
                std::istringstream ls(line);
                std::vector<std::string> toks;
                std::string tok;
                while (ls >> tok) toks.push_back(tok);
                if (toks.empty()) continue;
                if (toks.size() != 3)
                    throw std::runtime_error("triple lines hold exactly three ids: '" +
                                             line + "'");
                std::array<int, 3> tr;
                for (int i = 0; i < 3; ++i) tr[i] = std::stoi(toks[i]) - 1;
                triples.push_back(tr);
            }
            ReducedInstance inst = gen_x3c_cmc(xelems, triples, xM);
            write_instance(xout, inst);
            return kOk;
        }

        if (*gsub) {
            ReducedInstance inst = gen_subdivision_mmc(load_graph(sgraph));
            write_instance(sout, inst);
            return kOk;
        }

        if (*gmc) {
            Graph src = load_graph(mgraph);
            ReducedInstance inst = gen_maxcut_mmc_split(src, mell);
            json extra;
            extra["ell"] = inst.multiplier;
            extra["source_n"] = src.n;
            write_instance(mout, inst, extra);
            return kOk;
        }

        if (*decompose) {
            Graph g = load_graph(dgraph);
            TreeDecomposition td = heuristic_decomposition(g);
            std::string text = emit_td(td);
            if (!dout.empty()) {
                write_text(dout, text);
                std::cout << "wrote " << dout << " (width " << td.width() << ")\n";
            } else if (!dnice) {
                std::cout << text;
            }
            if (dnice) {
                int s = -1, t = -1;
                if (!danchors.empty()) std::tie(s, t) = parse_vertex_pair(danchors, g.n);
                NiceTreeDecomposition nd = to_nice(g, td, s, t);
                std::cout << "nice " << nd.nodes.size() << " nodes, width " << nd.width()
                          << "\n";
                for (size_t i = 0; i < nd.nodes.size(); ++i) {
                    const NiceNode& node = nd.nodes[i];
                    std::cout << i << " ";
                    switch (node.kind) {
                        case NiceKind::Leaf: std::cout << "leaf"; break;
                        case NiceKind::IntroduceVertex:
                            std::cout << "introduce " << node.v + 1;
                            break;
                        case NiceKind::IntroduceEdge:
                            std::cout << "edge " << node.u + 1 << "-" << node.v + 1;
                            break;
                        case NiceKind::Forget: std::cout << "forget " << node.v + 1; break;
                        case NiceKind::Join: std::cout << "join"; break;
                    }
                    std::cout << " {" << id_list(node.bag) << "}\n";
                }
            }
            return kOk;
        }

        if (*bench) {
            BenchOutput out = run_bench(read_text(bmanifest), brepro);
            if (bcsv.empty()) {
                std::cout << out.csv;
            } else {
                write_text(bcsv, out.csv);
            }
            std::cerr << out.summary;
            return kOk;
        }
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return kBudget;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}
