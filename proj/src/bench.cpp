#include "cutcraft/bench.hpp"

#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

#include "cutcraft/cliquewidth.hpp"
#include "cutcraft/driver.hpp"
#include "cutcraft/oracle.hpp"
#include "cutcraft/reductions.hpp"
#include "cutcraft/util.hpp"

namespace cutcraft {

using nlohmann::json;

namespace {

struct BenchInstance {
    std::string id;
    std::string params;
    Graph g;
    Problem problem = Problem::cmc;
    // Reference optimum, when the instance is small enough to brute-force.
    // `checked` distinguishes "no cut exists" (checked, empty value) from
    // "too big to check".
    bool checked = false;
    std::optional<long long> reference;
};

// All connected graphs on n labeled vertices in edge-mask order, stopping at
// `cap` accepted graphs.
std::vector<Graph> connected_graphs_capped(int n, long long cap) {
    std::vector<std::pair<int, int>> slots;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) slots.push_back({u, v});
    if ((int)slots.size() > 28) throw std::invalid_argument("exhaustive: n too large");
    std::vector<Graph> out;
    for (uint64_t mask = 0; mask < (1ull << slots.size()); ++mask) {
        if ((long long)out.size() >= cap) break;
        Graph g(n);
        for (size_t i = 0; i < slots.size(); ++i)
            if (mask >> i & 1) g.add_edge(slots[i].first, slots[i].second);
        g.finalize();
        if (is_connected(g)) out.push_back(std::move(g));
    }
    return out;
}

Problem parse_problem_field(const json& j, const char* ctx) {
    std::string s = j.get<std::string>();
    auto p = problem_from_name(s);
    if (!p || problem_is_anchored(*p))
        throw std::runtime_error(std::string(ctx) + ": bad problem '" + s +
                                 "' (bench runs cmc or mmc)");
    return *p;
}

std::string fmt_params(std::initializer_list<std::pair<const char*, std::string>> kv) {
    std::string out;
    for (auto& [k, v] : kv) {
        if (!out.empty()) out += " ";
        out += k;
        out += "=";
        out += v;
    }
    return out;
}

void append_instances(const json& spec, Problem default_problem,
                      std::vector<BenchInstance>& out) {
    std::string kind = spec.at("kind").get<std::string>();
    Problem problem = spec.contains("problem")
                          ? parse_problem_field(spec.at("problem"), "instance")
                          : default_problem;
    auto label = [&](const std::string& base, int idx, int total) {
        return total <= 1 ? base : base + "#" + std::to_string(idx);
    };

    if (kind == "file") {
        std::string path = spec.at("path").get<std::string>();
        auto pg = parse_graph_file(path);
        BenchInstance bi;
        bi.id = spec.contains("name") ? spec.at("name").get<std::string>()
                                      : std::filesystem::path(path).stem().string();
        bi.params = fmt_params({{"path", path}});
        bi.g = pg.graph;
        bi.problem = problem;
        out.push_back(std::move(bi));
    } else if (kind == "random") {
        int n = spec.at("n").get<int>();
        double p = spec.value("p", 0.35);
        int count = spec.value("count", 1);
        uint64_t seed = spec.value("seed", (uint64_t)1);
        Rng rng(seed);
        for (int i = 0; i < count; ++i) {
            BenchInstance bi;
            bi.id = label("rnd-n" + std::to_string(n), i, count);
            bi.params = fmt_params({{"n", std::to_string(n)},
                                    {"p", std::to_string(p)},
                                    {"seed", std::to_string(seed)}});
            bi.g = random_connected(n, p, rng);
            bi.problem = problem;
            out.push_back(std::move(bi));
        }
    } else if (kind == "exhaustive") {
        int n = spec.at("n").get<int>();
        long long cap = spec.value("cap", (long long)5000);
        auto gs = connected_graphs_capped(n, cap);
        for (size_t i = 0; i < gs.size(); ++i) {
            BenchInstance bi;
            bi.id = label("exh-n" + std::to_string(n), (int)i, (int)gs.size());
            bi.params = fmt_params({{"n", std::to_string(n)}});
            bi.g = std::move(gs[i]);
            bi.problem = problem;
            out.push_back(std::move(bi));
        }
    } else if (kind == "clique" || kind == "path" || kind == "star") {
        int n = spec.at("n").get<int>();
        Graph g(kind == "star" ? n + 1 : n);
        if (kind == "clique") {
            for (int u = 0; u < n; ++u)
                for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
        } else if (kind == "path") {
            for (int u = 0; u + 1 < n; ++u) g.add_edge(u, u + 1);
        } else {
            for (int leaf = 1; leaf <= n; ++leaf) g.add_edge(0, leaf);
        }
        g.finalize();
        BenchInstance bi;
        bi.id = kind + "-n" + std::to_string(n);
        bi.params = fmt_params({{"n", std::to_string(n)}});
        bi.g = std::move(g);
        bi.problem = problem;
        out.push_back(std::move(bi));
    } else if (kind == "cograph") {
        int n = spec.at("n").get<int>();
        int count = spec.value("count", 1);
        uint64_t seed = spec.value("seed", (uint64_t)1);
        Rng rng(seed);
        int rerolls = 0;
        for (int i = 0; i < count; ++i) {
            auto [expr, g] = cw_random_cograph(n, rng);
            (void)expr;
            if (!is_connected(g)) {  // union at the top can disconnect; redraw
                if (++rerolls > 1000)
                    throw std::runtime_error("cograph generator keeps drawing disconnected graphs");
                --i;
                continue;
            }
            BenchInstance bi;
            bi.id = label("cograph-n" + std::to_string(n), i, count);
            bi.params = fmt_params({{"n", std::to_string(n)},
                                    {"seed", std::to_string(seed)}});
            bi.g = std::move(g);
            bi.problem = problem;
            out.push_back(std::move(bi));
        }
    } else if (kind == "pm3sat") {
        int vars = spec.at("vars").get<int>();
        int clauses = spec.at("clauses").get<int>();
        long long K = spec.value("K", (long long)9);
        int count = spec.value("count", 1);
        uint64_t seed = spec.value("seed", (uint64_t)1);
        Rng rng(seed);
        for (int i = 0; i < count; ++i) {
            MonotoneFormula f = random_monotone_formula(vars, clauses, rng);
            ReducedInstance ri = gen_pm3sat_cmc(f, K);
            BenchInstance bi;
            bi.id = label("pm3sat-v" + std::to_string(vars), i, count);
            bi.params = fmt_params({{"vars", std::to_string(vars)},
                                    {"clauses", std::to_string(clauses)},
                                    {"K", std::to_string(K)},
                                    {"threshold", std::to_string(ri.threshold)},
                                    {"seed", std::to_string(seed)}});
            bi.g = std::move(ri.g);
            bi.problem = Problem::cmc;
            out.push_back(std::move(bi));
        }
    } else if (kind == "subdivision") {
        int n = spec.at("n").get<int>();
        double p = spec.value("p", 0.5);
        int count = spec.value("count", 1);
        uint64_t seed = spec.value("seed", (uint64_t)1);
        Rng rng(seed);
        for (int i = 0; i < count; ++i) {
            Graph src = random_connected(n, p, rng);
            ReducedInstance ri = gen_subdivision_mmc(src);
            BenchInstance bi;
            bi.id = label("subdiv-n" + std::to_string(n), i, count);
            bi.params = fmt_params({{"n", std::to_string(n)},
                                    {"p", std::to_string(p)},
                                    {"seed", std::to_string(seed)}});
            bi.g = std::move(ri.g);
            bi.problem = Problem::mmc;
            out.push_back(std::move(bi));
        }
    } else if (kind == "maxcut_split") {
        int n = spec.at("n").get<int>();
        double p = spec.value("p", 0.5);
        long long ell = spec.value("ell", (long long)4);
        int count = spec.value("count", 1);
        uint64_t seed = spec.value("seed", (uint64_t)1);
        Rng rng(seed);
        for (int i = 0; i < count; ++i) {
            Graph src = random_connected(n, p, rng);
            ReducedInstance ri = gen_maxcut_mmc_split(src, ell);
            BenchInstance bi;
            bi.id = label("mcsplit-n" + std::to_string(n), i, count);
            bi.params = fmt_params({{"n", std::to_string(n)},
                                    {"p", std::to_string(p)},
                                    {"ell", std::to_string(ell)},
                                    {"seed", std::to_string(seed)}});
            bi.g = std::move(ri.g);
            bi.problem = Problem::mmc;
            out.push_back(std::move(bi));
        }
    } else {
        throw std::runtime_error("unknown instance kind '" + kind + "'");
    }
}

std::string sanitize(const std::string& s) {
    std::string out;
    for (char c : s)
        out += (std::isalnum((unsigned char)c) || c == '-' || c == '_') ? c : '_';
    return out;
}

void write_repro(const std::string& dir, const BenchInstance& inst,
                 const SolveReport* report, const std::string& note) {
    std::filesystem::create_directories(dir);
    std::string base = dir + "/" + sanitize(inst.id);
    std::ofstream(base + ".gr") << emit_graph(inst.g);
    if (report) std::ofstream(base + ".report.json") << serialize_report(*report);
    std::ofstream(base + ".note.txt") << note << "\n";
}

struct CellKey {
    size_t inst;
    size_t algo;
    size_t seed;
};

}  // namespace

std::string bench_csv(const std::vector<BenchRecord>& records) {
    std::ostringstream csv;
    csv << "instance,problem,algorithm,seed,n,m,optimum,elapsed_ms,table_cells,agree,status\n";
    for (const auto& r : records) {
        csv << r.instance << ',' << problem_name(r.problem) << ',' << r.algorithm << ','
            << r.seed << ',' << r.n << ',' << r.m << ',';
        if (r.optimum) csv << *r.optimum;
        csv << ',' << r.elapsed_ms << ',' << r.table_cells << ',';
        if (r.agree) csv << (*r.agree ? "yes" : "no");
        csv << ',' << r.status << '\n';
    }
    return csv.str();
}

BenchOutput run_bench(const std::string& manifest_json, const std::string& repro_dir) {
    json man = json::parse(manifest_json);

    Problem default_problem = man.contains("problem")
                                  ? parse_problem_field(man.at("problem"), "manifest")
                                  : Problem::cmc;
    int64_t budget_ms = man.value("budget_ms", (int64_t)0);
    bool timings = man.value("timings", false);
    int repeats = man.value("repeats", 0);
    int oracle_max_n = man.value("oracle_max_n", 18);
    std::string reports_dir = man.value("reports_dir", std::string());

    std::vector<uint64_t> seeds;
    if (man.contains("seeds"))
        for (const auto& s : man.at("seeds")) seeds.push_back(s.get<uint64_t>());
    if (seeds.empty()) seeds.push_back(1);

    std::vector<std::string> algorithms;
    if (man.contains("algorithms"))
        for (const auto& a : man.at("algorithms"))
            algorithms.push_back(a.get<std::string>());
    if (algorithms.empty()) algorithms.push_back("auto");
    static const std::set<std::string> known = {"auto",     "oracle",    "twdp",
                                                "rank",     "cutcount",  "twincover"};
    for (const auto& a : algorithms)
        if (!known.count(a))
            throw std::runtime_error("unknown bench algorithm '" + a + "'");

    std::vector<BenchInstance> instances;
    if (!man.contains("instances") || man.at("instances").empty())
        throw std::runtime_error("manifest lists no instances");
    for (const auto& spec : man.at("instances"))
        append_instances(spec, default_problem, instances);

    // Reference pass: brute-force every instance that fits under the cap.
    // Sequential and cheap relative to the cells themselves.
    for (auto& inst : instances) {
        if (inst.g.n > oracle_max_n) continue;
        SolveReport ref = oracle(inst.g, inst.problem);
        inst.checked = true;
        inst.reference = ref.optimum;
    }

    std::vector<CellKey> cells;
    for (size_t i = 0; i < instances.size(); ++i)
        for (size_t a = 0; a < algorithms.size(); ++a)
            for (size_t s = 0; s < seeds.size(); ++s) cells.push_back({i, a, s});

    std::vector<BenchRecord> records(cells.size());
    std::vector<std::string> report_texts(cells.size());
    std::mutex fail_mu;
    std::string failure;  // first failure wins; bundle already on disk

    auto run_cell = [&](size_t ci) {
        const CellKey& key = cells[ci];
        const BenchInstance& inst = instances[key.inst];
        const std::string& algo = algorithms[key.algo];
        uint64_t seed = seeds[key.seed];

        BenchRecord rec;
        rec.instance = inst.id;
        rec.params = inst.params;
        rec.problem = inst.problem;
        rec.algorithm = algo;
        rec.seed = seed;
        rec.n = inst.g.n;
        rec.m = inst.g.m();

        Budget budget;
        if (budget_ms > 0) budget = Budget::from_ms(budget_ms);
        SolveStats stats;
        SolveReport rep;
        auto t0 = std::chrono::steady_clock::now();
        try {
            rep = solve_auto(inst.g, inst.problem, algo, -1, -1, seed, repeats,
                             budget_ms > 0 ? &budget : nullptr, &stats);
        } catch (const BudgetExceeded&) {
            rec.status = "timeout";
            rec.table_cells = stats.table_cells;
            records[ci] = std::move(rec);
            return;
        } catch (const std::logic_error&) {
            // Solver can't take this instance shape (anchored-only route,
            // bad parameter combination).
            rec.status = "skipped";
            records[ci] = std::move(rec);
            return;
        } catch (const std::runtime_error&) {
            // Size caps and structural refusals (brute force over its limit,
            // cover search over budget) land here; the cell is skipped, and
            // the summary keeps the count visible.
            rec.status = "skipped";
            records[ci] = std::move(rec);
            return;
        }
        auto t1 = std::chrono::steady_clock::now();
        rec.elapsed_ms =
            timings ? std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count()
                    : 0;
        rec.table_cells = stats.table_cells;
        rec.optimum = rep.optimum;

        std::string why;
        bool witness_ok = !rep.witness || verify_report(inst.g, rep, &why);
        bool contradiction = false;
        std::string note;
        if (!witness_ok) {
            contradiction = true;
            note = "witness check failed: " + why;
        } else if (inst.checked) {
            bool exact = rep.algorithm != "cutcount";
            if (rep.optimum && !inst.reference) {
                contradiction = true;
                note = "solver claims a cut where none exists";
            } else if (rep.optimum && inst.reference && *rep.optimum > *inst.reference) {
                contradiction = true;
                note = "solver value exceeds the true optimum";
            } else if (exact) {
                rec.agree = (rep.optimum == inst.reference);
                if (!*rec.agree) {
                    contradiction = true;
                    note = "exact solver disagrees with brute force";
                }
            } else {
                // Sampling solver: shortfall is expected behavior, recorded
                // via agree=false without aborting the run.
                rec.agree = (rep.optimum == inst.reference);
            }
        }
        if (contradiction) {
            std::ostringstream full;
            full << note << "\ninstance: " << inst.id << " (" << inst.params << ")"
                 << "\nproblem: " << problem_name(inst.problem)
                 << "\nalgorithm: " << algo << " (resolved: " << rep.algorithm << ")"
                 << "\nseed: " << seed << "\nsolver optimum: "
                 << (rep.optimum ? std::to_string(*rep.optimum) : "none")
                 << "\nreference optimum: "
                 << (inst.reference ? std::to_string(*inst.reference) : "none");
            write_repro(repro_dir, inst, &rep, full.str());
            std::lock_guard<std::mutex> lk(fail_mu);
            if (failure.empty())
                failure = note + " (instance " + inst.id + ", algorithm " + algo +
                          "; bundle in " + repro_dir + ")";
            records[ci] = std::move(rec);
            return;
        }
        if (!reports_dir.empty()) {
            SolveReport stable = rep;
            stable.elapsed_ms = 0;
            report_texts[ci] = serialize_report(stable);
        }
        records[ci] = std::move(rec);
    };

    int workers = man.value("workers", 0);
    if (workers <= 0) workers = env_workers();
    if (workers <= 0) workers = 1;
    workers = std::min<int>(workers, (int)cells.size());
    if (workers <= 1) {
        for (size_t ci = 0; ci < cells.size(); ++ci) run_cell(ci);
    } else {
        std::atomic<size_t> next{0};
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (size_t ci = next.fetch_add(1); ci < cells.size();
                     ci = next.fetch_add(1))
                    run_cell(ci);
            });
        for (auto& th : pool) th.join();
    }
    if (!failure.empty()) throw std::runtime_error("bench: " + failure);

    if (!reports_dir.empty()) {
        std::filesystem::create_directories(reports_dir);
        for (size_t ci = 0; ci < cells.size(); ++ci) {
            if (report_texts[ci].empty()) continue;
            const CellKey& key = cells[ci];
            std::string name = sanitize(instances[key.inst].id) + "__" +
                               algorithms[key.algo] + "__s" +
                               std::to_string(seeds[key.seed]) + ".json";
            std::ofstream(reports_dir + "/" + name) << report_texts[ci];
        }
    }

    BenchOutput out;
    out.records = std::move(records);
    out.csv = bench_csv(out.records);

    std::map<std::string, std::array<long long, 3>> per_algo;  // ok/timeout/skipped
    long long checked = 0, undershoot = 0;
    for (const auto& r : out.records) {
        auto& row = per_algo[r.algorithm];
        if (r.status == "ok") ++row[0];
        else if (r.status == "timeout") ++row[1];
        else ++row[2];
        if (r.agree) {
            ++checked;
            if (!*r.agree) ++undershoot;
        }
    }
    std::ostringstream sum;
    sum << "cells: " << out.records.size() << "\n";
    for (const auto& [name, row] : per_algo)
        sum << name << ": ok=" << row[0] << " timeout=" << row[1]
            << " skipped=" << row[2] << "\n";
    sum << "reference checks: " << checked << " (sampling shortfalls: " << undershoot
        << ")\n";
    out.summary = sum.str();
    return out;
}

}  // namespace cutcraft
