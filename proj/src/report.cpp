#include "cutcraft/report.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace cutcraft {

using nlohmann::json;

std::string serialize_report(const SolveReport& r) {
    json j;
    j["problem"] = problem_name(r.problem);
    j["algorithm"] = r.algorithm;
    j["n"] = r.n;
    j["m"] = r.m;
    if (r.optimum)
        j["optimum"] = *r.optimum;
    else
        j["optimum"] = "no cut exists";
    if (r.witness) {
        std::vector<int> w = *r.witness;
        std::sort(w.begin(), w.end());
        for (int& v : w) ++v;
        j["witness"] = w;
    } else {
        j["witness"] = nullptr;
    }
    if (r.anchors)
        j["anchors"] = std::vector<int>{r.anchors->first + 1, r.anchors->second + 1};
    else
        j["anchors"] = nullptr;
    if (r.seed)
        j["seed"] = *r.seed;
    else
        j["seed"] = nullptr;
    if (r.repeats)
        j["repeats"] = *r.repeats;
    else
        j["repeats"] = nullptr;
    j["elapsed_ms"] = r.elapsed_ms;
    return j.dump(2) + "\n";
}

SolveReport parse_report(const std::string& text) {
    json j = json::parse(text);
    SolveReport r;
    auto p = problem_from_name(j.at("problem").get<std::string>());
    if (!p) throw std::runtime_error("unknown problem tag in report");
    r.problem = *p;
    r.algorithm = j.at("algorithm").get<std::string>();
    r.n = j.at("n").get<int>();
    r.m = j.at("m").get<int>();
    if (j.at("optimum").is_number())
        r.optimum = j.at("optimum").get<long long>();
    else if (j.at("optimum").get<std::string>() != "no cut exists")
        throw std::runtime_error("bad optimum field");
    if (!j.at("witness").is_null()) {
        auto w = j.at("witness").get<std::vector<int>>();
        for (int& v : w) --v;
        r.witness = w;
    }
    if (j.contains("anchors") && !j.at("anchors").is_null()) {
        auto a = j.at("anchors").get<std::vector<int>>();
        if (a.size() != 2) throw std::runtime_error("bad anchors field");
        r.anchors = std::make_pair(a[0] - 1, a[1] - 1);
    }
    if (j.contains("seed") && !j.at("seed").is_null()) r.seed = j.at("seed").get<uint64_t>();
    if (j.contains("repeats") && !j.at("repeats").is_null()) r.repeats = j.at("repeats").get<int>();
    if (j.contains("elapsed_ms")) r.elapsed_ms = j.at("elapsed_ms").get<long long>();
    return r;
}

SolveReport parse_report_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_report(ss.str());
}

bool verify_report(const Graph& g, const SolveReport& r, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (r.n != g.n || r.m != g.m()) return fail("graph dimensions do not match report");
    if (!r.witness) {
        if (r.optimum) return fail("report carries an optimum but no witness");
        return true;  // consistently reports that no cut exists
    }
    if (!r.optimum) return fail("witness present but optimum says no cut exists");
    if (problem_is_anchored(r.problem) && !r.anchors)
        return fail("anchored problem tag without anchors field");
    for (int v : *r.witness)
        if (v < 0 || v >= g.n) return fail("witness vertex out of range");
    auto side = make_side(g, *r.witness);
    int s = r.anchors ? r.anchors->first : -1;
    int t = r.anchors ? r.anchors->second : -1;
    if (!feasible_cut(g, r.problem, side, s, t)) return fail("witness infeasible for problem tag");
    long long sz = cut_size(g, side);
    if (sz != *r.optimum)
        return fail("witness cut size " + std::to_string(sz) + " != reported optimum " +
                    std::to_string(*r.optimum));
    return true;
}

}  // namespace cutcraft
