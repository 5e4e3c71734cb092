// One PASS/FAIL line per acceptance criterion. Exit status is the number of failures.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <type_traits>
#include <vector>

#include <json.hpp>

#include "number_oracle.hpp"
#include "run_cli.hpp"
#include "support.hpp"

using Json = nlohmann::ordered_json;
using support::Labels;

namespace {

// Tolerances. Set comparisons are exact; these are the runtime ceilings.
constexpr double kContinuitySeconds = 1.0;
constexpr double kPropertySeconds = 60.0;
constexpr std::size_t kNonCutsPerPartition = 100;
constexpr std::int64_t kMaxIntegerPartition = 10;

struct Outcome {
    bool pass = false;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::set<std::string> as_set(const Json& arr)
{
    std::set<std::string> s;
    for (const auto& v : arr) s.insert(v.get<std::string>());
    return s;
}

std::set<std::string> as_set(const Labels& l) { return {l.begin(), l.end()}; }

Json cli_json(const std::string& args, std::string& err)
{
    const auto r = support::run_cli(args);
    if (r.code != 0) {
        err = "exit " + std::to_string(r.code) + " from '" + args + "'";
        return {};
    }
    return Json::parse(r.out);
}

// ---- 1 --------------------------------------------------------------------

Outcome table_one()
{
    // Printed rows of the continuity table, one entry per column {1},{2},{3},{1,2},{1,3},{2,3},Y.
    const std::vector<Labels> cols = {{"1"}, {"2"}, {"3"}, {"1", "2"}, {"1", "3"}, {"2", "3"}, {"1", "2", "3"}};
    const std::vector<std::pair<std::string, std::vector<Labels>>> rows = {
        {"interior", {{"1"}, {"2"}, {}, {"1", "2"}, {"1"}, {"2"}, {"1", "2", "3"}}},
        {"closure", {{"1", "3"}, {"2", "3"}, {"3"}, {"1", "2", "3"}, {"1", "3"}, {"2", "3"}, {"1", "2", "3"}}},
        {"preimage_interior", {{"a"}, {"b"}, {}, {"a", "b"}, {"a"}, {"b"}, {"a", "b", "c"}}},
        {"preimage_closure", {{"a", "c"}, {"b", "c"}, {"c"}, {"a", "b", "c"}, {"a", "c"}, {"b", "c"}, {"a", "b", "c"}}},
        {"interior_preimage_closure", {{"a"}, {"b"}, {}, {"a", "b", "c"}, {"a"}, {"b"}, {"a", "b", "c"}}},
        {"closure_preimage_interior", {{"a", "c"}, {"b", "c"}, {}, {"a", "b", "c"}, {"a", "c"}, {"b", "c"}, {"a", "b", "c"}}},
    };
    std::string err;
    const auto t0 = Clock::now();
    const auto j = cli_json("fn continuity --space-x ex51_X.json --space-y ex51_Y.json --function ex51_f.json", err);
    const double secs = seconds_since(t0);
    if (!err.empty()) return {false, err};
    std::size_t equal = 0;
    for (std::size_t c = 0; c < cols.size(); ++c) {
        const Json* row = nullptr;
        for (const auto& e : j["evidence"])
            if (as_set(e["set"]) == as_set(cols[c])) row = &e;
        if (row == nullptr) continue;
        for (const auto& [field, values] : rows)
            if (as_set((*row)[field]) == as_set(values[c])) ++equal;
    }
    const bool verdict = j["verdict"] == "totally-rough-continuous";
    char buf[160];
    std::snprintf(buf, sizeof buf, "%zu/42 cells equal, verdict %s, %.3f s", equal, j["verdict"].dump().c_str(), secs);
    return {equal == 42 && verdict && secs < kContinuitySeconds, buf};
}

// ---- 2 --------------------------------------------------------------------

Outcome minimal_neighbourhood_example()
{
    std::string err;
    const auto m = cli_json("fn minimage --space-y ex61_Y.json --function ex61_f.json", err);
    const auto r = cli_json("fn roughfn --space-x ex61_X.json --space-y ex61_Y.json --function ex61_f.json --side both", err);
    if (!err.empty()) return {false, err};
    // As printed: N_min and f_min per point, then interior and closure of each.
    const std::vector<Labels> nmin = {{"a"}, {"a", "b"}, {"a", "b", "c"}};
    const std::vector<Labels> fmin = {{"2"}, {"1"}, {"1", "2", "3"}};
    const std::vector<std::pair<Labels, Labels>> x_ic = {
        {{"a"}, {"a", "b", "c"}}, {{"a", "b"}, {"a", "b", "c"}}, {{"a", "b", "c"}, {"a", "b", "c"}}};
    const std::vector<std::pair<Labels, Labels>> y_ic = {{{"2"}, {"2", "3"}}, {{"1"}, {"1", "3"}}, {{"3"}, {"3"}}};
    std::size_t sets_ok = 0, ic_ok = 0;
    std::string misses;
    for (std::size_t i = 0; i < 3; ++i) {
        const auto& dp = r["domain"]["points"][i];
        const auto& cp = r["codomain"]["points"][i];
        const std::string pt = dp["point"];
        if (as_set(dp["neighborhood"]) == as_set(nmin[i])) ++sets_ok; else misses += " N_min(" + pt + ")";
        if (as_set(m["f_min"][i]["set"]) == as_set(fmin[i])) ++sets_ok; else misses += " f_min(" + pt + ")";
        if (as_set(dp["interior"]) == as_set(x_ic[i].first)) ++ic_ok; else misses += " int N_min(" + pt + ")";
        if (as_set(dp["closure"]) == as_set(x_ic[i].second)) ++ic_ok; else misses += " cl N_min(" + pt + ")";
        if (as_set(cp["interior"]) == as_set(y_ic[i].first)) ++ic_ok; else misses += " int f_min(" + pt + ")";
        if (as_set(cp["closure"]) == as_set(y_ic[i].second)) ++ic_ok; else misses += " cl f_min(" + pt + ")";
    }
    const bool verdict = r["verdict"] == "not topological rough function on X and on Y";
    std::string d = std::to_string(sets_ok) + "/6 neighbourhood sets, " + std::to_string(ic_ok)
                    + "/12 interiors and closures, verdict " + (verdict ? "matches" : "differs");
    if (!misses.empty()) d += "; mismatched:" + misses;
    return {sets_ok == 6 && ic_ok == 12 && verdict, d};
}

// ---- 3 --------------------------------------------------------------------

Outcome graph_example()
{
    std::string err;
    const auto j = cli_json("fn graph --granulation1 ex71_g1.json --granulation2 ex71_g2.json --graph ex71_graph.json", err);
    if (!err.empty()) return {false, err};
    // Oracle: union of the product blocks B1 × B2 that meet the graph.
    const std::vector<Labels> g1 = {{"a", "c"}, {"a", "b"}, {"d", "e"}};
    const std::vector<Labels> g2 = {{"1", "3"}, {"2", "4", "5"}, {"3", "4"}, {"6"}};
    const std::set<std::pair<std::string, std::string>> graph = {
        {"a", "1"}, {"a", "6"}, {"b", "6"}, {"c", "5"}, {"c", "6"}, {"e", "6"}};
    std::set<std::string> upper;
    for (const auto& b1 : g1) {
        for (const auto& b2 : g2) {
            bool meets = false;
            for (const auto& x : b1)
                for (const auto& y : b2) meets = meets || graph.count({x, y}) > 0;
            if (!meets) continue;
            for (const auto& x : b1)
                for (const auto& y : b2) upper.insert("(" + x + "," + y + ")");
        }
    }
    std::set<std::string> printed = {"(a,1)", "(a,3)", "(c,1)", "(c,3)", "(a,6)", "(b,6)", "(c,6)", "(a,2)",
                                     "(a,4)", "(a,5)", "(c,2)", "(c,4)", "(c,5)", "(d,6)", "(e,6)"};
    auto expected = printed;
    expected.insert({"(b,1)", "(b,3)"});
    const bool lower = as_set(j["lower"]) == std::set<std::string>{"(a,6)", "(b,6)", "(c,6)"};
    const bool up = as_set(j["upper"]) == upper && upper == expected;
    bool diff = false;
    for (const auto& d : j["discrepancies"])
        if (d.value("field", "") == "/upper" && as_set(d["only_computed"]) == std::set<std::string>{"(b,1)", "(b,3)"})
            diff = true;
    const bool verdict = j["verdict"] == "rough";
    return {lower && up && diff && verdict, std::string("lower ") + (lower ? "ok" : "differs") + ", upper "
                                                + (up ? "ok" : "differs") + " (" + std::to_string(upper.size())
                                                + " pairs), discrepancy entry " + (diff ? "present" : "missing")
                                                + ", verdict " + j["verdict"].dump()};
}

// ---- 4 --------------------------------------------------------------------

Outcome reducts_example()
{
    std::string err;
    const auto j = cli_json("infosys reducts --cnf sec82.json", err);
    if (!err.empty()) return {false, err};
    const bool printed = j["reducts"] == Json::parse(R"([["b","c"],["b","d"]])") && j["core"] == Json::parse(R"(["b"])");
    // Clauses over a=1, b=2, c=4, d=8.
    const auto brute = support::brute_force_reducts({0b0010, 0b0011, 0b1100, 0b1010, 0b0111, 0b1111}, 4);
    const bool oracle = brute == std::vector<support::Bits>{0b0110, 0b1010};
    return {printed && oracle, std::string("CLI ") + (printed ? "matches" : "differs") + ", brute force "
                                   + (oracle ? "agrees" : "disagrees")};
}

// ---- 5 --------------------------------------------------------------------

Outcome patients_pipeline()
{
    std::string err;
    const auto j = cli_json("patients run --table table2.csv --thresholds thresholds.json --families patients_printed.json"
                            " --mode base-union",
                            err);
    if (!err.empty()) return {false, err};
    using Fam = std::set<std::set<std::string>>;
    auto fam = [](const Json& arr) {
        Fam f;
        for (const auto& s : arr) f.insert(as_set(s));
        return f;
    };
    const auto& fx = j["fixture"];
    const bool tau_d = fam(fx["decision_topology"]) == Fam{{}, {"X1", "X3", "X4"}, {"X2", "X5"}, {"X1", "X2", "X3", "X4", "X5"}};
    const Fam tau_p1 = {{"X1", "X2", "X3", "X4", "X5"}, {}, {"X3"}, {"X5"}, {"X1", "X4", "X5"}, {"X3", "X5"},
                        {"X2", "X3", "X4"}, {"X1", "X3", "X4", "X5"}, {"X2", "X3", "X4", "X5"}};
    const Fam tau_p2 = {{"X1", "X2", "X3", "X4", "X5"}, {}, {"X4"}, {"X1", "X4"}, {"X1", "X2", "X3", "X5"}};
    bool p1 = false, p2 = false, meets = true;
    for (const auto& s : fx["subsets"]) {
        const auto g = s["groups"];
        if (g == Json::parse(R"(["P1"])")) p1 = fam(s["topology"]) == tau_p1 && tau_p1.size() == 9;
        if (g == Json::parse(R"(["P2"])")) p2 = fam(s["topology"]) == tau_p2 && tau_p2.size() == 5;
        if (g == Json::parse(R"(["P1","P2"])") || g == Json::parse(R"(["P1","P3"])")) meets = meets && s["classes"].empty();
        if (g == Json::parse(R"(["P2","P3"])")) meets = meets && fam(s["classes"]) == Fam{{"X1", "X2", "X3", "X5"}};
    }
    const bool verdict = fx["reducts"].empty();
    std::set<std::string> subjects;
    for (const auto& d : j["discrepancies"]) subjects.insert(d["subject"]);
    const bool diff = subjects.count("R_P1 classes") && subjects.count("R_P2 classes") && subjects.count("tau_P3 mode");
    std::string d = std::string("tau_D ") + (tau_d ? "ok" : "differs") + ", tau_P1 " + (p1 ? "ok" : "differs") + ", tau_P2 "
                    + (p2 ? "ok" : "differs") + ", intersections " + (meets ? "ok" : "differ") + ", fixture verdict "
                    + (verdict ? "no topological reducts" : "has reducts") + ", literal diff "
                    + (diff ? "names R_P1, R_P2, tau_P3" : "incomplete");
    return {tau_d && p1 && p2 && meets && verdict && diff, d};
}

// ---- 6 --------------------------------------------------------------------

Outcome product_example()
{
    std::string err;
    const auto prod = cli_json("topo product --space1 ex72_T1.json --space2 ex72_T2.json --mode rectangles", err);
    const auto cont = cli_json("fn product-cont --space1 ex72_T1.json --space2 ex72_T2.json --map ex72_f.json", err);
    if (!err.empty()) return {false, err};
    // The sixteen printed rectangles; the second factor open {b,c,d} is read on U1 = {a,b,c} as {b,c}.
    const std::vector<Labels> t1 = {{"a", "b", "c"}, {}, {"a"}, {"b", "c"}};
    const std::vector<Labels> t2 = {{"1", "2", "3", "4"}, {}, {"3"}, {"1", "2", "4"}};
    std::set<std::set<std::string>> printed;
    std::size_t entries = 0;
    for (const auto& a : t1) {
        for (const auto& b : t2) {
            std::set<std::string> r;
            for (const auto& x : a)
                for (const auto& y : b) r.insert("(" + x + "," + y + ")");
            printed.insert(r);
            ++entries;
        }
    }
    std::set<std::set<std::string>> computed;
    for (const auto& s : prod["family"]) computed.insert(as_set(s));
    const bool family = entries == 16 && printed == computed;
    const auto full = as_set(prod["universe"]);
    bool all = cont["holds"] == true && cont["points"].size() == 12;
    for (const auto& p : cont["points"]) {
        all = all && p["holds"] == true;
        for (const auto& pre : p["preimages"]) all = all && as_set(pre) == full;
    }
    return {family && all, std::to_string(entries) + " printed entries collapse to " + std::to_string(printed.size())
                               + " sets, computed " + std::to_string(computed.size()) + "; continuity "
                               + (all ? "holds at all 12 points with full preimages" : "fails")};
}

// ---- 7 --------------------------------------------------------------------

Outcome rough_numbers()
{
    using namespace roughtopo;
    static_assert(std::is_same_v<Rational, boost::rational<std::int64_t>>);
    std::size_t checked = 0;
    for (std::int64_t n = 1; n <= kMaxIntegerPartition; ++n) {
        const auto p = build_partition_integer(n);
        for (const auto& c : p.cuts()) {
            const auto v = classify_number(p, c);
            const auto o = support::scan_oracle(p, c);
            if (v.verdict != NumberKind::exact || v.lower != o.lower || v.upper != o.upper)
                return {false, "cut " + to_string(c) + " of n=" + std::to_string(n)};
            ++checked;
        }
        std::size_t rough = 0;
        while (rough < kNonCutsPerPartition) {
            const auto x = support::random_rational(p.min(), p.max());
            if (p.is_cut(x)) continue;
            const auto v = classify_number(p, x);
            const auto o = support::scan_oracle(p, x);
            if (v.verdict != NumberKind::rough || v.lower != o.lower || v.upper != o.upper)
                return {false, "non-cut " + to_string(x) + " of n=" + std::to_string(n)};
            ++rough;
            ++checked;
        }
    }
    return {true, std::to_string(checked) + " numbers agree with the block scan"};
}

// ---- 8 --------------------------------------------------------------------

Outcome property_suites()
{
    const std::vector<std::pair<std::string, std::vector<std::string>>> suites = {
        {ROUGHTOPO_TEST_FINITE_TOPOLOGY,
         {"TopologyProperty.InteriorClosureDualityExhaustive", "TopologyProperty.SignatureClassesPartitionPowerset"}},
        {ROUGHTOPO_TEST_NEAR_OPEN,
         {"NearOpenProperty.InclusionChains", "NearOpenProperty.ApproximationBoundsAndFixpoints",
          "NearOpenProperty.SemiPairConstructionOnQualifyingSpaces"}},
        {ROUGHTOPO_TEST_APPROXIMATION_SPACE,
         {"ApproximationSpaceProperty.ProductPartitionEquality", "ApproximationSpaceProperty.SelectiveGraphsAreExact"}},
        {ROUGHTOPO_TEST_ROUGH_NUMBERS, {"RoughNumbersProperty.IntegerPartitionsAgainstScan"}},
        {ROUGHTOPO_TEST_ROUGH_FUNCTIONS,
         {"RoughFunctionsProperty.FourWayAgreementExhaustive", "RoughFunctionsProperty.IntersectionTopologyPreservesContinuity",
          "RoughFunctionsProperty.PreimageTopologyIsCoarsest"}},
        {ROUGHTOPO_TEST_INFORMATION_SYSTEM, {"InformationSystemProperty.ReductsMatchBruteForce"}},
    };
    const auto t0 = Clock::now();
    std::size_t passed = 0, required = 0;
    std::string missing;
    for (const auto& [binary, names] : suites) {
        const auto r = support::run_command("'" + binary + "' --gtest_filter='*Property.*'");
        for (const auto& name : names) {
            ++required;
            if (r.code == 0 && r.out.find("[       OK ] " + name + " ") != std::string::npos) ++passed;
            else missing += " " + name;
        }
        if (r.code != 0) missing += " (suite " + binary + " exited " + std::to_string(r.code) + ")";
    }
    const double secs = seconds_since(t0);
    char buf[96];
    std::snprintf(buf, sizeof buf, "%zu/%zu required suites green, %.1f s", passed, required, secs);
    std::string d = buf;
    if (!missing.empty()) d += "; failing:" + missing;
    return {passed == required && secs < kPropertySeconds, d};
}

}  // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"continuity table reproduction", table_one},
        {"minimal-neighbourhood rough function example", minimal_neighbourhood_example},
        {"graph approximation example", graph_example},
        {"discernibility reducts and core", reducts_example},
        {"patients fixture and literal paths", patients_pipeline},
        {"product rectangles and product continuity", product_example},
        {"rough numbers on integer partitions", rough_numbers},
        {"property suites", property_suites},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += o.pass ? 0 : 1;
        std::printf("criterion %zu %s: %s (%s)\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                    o.detail.c_str());
    }
    return failures;
}
