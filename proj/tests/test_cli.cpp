#include <gtest/gtest.h>

#include <json.hpp>

#include "run_cli.hpp"

using support::run_cli;
using Json = nlohmann::ordered_json;

namespace {

Json parse(const support::Run& r)
{
    EXPECT_EQ(r.code, 0) << r.out;
    return Json::parse(r.out);
}

}  // namespace

TEST(Cli, InteriorExample)
{
    const auto r = run_cli("topo interior --space ex51_Y.json --set 1,3");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "{\"result\":[\"1\"]}\n");
}

TEST(Cli, EmptySetApproximation)
{
    const auto j = parse(run_cli("near approx --kind semi --space ex62_X.json --set \"\""));
    EXPECT_EQ(j["lower"], Json::array());
    EXPECT_EQ(j["upper"], Json::array());
    EXPECT_EQ(j["kind"], "semi");
    EXPECT_TRUE(j.contains("upper_convention"));
}

TEST(Cli, ReductsExample)
{
    const auto j = parse(run_cli("infosys reducts --cnf sec82.json"));
    EXPECT_EQ(j["reducts"], Json::parse(R"([["b","c"],["b","d"]])"));
    EXPECT_EQ(j["core"], Json::parse(R"(["b"])"));
}

TEST(Cli, ExitCodes)
{
    EXPECT_EQ(run_cli("topo interior --space missing.json --set 1").code, 2);
    EXPECT_EQ(run_cli("topo interior --space ex51_Y.json --set 9").code, 2);
    EXPECT_EQ(run_cli("topo interior --space ex51_Y.json --set 1 --no-such-flag").code, 2);
    EXPECT_EQ(run_cli("topo bogus").code, 2);
    EXPECT_EQ(run_cli("fn roughfn --space-x ex61_X.json --space-y ex61_Y.json --function ex61_f.json").code, 0);
    EXPECT_EQ(run_cli("fn roughfn --space-x ex61_X.json --space-y ex61_Y.json --function ex61_f.json --fail-on-false").code,
              1);
    EXPECT_EQ(run_cli("topo check --space ex51_X.json --fail-on-false").code, 0);
}

TEST(Cli, MalformedFileReportsField)
{
    const auto r = support::run_command(std::string("cd '") + ROUGHTOPO_DATA_DIR + "' && printf '{\"universe\": [\"a\"], \"opens\": [[\"z\"]]}' > /tmp/roughtopo_bad.json && { '"
                                        + ROUGHTOPO_CLI + "' topo check --space /tmp/roughtopo_bad.json 2>&1; }");
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.out.find("opens"), std::string::npos) << r.out;
}

TEST(Cli, OutputIsByteIdentical)
{
    for (const std::string args : {"fn continuity --space-x ex51_X.json --space-y ex51_Y.json --function ex51_f.json",
                                   "patients run --table table2.csv --thresholds thresholds.json --families patients_printed.json",
                                   "fn graph --granulation1 ex71_g1.json --granulation2 ex71_g2.json --graph ex71_graph.json"}) {
        const auto a = run_cli(args);
        const auto b = run_cli(args);
        EXPECT_EQ(a.code, 0);
        EXPECT_EQ(a.out, b.out);
    }
}

TEST(Cli, FlagsAreEchoed)
{
    const auto p = parse(run_cli("patients run --table table2.csv --thresholds thresholds.json --families patients_printed.json"
                                 " --quantifier existential --mode subbase"));
    EXPECT_EQ(p["mode"], "subbase");
    EXPECT_EQ(p["quantifier"], "existential");
    const auto t = parse(run_cli("topo product --space1 ex72_T1.json --space2 ex72_T2.json"));
    EXPECT_EQ(t["mode"], "rectangles");
    const auto n = parse(run_cli("near regions --space ex62_X.json --kind pre --set a --upper-convention meets"));
    EXPECT_EQ(n["upper_convention"], "meets");
}

TEST(Cli, DiscrepanciesArePresent)
{
    const auto g = parse(run_cli("fn graph --granulation1 ex71_g1.json --granulation2 ex71_g2.json --graph ex71_graph.json"));
    ASSERT_FALSE(g["discrepancies"].empty());
    EXPECT_EQ(g["discrepancies"][0]["only_computed"], Json::parse(R"j(["(b,1)","(b,3)"])j"));

    const auto p = parse(run_cli("patients run --table table2.csv --thresholds thresholds.json --families patients_printed.json"));
    std::vector<std::string> subjects;
    for (const auto& d : p["discrepancies"]) subjects.push_back(d["subject"]);
    for (const std::string s : {"R_P1 classes", "R_P2 classes", "tau_P3 mode"})
        EXPECT_NE(std::find(subjects.begin(), subjects.end(), s), subjects.end()) << s;
}

TEST(Cli, TableFormat)
{
    const auto r = run_cli("fn continuity --space-x ex51_X.json --space-y ex51_Y.json --function ex51_f.json --format table");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("totally-rough-continuous"), std::string::npos);
    EXPECT_NE(r.out.find("{a,c}"), std::string::npos);
}
