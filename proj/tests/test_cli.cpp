#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <string>

#include <nlohmann/json.hpp>

namespace {

struct CliResult {
    int status = 0;
    std::string out;
};

CliResult run(const std::string& args) {
    std::string cmd = std::string(STATECYCLE_CLI) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    CliResult r;
    std::array<char, 4096> buf{};
    while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), n);
    int raw = pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

}  // namespace

TEST(Cli, CertifySolomon) {
    CliResult r = run("certify --builtin solomon_mirror --smoothing all1 --marks auto");
    ASSERT_EQ(r.status, 0);
    auto j = nlohmann::json::parse(r.out);
    ASSERT_EQ(j["certificates"].size(), 2U);
    EXPECT_EQ(j["certificates"][0]["marks"], "0000");
    EXPECT_EQ(j["certificates"][1]["theorem"], "EVEN_ALL1");
}

TEST(Cli, Family) {
    CliResult r = run("family --base 8_21_plus_adequate --block 10_152_negative --copies 1");
    ASSERT_EQ(r.status, 0);
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["alpha_bigradings"][0]["t"], -16);
    EXPECT_EQ(j["alpha_bigradings"][0]["q"], -37);
    EXPECT_EQ(j["alpha_bigradings"][1]["t"], -6);
    EXPECT_EQ(j["alpha_bigradings"][1]["q"], -19);
}

TEST(Cli, HomologyUnknot) {
    CliResult r = run("homology --builtin unknot0");
    ASSERT_EQ(r.status, 0);
    auto j = nlohmann::json::parse(r.out);
    ASSERT_EQ(j["ranks"].size(), 2U);
    for (const auto& e : j["ranks"]) {
        EXPECT_EQ(e["t"], 0);
        EXPECT_EQ(e["rank"], 1);
    }
}

TEST(Cli, HomologyTable) {
    CliResult r = run("homology --builtin trefoil_negative --format table");
    ASSERT_EQ(r.status, 0);
    EXPECT_NE(r.out.find("q\\t"), std::string::npos);
}

TEST(Cli, OtherSubcommands) {
    EXPECT_EQ(run("parse --pd 'X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]'").status, 0);
    EXPECT_EQ(run("resolve --builtin figure8 --smoothing seifert").status, 0);
    EXPECT_EQ(run("flags --builtin figure8").status, 0);
    EXPECT_EQ(run("certify --builtin 8_21_plus_adequate --smoothing all0 --marks 11111").status, 0);
    EXPECT_EQ(run("enumerate --builtin 6_3 --budget 16").status, 0);
    auto j = nlohmann::json::parse(run("jones --builtin unknot0").out);
    EXPECT_EQ(j["text"], "q + q^-1");
}

TEST(Cli, ComputationErrors) {
    CliResult r = run("homology --builtin K1");
    EXPECT_EQ(r.status, 1);
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["schema"], "statecycle.error/1");
    EXPECT_EQ(j["error"], "TooLarge");
    EXPECT_EQ(nlohmann::json::parse(run("parse --builtin nope").out)["error"], "UnknownName");
    EXPECT_EQ(nlohmann::json::parse(run("certify --builtin 8_21_plus_adequate --smoothing all0 --marks 00000").out)["error"], "NotACycle");
    EXPECT_EQ(run("resolve --builtin figure8 --smoothing 010").status, 1);
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run("").status, 2);
    EXPECT_EQ(run("parse").status, 2);
    EXPECT_EQ(run("parse --builtin figure8 --pd 'X[1,1,2,2]'").status, 2);
    EXPECT_EQ(run("enumerate --builtin figure8 --budget 0").status, 2);
    EXPECT_EQ(run("homology --builtin figure8 --format xml").status, 2);
    EXPECT_EQ(run("nosuch").status, 2);
}

TEST(Cli, Deterministic) {
    std::string a = run("enumerate --builtin 9_42 --budget 64").out;
    std::string b = run("enumerate --builtin 9_42 --budget 64").out;
    EXPECT_EQ(a, b);
    EXPECT_FALSE(a.empty());
}

TEST(Cli, Selftest) {
    CliResult r = run("selftest --random 5");
    EXPECT_EQ(r.status, 0);
    EXPECT_NE(r.out.find("PASS"), std::string::npos);
}
