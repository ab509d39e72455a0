#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "qbailey/cli.hpp"

using namespace qbailey;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run_cli(std::vector<std::string> args, const std::string& input = "") {
    std::ostringstream out, err;
    std::istringstream in(input);
    int code = cli::run(args, out, err, in);
    return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("qbailey_test_" + std::to_string(::getpid()) + "_" + name);
}

} // namespace

TEST(Cli, VerifyAllJson) {
    auto r = run_cli({"verify-all", "--order", "60", "--format", "json", "--threads", "0"});
    EXPECT_EQ(r.code, 0) << r.err;
    auto doc = json::parse(r.out);
    EXPECT_GE(doc["passed"].get<int>(), 47);
    EXPECT_EQ(doc["failed"].get<int>(), 0);
    EXPECT_EQ(doc["order"], "60");
    for (const auto& e : doc["identities"]) {
        for (const auto& [k, v] : e.items()) {
            EXPECT_TRUE(k == "id" || k == "status" || k == "order" || k == "first_mismatch" || k == "millis") << k;
        }
        EXPECT_EQ(e["status"], "pass");
    }
}

TEST(Cli, JsonIsReproducibleWithoutTimings) {
    std::vector<std::string> args{"verify-all", "--order", "30", "--format", "json", "--threads", "1", "--no-timings"};
    auto a = run_cli(args);
    auto b = run_cli(args);
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
}

TEST(Cli, VerifyIdentity) {
    EXPECT_EQ(run_cli({"verify-identity", "PNS123", "--order", "10"}).code, 0);
    auto r = run_cli({"verify-identity", "NOSUCH"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("NOSUCH"), std::string::npos);
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run_cli({}).code, 2);
    EXPECT_EQ(run_cli({"frobnicate"}).code, 2);
    EXPECT_EQ(run_cli({"verify-all", "--order", "abc"}).code, 2);
    EXPECT_EQ(run_cli({"verify-all", "--format", "xml"}).code, 2);
    EXPECT_EQ(run_cli({"verify-all", "--registry", "/nonexistent/file.json"}).code, 2);
    EXPECT_EQ(run_cli({"lemma", "1,2"}).code, 2);
    EXPECT_EQ(run_cli({"list", "widgets"}).code, 2);
    EXPECT_EQ(run_cli({"verify-pair", "BP999"}).code, 2);
    EXPECT_EQ(run_cli({"verify-transform", "VJ3", "--assign", "a=q^6"}).code, 2);
    auto help = run_cli({"--help"});
    EXPECT_EQ(help.code, 0);
    EXPECT_NE(help.out.find("verify-all"), std::string::npos);
}

TEST(Cli, CorruptedRegistryExitsOne) {
    json doc = json::parse(std::ifstream(default_registry_path));
    for (auto& e : doc["identities"]) {
        if (e["id"] == "PNS224") {
            for (auto& f : e["rhs"]) {
                if (f["step_exp"] == "13") {
                    f["step_exp"] = "12";
                    if (f["base_exp"] == "13") {
                        f["base_exp"] = "12";
                    }
                }
            }
        }
    }
    auto path = temp_file("corrupt.json");
    std::ofstream(path) << doc.dump();
    auto r = run_cli({"verify-all", "--registry", path.string(), "--order", "40", "--format", "json"});
    std::filesystem::remove(path);
    EXPECT_EQ(r.code, 1);
    auto out = json::parse(r.out);
    EXPECT_EQ(out["failed"], 1);
    for (const auto& e : out["identities"]) {
        EXPECT_EQ(e.contains("first_mismatch"), e["id"] == "PNS224");
    }
}

TEST(Cli, OutputFile) {
    auto path = temp_file("report.json");
    auto r = run_cli({"verify-identity", "RRa1", "--order", "20", "--format", "json", "--output", path.string()});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(r.out.empty());
    auto doc = json::parse(std::ifstream(path));
    std::filesystem::remove(path);
    EXPECT_EQ(doc["id"], "RRa1");
    EXPECT_EQ(doc["order"], "20");
}

TEST(Cli, EnvironmentOrder) {
    ::setenv("QBAILEY_ORDER", "7", 1);
    auto r = run_cli({"verify-identity", "RRa1", "--format", "json"});
    ::unsetenv("QBAILEY_ORDER");
    EXPECT_EQ(json::parse(r.out)["order"], "7");
    auto flag = run_cli({"verify-identity", "RRa1", "--format", "json", "--order", "9/2"});
    EXPECT_EQ(json::parse(flag.out)["order"], "9/2");
}

TEST(Cli, PairsTransformsAndLemma) {
    EXPECT_EQ(run_cli({"verify-pair", "BP123", "--order", "20", "--n", "4"}).code, 0);
    auto p = run_cli({"verify-pair", "BP215", "--a", "q^2", "--order", "20", "--format", "json"});
    EXPECT_EQ(p.code, 0);
    EXPECT_EQ(json::parse(p.out)["checks"], 7);
    EXPECT_EQ(run_cli({"verify-transform", "VJ4", "--order", "20"}).code, 0);
    EXPECT_EQ(run_cli({"verify-transform", "VJ1", "--assign", "a=q^4", "b=q", "x=3*q^2", "y=q", "--n", "2", "--order",
                       "20"})
                  .code,
              0);
    auto l = run_cli({"lemma", "1,1,2", "--order", "15", "--format", "json"});
    EXPECT_EQ(l.code, 0);
    EXPECT_EQ(json::parse(l.out)["status"], "pass");
    EXPECT_EQ(run_cli({"lemma", "2,1,5", "--rho2", "-1", "--N", "3", "--order", "15"}).code, 0);
}

TEST(Cli, ExpandAndRecognize) {
    auto e = run_cli({"expand", "RRa1.lhs", "--order", "7"});
    EXPECT_EQ(e.code, 0);
    EXPECT_NE(e.out.find("1 + q^(1) + q^(2) + q^(3) + 2*q^(4) + 2*q^(5) + 3*q^(6)"), std::string::npos) << e.out;
    auto r = run_cli({"recognize", "RRa1", "--order", "40", "--format", "json"});
    EXPECT_EQ(r.code, 0);
    auto doc = json::parse(r.out);
    EXPECT_EQ(doc["period"], 5);
    EXPECT_EQ(doc["pattern"], json::parse("[1,0,0,1,0]"));
    // 1/(1 - q) from stdin: c_1 = 1, all else 0
    auto s = run_cli({"recognize", "--order", "12", "--format", "json"},
                     "0 1\n1 1\n2 1\n3 1\n4 1\n5 1\n6 1\n7 1\n8 1\n9 1\n10 1\n11 1\n");
    EXPECT_EQ(s.code, 0) << s.err;
    auto sd = json::parse(s.out);
    EXPECT_EQ(sd["exponents"][0], 1);
    EXPECT_EQ(sd["exponents"][5], 0);
    EXPECT_EQ(run_cli({"recognize", "--order", "4"}, "0 2\n").code, 1);
    EXPECT_EQ(run_cli({"recognize", "--order", "4"}, "0\n").code, 2);
}

TEST(Cli, Listings) {
    auto ids = json::parse(run_cli({"list", "identities", "--format", "json"}).out);
    EXPECT_EQ(ids.size(), 53u);
    EXPECT_EQ(json::parse(run_cli({"list", "pairs", "--format", "json"}).out).size(), 19u);
    EXPECT_EQ(json::parse(run_cli({"list", "transforms", "--format", "json"}).out).size(), 6u);
}
