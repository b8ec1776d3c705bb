#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fplab/cli.hpp"

using namespace fplab;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::dispatch(args, out, err);
    return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string("file:") + FPLAB_TEST_DATA_DIR + "/" + name; }

/// Value of column `key` in a header + one row CSV.
std::string column(const std::string& csv, const std::string& key) {
    std::istringstream in(csv);
    std::string header, row;
    std::getline(in, header);
    std::getline(in, row);
    auto split = [](const std::string& line) {
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string c;
        while (std::getline(ss, c, ',')) cells.push_back(c);
        return cells;
    };
    const auto keys = split(header);
    const auto vals = split(row);
    for (std::size_t i = 0; i < keys.size() && i < vals.size(); ++i) {
        if (keys[i] == key) return vals[i];
    }
    return "<missing>";
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
    const auto path = std::filesystem::temp_directory_path() / ("fplab_test_" + name);
    std::ofstream(path) << content;
    return path;
}

}  // namespace

TEST(Cli, TkExample) {
    const auto r = run({"tk", "--p", "3", "--H", "2", "--s", "1", "--k", "6", "--set", data("singleton1"), "--L", "0"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(column(r.out, "T"), "22;21;21");
    EXPECT_EQ(column(r.out, "lambdas"), "0;1;2");
    EXPECT_EQ(column(r.out, "mass"), "64");
    EXPECT_EQ(column(r.out, "strategy"), "direct");
}

TEST(Cli, ExpsumExample) {
    const auto r = run({"expsum", "--p", "5", "--s", "1", "--H", "4", "--L", "0", "--set", data("singleton1"), "--a", "0"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(column(r.out, "S"), "4");
    EXPECT_EQ(column(r.out, "trivial_bound"), "4");
}

TEST(Cli, SelftestPasses) {
    const auto r = run({"selftest"});
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
    EXPECT_GE(std::count(r.out.begin(), r.out.end(), '\n'), 8);
}

TEST(Cli, ProdsetAndRatio) {
    const auto set = temp_file("set13", "1\n3\n");
    const auto a = run({"prodset", "--p", "7", "--H", "2", "--set", "file:" + set.string(), "--missing-list"});
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(column(a.out, "size"), "4");
    EXPECT_EQ(column(a.out, "missing_residues"), "0;4;5");
    const auto b = run({"prodset", "--p", "7", "--H", "2", "--set", "file:" + set.string(), "--ratio"});
    ASSERT_EQ(b.code, 0) << b.err;
    EXPECT_EQ(column(b.out, "object"), "ratio_set");
    EXPECT_EQ(column(b.out, "size"), "4");
}

TEST(Cli, EnergyQuantities) {
    const auto set = temp_file("set12", "1\n2\n");
    const std::string spec = "file:" + set.string();
    EXPECT_EQ(column(run({"energy", "--p", "7", "--H", "3", "--quantity", "Js", "--s", "2", "--set", spec}).out, "value"),
              "12");
    EXPECT_EQ(column(run({"energy", "--p", "7", "--H", "2", "--quantity", "Jls", "--s", "1"}).out, "value"), "6");
    const auto r13 = temp_file("set13", "1\n3\n");
    EXPECT_EQ(column(run({"energy", "--p", "7", "--H", "1", "--J", "2", "--quantity", "R", "--set",
                          "file:" + r13.string()}).out,
                     "value"),
              "4");
    const auto jl = run({"energy", "--p", "101", "--H", "20", "--L", "40", "--quantity", "JL", "--set", "random:10",
                         "--seed", "3"});
    ASSERT_EQ(jl.code, 0) << jl.err;
    EXPECT_EQ(column(jl.out, "within_bound"), "true");
}

TEST(Cli, BurgessCompleteInterval) {
    const auto r = run({"expsum", "--p", "101", "--H", "100", "--burgess"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(column(r.out, "ratio"), "0");
}

TEST(Cli, JsonFormat) {
    const auto r = run({"tk", "--p", "3", "--H", "2", "--k", "6", "--set", data("singleton1"), "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["T"], "22;21;21");
    EXPECT_EQ(j["k"], 6);
    EXPECT_EQ(j["hyp_6_5"], false);
}

TEST(Cli, UsageErrorsExitTwo) {
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({"prodset", "--H", "3"}).code, 2);                                      // missing --p
    EXPECT_EQ(run({"prodset", "--p", "7", "--H", "3", "--set", "random:2"}).code, 2);     // random without seed
    const auto r = run({"prodset", "--p", "7", "--H", "3", "--set", data("singleton1"), "--seed", "1"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("--seed"), std::string::npos) << r.err;
    EXPECT_EQ(run({"prodset", "--p", "9", "--H", "3", "--set", "random:2", "--seed", "1"}).code, 2);  // not prime
    EXPECT_EQ(run({"prodset", "--p", "7", "--H", "3", "--set", "bogus"}).code, 2);
    EXPECT_EQ(run({"tk", "--p", "7", "--H", "3", "--k", "1", "--set", data("singleton1")}).code, 2);
    EXPECT_EQ(run({"expsum", "--p", "7", "--H", "3", "--set", data("singleton1")}).code, 2);  // no --a
    EXPECT_EQ(run({"energy", "--p", "7", "--H", "3", "--quantity", "Q"}).code, 2);
    EXPECT_EQ(run({"prodset", "--p", "7", "--H", "3", "--set", data("singleton1"), "--format", "xml"}).code, 2);
}

TEST(Cli, BadSetFileNamesLine) {
    const auto bad = temp_file("badset", "1\n2\nseven\n");
    const auto r = run({"prodset", "--p", "7", "--H", "3", "--set", "file:" + bad.string()});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find(":3"), std::string::npos) << r.err;
}

TEST(Cli, BudgetRefusalExitsThree) {
    const auto r = run({"prodset", "--p", "1009", "--H", "500", "--set", "random:500", "--seed", "1", "--budget", "1000"});
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.err.find("budget"), std::string::npos);
}

TEST(Cli, SweepWritesReport) {
    const auto cfg = temp_file("sweep.cfg", "quantity = J\nprimes = 101, 103\nH = 4\nM = 3\nseed = 2\n");
    const auto out = std::filesystem::temp_directory_path() / "fplab_test_sweep.csv";
    const auto r = run({"sweep", "--config", cfg.string(), "--out", out.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    std::ifstream in(out);
    std::string header;
    std::getline(in, header);
    EXPECT_EQ(header, csv_header());
    EXPECT_EQ(run({"sweep", "--config", "/nonexistent/cfg"}).code, 2);
    const auto broken = temp_file("broken.cfg", "primes = 7\nnope = 1\n");
    const auto b = run({"sweep", "--config", broken.string()});
    EXPECT_EQ(b.code, 2);
    EXPECT_NE(b.err.find("line 2"), std::string::npos) << b.err;
}

TEST(Cli, RepeatedInvocationsAreByteIdentical) {
    const auto cfg = temp_file("rep.cfg", "quantity = S\nprimes = 1009\nH = 30\nM = 20\nseed = 8\n");
    const std::vector<std::vector<std::string>> invocations = {
        {"prodset", "--p", "1009", "--H", "40", "--set", "random:30", "--seed", "11"},
        {"energy", "--p", "1009", "--H", "40", "--quantity", "Js", "--s", "2", "--set", "random:30", "--seed", "11"},
        {"expsum", "--p", "1009", "--H", "40", "--a", "5", "--set", "random:30", "--seed", "11"},
        {"tk", "--p", "61", "--H", "4", "--set", "random:3", "--seed", "11"},
        {"sweep", "--config", cfg.string()},
        {"selftest"},
    };
    for (const auto& args : invocations) {
        const auto a = run(args);
        const auto b = run(args);
        ASSERT_EQ(a.code, 0) << args[0] << ": " << a.err;
        EXPECT_EQ(a.out, b.out) << args[0];
        EXPECT_FALSE(a.out.empty());
    }
}

TEST(Cli, DifferentSeedsGiveDifferentSets) {
    const auto a = run({"prodset", "--p", "1009", "--H", "10", "--set", "random:30", "--seed", "1"});
    const auto b = run({"prodset", "--p", "1009", "--H", "10", "--set", "random:30", "--seed", "2"});
    EXPECT_NE(a.out, b.out);
}

TEST(Cli, HelpExitsZero) {
    const auto r = run({"--help"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("prodset"), std::string::npos);
}
