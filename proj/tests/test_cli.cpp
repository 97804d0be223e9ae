#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "cli.hpp"

namespace fs = std::filesystem;
using stablederiv::cli::run;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result call(std::vector<std::string> args) {
    args.insert(args.begin(), "stablederiv");
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path temp_path(const std::string& name) { return fs::temp_directory_path() / ("stablederiv_test_" + name); }

} // namespace

TEST(Cli, BoundWholeLine) {
    const auto r = call({"bound", "--m0", "1", "--m2", "1", "--domain", "real"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "m1_bound,rule,threshold_length\n1.4142135623730951,eq-1.2,2\n");
}

TEST(Cli, BoundInterval) {
    const auto r = call({"bound", "--m0", "1", "--m2", "1", "--domain", "interval", "--L", "1"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("2.5,eq-1.4"), std::string::npos);
    EXPECT_EQ(call({"bound", "--m0", "1", "--m2", "0", "--domain", "interval", "--L", "1"}).code, 1);
}

TEST(Cli, AdversaryZero) {
    const auto r = call({"adversary", "--delta", "0.005", "--M", "1", "--estimator", "zero"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "estimator,delta,M,b,err_f1,err_f2,worst,lower,beaten\nzero,0.005,1,0,0.1,0.1,0.1,0.1,false\n");
}

TEST(Cli, AdversaryAllEstimators) {
    const auto r = call({"adversary", "--delta", "0.01", "--M", "10", "--estimator", "all"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out.find(",true"), std::string::npos);
    EXPECT_EQ(call({"adversary", "--delta", "0.01", "--M", "10", "--estimator", "magic"}).code, 1);
}

TEST(Cli, StudyWritesCsvWithSlope) {
    const auto path = temp_path("study.csv");
    const auto r = call({"study", "--fn", "sin", "--spec", "c2:m2=1", "--deltas", "1e-2:1e-7:6", "--noise", "cosine",
                         "--out", path.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    const std::string csv = slurp(path);
    std::istringstream lines(csv);
    std::string line;
    int rows = 0;
    bool slope = false;
    std::getline(lines, line);
    EXPECT_EQ(line, "delta,h_used,theory_bound,measured_sup_error,n_points,seed");
    while (std::getline(lines, line)) {
        if (line.rfind("# slope,", 0) == 0) {
            slope = true;
        } else {
            ++rows;
        }
    }
    EXPECT_EQ(rows, 6);
    EXPECT_TRUE(slope);
    fs::remove(path);
}

TEST(Cli, StudyIsDeterministic) {
    const auto a = temp_path("det_a.csv");
    const auto b = temp_path("det_b.csv");
    const std::vector<std::string> base = {"study", "--fn", "exp-decay", "--spec", "c2:m2=2", "--deltas",
                                           "1e-2:1e-6:5", "--noise", "hash", "--seed", "123", "--out"};
    auto args_a = base;
    args_a.push_back(a.string());
    auto args_b = base;
    args_b.push_back(b.string());
    ASSERT_EQ(call(args_a).code, 0);
    ASSERT_EQ(call(args_b).code, 0);
    EXPECT_EQ(slurp(a), slurp(b));
    fs::remove(a);
    fs::remove(b);
}

TEST(Cli, StudyRejectsUnderstatedSpec) {
    const auto r = call({"study", "--fn", "sin", "--spec", "c2:m2=0.2", "--deltas", "1e-2:1e-5:4"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("below the measured value"), std::string::npos);
}

TEST(Cli, EstimateStdoutCsv) {
    const auto r = call({"estimate", "--fn", "sin", "--spec", "c2:m2=1", "--delta", "1e-4", "--noise", "hash", "--seed",
                         "7", "--window", "-1:1", "--n", "5"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out.rfind("x,estimate,h,bound,abs_error\n", 0), 0u);
    EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 6);
}

TEST(Cli, EstimateRejectsUnstableSpec) {
    const auto r = call({"estimate", "--fn", "sin", "--spec", "m1:m1=1", "--delta", "1e-4"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("no stable derivative estimator"), std::string::npos);
}

// A spec that understates the curvature lets the measured error exceed the
// claimed bound; the CLI must flag that with exit status 2.
TEST(Cli, EstimateGuaranteeViolationExitsTwo) {
    const auto r = call({"estimate", "--fn", "sin", "--spec", "c2:m2=0.0001", "--delta", "1e-6", "--window", "-3:3"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("guarantee violated"), std::string::npos);
}

TEST(Cli, SampleThenEstimateOnGrid) {
    const auto grid = temp_path("grid.csv");
    const auto out = temp_path("grid_est.csv");
    ASSERT_EQ(call({"sample", "--fn", "quadratic", "--delta", "1e-4", "--noise", "hash", "--seed", "3", "--x0", "0",
                    "--spacing", "0.01", "--n", "101", "--out", grid.string()})
                  .code,
              0);
    const auto r = call({"estimate", "--in", grid.string(), "--delta", "1e-4", "--spec", "c2:m2=2", "--fn",
                         "quadratic", "--out", out.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("h=0.01"), std::string::npos);
    EXPECT_NE(r.out.find("bound=0.02"), std::string::npos);
    const std::string csv = slurp(out);
    EXPECT_EQ(csv.rfind("x,estimate,h,bound,abs_error\n", 0), 0u);
    fs::remove(grid);
    fs::remove(out);
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(call({}).code, 1);
    EXPECT_EQ(call({"frobnicate"}).code, 1);
    EXPECT_EQ(call({"bound", "--m0", "1", "--m2", "1", "--bogus"}).code, 1);
    EXPECT_EQ(call({"bound", "--m0", "1"}).code, 1);
}

TEST(Cli, HelpExitsZero) {
    const auto top = call({"--help"});
    EXPECT_EQ(top.code, 0);
    EXPECT_NE(top.out.find("study"), std::string::npos);
    for (const auto* sub : {"estimate", "study", "adversary", "bound", "sample"}) {
        const auto r = call({sub, "--help"});
        EXPECT_EQ(r.code, 0) << sub;
        EXPECT_NE(r.out.find("--"), std::string::npos) << sub;
    }
}
