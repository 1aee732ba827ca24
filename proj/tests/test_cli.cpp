#include <gtest/gtest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

int run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + (env.empty() ? "" : " ") + "\"" QCDYN_CLI_PATH "\" " + args + " >cli_stdout.txt 2>cli_stderr.txt";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream is(text);
    for (std::string l; std::getline(is, l);) out.push_back(l);
    return out;
}

}  // namespace

TEST(Cli, JuliaWritesPgm) {
    fs::remove("k.pgm");
    ASSERT_EQ(run("julia --alpha 1.5 --c -0.8 --center 0 --width 4 --nx 64 --ny 48 -o k.pgm"), 0);
    const std::string s = slurp("k.pgm");
    const std::string header = "P5\n64 48\n255\n";
    ASSERT_EQ(s.substr(0, header.size()), header);
    EXPECT_EQ(s.size(), header.size() + 64 * 48);
    EXPECT_NE(std::count(s.begin() + header.size(), s.end(), '\0'), 0);
}

TEST(Cli, LocusMandelbrot) {
    ASSERT_EQ(run("locus --alpha 1 --center -0.5 --width 3 --nx 61 --ny 61 --format csv -o m.csv"), 0);
    const auto rows = lines(slurp("m.csv"));
    ASSERT_EQ(rows.size(), 1u + 61 * 61);
    EXPECT_EQ(rows[0], "i,j,re,im,status,value");
    // Centre pixel samples c = -0.5, inside the main cardioid.
    bool found = false;
    for (const auto& r : rows)
        if (r.rfind("30,30,", 0) == 0) {
            found = true;
            EXPECT_NE(r.find(",bounded,"), std::string::npos) << r;
        }
    EXPECT_TRUE(found);
}

TEST(Cli, DeterministicAcrossThreadCounts) {
    const std::string args = "julia --alpha 0.75 --c=-0.78,0.05 --width 3 --nx 80 --ny 70 --mode attractor -o ";
    ASSERT_EQ(run(args + "t1.pgm", "QCDYN_THREADS=1"), 0);
    ASSERT_EQ(run(args + "t4.pgm", "QCDYN_THREADS=4"), 0);
    EXPECT_EQ(slurp("t1.pgm"), slurp("t4.pgm"));
}

TEST(Cli, HopfGrid) {
    ASSERT_EQ(run("hopf --alpha 0.75 --theta-grid 64 -o h.csv"), 0);
    const auto rows = lines(slurp("h.csv"));
    ASSERT_EQ(rows.size(), 65u);
    EXPECT_EQ(rows[0], "alpha,beta,theta,hopf_number,status");
    double lo = 1e300;
    int ok = 0;
    for (std::size_t k = 1; k < rows.size(); ++k) {
        std::vector<std::string> f;
        std::istringstream is(rows[k]);
        for (std::string x; std::getline(is, x, ',');) f.push_back(x);
        ASSERT_EQ(f.size(), 5u);
        if (f[4] != "ok") continue;
        ++ok;
        lo = std::min(lo, std::stod(f[3]));
    }
    EXPECT_GE(ok, 60);
    EXPECT_GT(lo, 41.0);
}

TEST(Cli, HopfSingleThetaToStdout) {
    ASSERT_EQ(run("hopf --alpha 1.5 --alpha 1 --theta 1.0"), 0);
    const auto rows = lines(slurp("cli_stdout.txt"));
    ASSERT_EQ(rows.size(), 3u);
}

TEST(Cli, FixedPointsJson) {
    ASSERT_EQ(run("fixed-points --alpha 0.75 --c 0.14 --format json -o fp.json"), 0);
    const auto doc = nlohmann::json::parse(slurp("fp.json"));
    EXPECT_EQ(doc["fixed_points"].size(), 4u);
}

TEST(Cli, CurvesAndCusps) {
    ASSERT_EQ(run("curves --alpha 2 --curve gamma-plus --cusps --n 2000 -o cusps.csv"), 0);
    EXPECT_EQ(lines(slurp("cusps.csv")).size(), 4u);
    ASSERT_EQ(run("curves --alpha 0.8 --curve delta --image --n 64 -o delta.csv"), 0);
    EXPECT_EQ(lines(slurp("delta.csv")).size(), 65u);
}

TEST(Cli, OrbitAndLeaf) {
    ASSERT_EQ(run("orbit --alpha 1 --c -1 --n 4 -o crit.csv"), 0);
    EXPECT_EQ(slurp("crit.csv"), "n,re,im\n1,-1,0\n2,0,0\n3,-1,0\n4,0,0\n");
    ASSERT_EQ(run("orbit --alpha 1 --c -1 --kind periodic --period 2 --seed 0.1 -o p2.json"), 0);
    EXPECT_EQ(nlohmann::json::parse(slurp("p2.json"))["period"], 2);
    ASSERT_EQ(run("leaf --alpha 2 --c 0 --radius 1.5 --points 32 --word 0,1,0 -o leaf.csv"), 0);
    EXPECT_EQ(lines(slurp("leaf.csv")).size(), 33u);
}

TEST(Cli, UsageErrorsExitTwo) {
    EXPECT_EQ(run("julia --alpha 0.5 --c 0 -o x.pgm"), 2);
    EXPECT_NE(slurp("cli_stderr.txt").find("alpha"), std::string::npos);
    EXPECT_EQ(run("locus --alpha 0.3 -o x.pgm"), 2);
    EXPECT_EQ(run("julia --alpha 1 --c 0"), 2);
    EXPECT_EQ(run("julia --alpha 1 --c 1,2,3 -o x.pgm"), 2);
    EXPECT_EQ(run("frobnicate"), 2);
    EXPECT_EQ(run(""), 2);
    EXPECT_EQ(run("hopf --alpha 0.8"), 2);
    EXPECT_EQ(run("leaf --alpha 2 --c 0 --word 012"), 2);
    EXPECT_FALSE(fs::exists("x.pgm"));
}

TEST(Cli, ComputationErrorsExitOne) {
    EXPECT_EQ(run("orbit --alpha 1 --c 10 --kind periodic --seed 0.5 -o none.json"), 1);
    EXPECT_FALSE(fs::exists("none.json"));
    EXPECT_EQ(run("julia --alpha 1 --c 0 --nx 4 --ny 4 -o no_such_dir/k.pgm"), 1);
    EXPECT_EQ(run("curves --alpha 1 --curve gamma-plus --cusps"), 1);
}
