#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "multipack/commands.hpp"
#include "multipack/io.hpp"

namespace fs = std::filesystem;
using namespace multipack;

namespace {

struct CliResult {
    int code = -1;
    std::string out, err;
};

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() / ("multipack_cli_" + std::to_string(::getpid()) + "_" +
                                            ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    void write(const std::string& name, const std::string& text) const { std::ofstream(path(name), std::ios::binary) << text; }

    CliResult run(const std::string& args) const {
        const std::string out = path("stdout.txt"), err = path("stderr.txt");
        const std::string cmd = std::string(MULTIPACK_CLI_PATH) + " " + args + " >" + out + " 2>" + err;
        const int status = std::system(cmd.c_str());
        CliResult r;
        r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
        r.out = io::read_file(out);
        r.err = io::read_file(err);
        return r;
    }

    static std::string fixture(const std::string& name) { return std::string(MULTIPACK_DATA_DIR) + "/fixtures/v1/" + name; }

    fs::path dir_;
};

} // namespace

TEST_F(Cli, SolveLowerFamilyFullRadius) {
    ASSERT_EQ(run("gen --family lower1d --n 6 -o " + path("lower6.csv")).code, 0);
    const auto r = run("solve --input " + path("lower6.csv") + " --r full --method greedy1d");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "{\"size\":2,\"indices\":[0,3],\"r\":5,\"method\":\"greedy1d\",\"stats\":{\"nodes\":6}}\n");
}

TEST_F(Cli, SolveFptOnCollinearQuad) {
    write("quad.csv", "x,y\n0,0\n1,0\n3,0\n7,0\n");
    const auto r = run("solve " + path("quad.csv") + " --r 2 --method fpt --k 2");
    EXPECT_EQ(r.code, 0);
    const auto j = io::Json::parse(r.out);
    EXPECT_EQ(j["size"], 2);
    EXPECT_EQ(j["stats"]["found"], true);
    const auto exact = io::Json::parse(run("solve " + path("quad.csv") + " --r 2 --method exact").out);
    EXPECT_EQ(exact["indices"], io::Json::parse("[0,3]"));
}

TEST_F(Cli, SolvePentagonNng) {
    const auto r = run("solve --input " + fixture("pentagon.csv") + " --r 1 --method nng");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(io::Json::parse(r.out)["size"], 3);
}

TEST_F(Cli, FptWithoutSolutionStillSucceeds) {
    const auto r = run("solve " + fixture("pentagon.csv") + " --r 2 --method fpt --k 2");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(io::Json::parse(r.out)["stats"]["found"], false);
}

TEST_F(Cli, SolveAutoAndSingleton) {
    EXPECT_EQ(io::Json::parse(run("solve " + fixture("square4.csv")).out)["size"], 1);
    write("one.csv", "x,y\n5,5\n");
    const auto r = run("solve " + path("one.csv"));
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(io::Json::parse(r.out)["indices"], io::Json::parse("[0]"));
}

TEST_F(Cli, SolveOutputRevalidatesUnderCheck) {
    ASSERT_EQ(run("gen random --n 40 --seed 9 -o " + path("r.csv")).code, 0);
    for (const std::string method : {"exact", "greedy"}) {
        ASSERT_EQ(run("solve " + path("r.csv") + " --r 2 --method " + method + " -o " + path("w.json")).code, 0);
        EXPECT_EQ(run("check " + path("r.csv") + " --set " + path("w.json")).code, 0) << method;
    }
    ASSERT_EQ(run("solve " + path("r.csv") + " --r 1 -o " + path("w1.json")).code, 0);
    EXPECT_EQ(run("check " + path("r.csv") + " --set " + path("w1.json")).code, 0);
}

TEST_F(Cli, ExitCodes) {
    write("bad.csv", "x,y\n1,2,3\n");
    write("tie.csv", "x\n0\n1\n2\n");
    write("line.csv", "x\n2\n4\n8\n16\n");
    EXPECT_EQ(run("solve " + path("missing.csv")).code, 2);
    EXPECT_EQ(run("solve " + path("bad.csv")).code, 2);
    EXPECT_EQ(run("solve " + path("tie.csv")).code, 2);
    EXPECT_EQ(run("solve --nope").code, 2);
    EXPECT_EQ(run("solve " + path("line.csv") + " --r 2 --method nng").code, 3);
    EXPECT_EQ(run("solve " + fixture("pentagon.csv") + " --method greedy1d").code, 3);
    EXPECT_EQ(run("solve " + path("line.csv") + " --r 9").code, 3);
    EXPECT_EQ(run("solve " + path("line.csv") + " --method brute --brute-limit 3").code, 4);
    ASSERT_EQ(run("gen random --n 200 --seed 1 -o " + path("big.csv")).code, 0);
    EXPECT_EQ(run("solve " + path("big.csv") + " --r 2 --method exact --node-budget 5").code, 4);

    const auto err = run("solve " + path("bad.csv")).err;
    const auto j = io::Json::parse(err.substr(0, err.find('\n')));
    EXPECT_EQ(j["error"], "parse");
    EXPECT_TRUE(j.contains("message"));
}

TEST_F(Cli, CheckViolationAndEmpty) {
    write("line.csv", "x\n2\n4\n8\n16\n");
    write("pair.json", "{\"indices\":[0,1]}");
    const auto bad = run("check " + path("line.csv") + " --set " + path("pair.json") + " --r 1");
    EXPECT_EQ(bad.code, 1);
    EXPECT_EQ(bad.out, "{\"valid\":false,\"v\":0,\"s\":1,\"count\":2,\"bound\":1,\"r\":1}\n");
    write("empty.json", "[]");
    EXPECT_EQ(run("check " + path("line.csv") + " --set " + path("empty.json") + " --r full").code, 0);
    write("ok.json", "{\"indices\":[0,3],\"r\":3}");
    EXPECT_EQ(run("check " + path("line.csv") + " --set " + path("ok.json")).code, 0);
    EXPECT_EQ(run("check " + path("line.csv") + " --set " + path("empty.json")).code, 3);
}

TEST_F(Cli, GenFamilies) {
    EXPECT_EQ(run("gen --family upper1d --n 7").out, "x\n0\n6\n9\n33\n54\n150\n243\n");
    EXPECT_EQ(run("gen upper1d --n 6 --unscaled").out, "x\n0\n2\n3\n11\n18\n50\n");
    EXPECT_EQ(run("gen --family pentagon").out, io::read_file(fixture("pentagon.csv")));
    EXPECT_EQ(run("gen square4").out, io::read_file(fixture("square4.csv")));
    EXPECT_EQ(run("gen nope").code, 3);
    EXPECT_EQ(run("gen random --n 10 --grid 5").code, 3);
}

TEST_F(Cli, AuditDegree) {
    write("three.csv", "x,y\n0,0\n10,1\n3,7\n");
    const auto three = run("audit-degree " + path("three.csv") + " --dump-edges " + path("edges.txt"));
    EXPECT_EQ(three.code, 0);
    EXPECT_EQ(io::Json::parse(three.out)["max_degree"], 2);
    EXPECT_EQ(io::read_file(path("edges.txt")), "0 1\n0 2\n1 2\n");
    EXPECT_EQ(io::Json::parse(run("audit-degree " + fixture("pentagon.csv")).out)["max_degree"], 4);
    ASSERT_EQ(run("gen random --n 10000 --seed 5 -o " + path("big.csv")).code, 0);
    const auto big = run("audit-degree " + path("big.csv"));
    EXPECT_EQ(big.code, 0);
    EXPECT_EQ(io::Json::parse(big.out)["within_bound"], true);
}

TEST_F(Cli, BenchFamilies) {
    const auto r2 = run("bench --family random2d --n-min 10 --n-max 30 --n-step 10 --trials 3 --seed 4");
    EXPECT_EQ(r2.code, 0);
    EXPECT_EQ(r2.out.substr(0, r2.out.find('\n')), "instance,n,method,size,optimum,ratio,nodes");
    EXPECT_NE(r2.err.find("worst ratio"), std::string::npos);
    EXPECT_EQ(run("bench --family random1d --n-min 2 --n-max 12 --n-step 5 --trials 2").code, 0);
    const auto mmp = run("bench --family mmp2 --trials 50");
    EXPECT_EQ(mmp.code, 0);
    EXPECT_NE(mmp.err.find("0 counterexample(s)"), std::string::npos);
    EXPECT_EQ(run("bench --family nope").code, 3);
    const auto timed = run("bench --family random2d --n-min 10 --n-max 10 --trials 1 --timing");
    EXPECT_NE(timed.out.find(",wall_ms"), std::string::npos);
}

TEST_F(Cli, Render) {
    write("w.json", "{\"indices\":[1]}");
    const auto r = run("render " + fixture("pentagon.csv") + " --set " + path("w.json") + " --circles");
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("point witness"), std::string::npos);
    write("bad.json", "[9]");
    EXPECT_EQ(run("render " + fixture("pentagon.csv") + " --set " + path("bad.json")).code, 3);
}

TEST_F(Cli, ThreadsFlagDoesNotChangeOutput) {
    const auto a = run("--threads 1 bench --family mmp2 --trials 40 --seed 3");
    const auto b = run("--threads 4 bench --family mmp2 --trials 40 --seed 3");
    EXPECT_EQ(a.out, b.out);
}

TEST(CliInProcess, CommandsWriteToGivenStreams) {
    cli::GenOptions gen;
    gen.family = "lower1d";
    gen.n = 3;
    std::ostringstream out, err;
    EXPECT_EQ(cli::cmd_gen(gen, out, err), 0);
    EXPECT_EQ(out.str(), "x\n2\n4\n8\n");
}
