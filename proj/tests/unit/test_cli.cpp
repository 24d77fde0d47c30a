#include "asmbench/io/csv.hpp"

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    auto p = fs::temp_directory_path() / "asmbench_cli_test" / name;
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

int run_cli(const std::string& args, const fs::path& log) {
    const std::string cmd = std::string(ASMBENCH_CLI) + " " + args + " >" + log.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace

TEST(Cli, SimulateAtTimeZeroWritesOneRow) {
    const auto dir = scratch("sim0");
    ASSERT_EQ(run_cli("simulate --t-end 0 --out " + dir.string(), dir / "log"), 0) << slurp(dir / "log");
    const auto t = asmbench::io::read_csv(dir / "trajectory.csv");
    ASSERT_EQ(t.rows.size(), 1u);
    EXPECT_EQ(t.header.front(), "t_d");
    EXPECT_EQ(t.header.size(), 83u);
    EXPECT_EQ(t.rows[0][0], "0");
}

TEST(Cli, SimulateHonoursOutputInterval) {
    const auto dir = scratch("sim2");
    ASSERT_EQ(run_cli("simulate --t-end 2 --dt 0.5 --out " + dir.string(), dir / "log"), 0) << slurp(dir / "log");
    const auto t = asmbench::io::read_csv(dir / "trajectory.csv");
    ASSERT_EQ(t.rows.size(), 5u);
    EXPECT_DOUBLE_EQ(t.numeric("t_d").back(), 2.0);
}

TEST(Cli, UnknownConfigKeyExitsWithConfigCode) {
    const auto dir = scratch("badkey");
    std::ofstream(dir / "c.json") << R"({"run": {"seeed": 3}})";
    const int rc = run_cli("steady --config " + (dir / "c.json").string() + " --out " + dir.string(), dir / "log");
    EXPECT_EQ(rc, 2);
    EXPECT_NE(slurp(dir / "log").find("seeed"), std::string::npos);
    EXPECT_FALSE(fs::exists(dir / "steady.csv"));
}

TEST(Cli, BadArgumentsExitWithConfigCode) {
    const auto dir = scratch("badarg");
    EXPECT_EQ(run_cli("", dir / "log"), 2);
    EXPECT_EQ(run_cli("frobnicate", dir / "log"), 2);
    EXPECT_EQ(run_cli("uncertainty --sampling sobol", dir / "log"), 2);
    EXPECT_EQ(run_cli("simulate --config /nonexistent.json", dir / "log"), 2);
}

TEST(Cli, ChartMissingColumnExitsWithConfigCode) {
    const auto dir = scratch("chart");
    std::ofstream(dir / "in.csv") << "t_d,a\n0,1\n1,2\n";
    const auto in = (dir / "in.csv").string();
    const auto out = (dir / "out.svg").string();
    EXPECT_EQ(run_cli("chart --kind timeseries --input " + in + " --output " + out + " --columns b", dir / "log"), 2);
    EXPECT_NE(slurp(dir / "log").find("b"), std::string::npos);
    EXPECT_FALSE(fs::exists(out));
    EXPECT_EQ(run_cli("chart --kind timeseries --input " + in + " --output " + out, dir / "log"), 0);
    EXPECT_NE(slurp(out).find("<svg"), std::string::npos);
}

TEST(Cli, UncertaintyIsIdenticalAcrossWorkerCounts) {
    const auto a = scratch("mc1");
    const auto b = scratch("mc2");
    const std::string common = "uncertainty --config " + std::string(ASMBENCH_BASELINE_CONFIG) + " --samples 4 --seed 11";
    ASSERT_EQ(run_cli(common + " --workers 1 --out " + a.string(), a / "log"), 0) << slurp(a / "log");
    ASSERT_EQ(run_cli(common + " --workers 2 --out " + b.string(), b / "log"), 0) << slurp(b / "log");
    for (const char* f : {"samples.csv", "metrics.csv", "spearman.csv"}) {
        ASSERT_TRUE(fs::exists(a / f)) << f;
        EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
    }
    EXPECT_EQ(asmbench::io::read_csv(a / "samples.csv").rows.size(), 4u);

    ASSERT_EQ(run_cli("filter --metric TN --threshold 14 --out " + a.string(), a / "log"), 0) << slurp(a / "log");
    const auto f = asmbench::io::read_csv(a / "filter.csv");
    EXPECT_TRUE(f.has_column("D"));
    EXPECT_EQ(f.rows.size(), 28u);
}

TEST(Cli, SweepWritesFullGrid) {
    const auto dir = scratch("sweep");
    ASSERT_EQ(run_cli("sweep --nx 2 --ny 2 --out " + dir.string(), dir / "log"), 0) << slurp(dir / "log");
    const auto t = asmbench::io::read_csv(dir / "sweep.csv");
    EXPECT_EQ(t.rows.size(), 4u);
    EXPECT_EQ(t.header[0], "K_La1");
    EXPECT_EQ(t.header[1], "Q_WAS");
}

TEST(Cli, SteadyWritesMetricsAndAccounting) {
    const auto dir = scratch("steady");
    ASSERT_EQ(run_cli("steady --config " + std::string(ASMBENCH_BASELINE_CONFIG) + " --out " + dir.string(), dir / "log"),
              0)
        << slurp(dir / "log");
    const auto s = asmbench::io::read_csv(dir / "steady.csv");
    ASSERT_EQ(s.rows.size(), 1u);
    EXPECT_NEAR(s.numeric("COD").front(), 47.555, 0.05);
    EXPECT_TRUE(fs::exists(dir / "tea_lca.csv"));
}
