#include "commands.hpp"

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;
using triad::Json;

namespace {

const std::string kExe = TRIADWAVE_EXE;
const fs::path kConfigs = TRIAD_CONFIG_DIR;

class Cli : public ::testing::Test {
protected:
    void SetUp() override
    {
        dir_ = fs::temp_directory_path() /
               ("triadwave_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    int exec(const std::string& args) const
    {
        const std::string cmd = kExe + " " + args + " > " + (dir_ / "stdout.txt").string() + " 2> " +
                                (dir_ / "stderr.txt").string();
        const int raw = std::system(cmd.c_str());
        return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    }

    std::string slurp(const fs::path& p) const
    {
        std::ifstream in(p);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    fs::path writeConfig(const std::string& name, const Json& j) const
    {
        const fs::path p = dir_ / name;
        std::ofstream(p) << j.dump(2);
        return p;
    }

    fs::path dir_;
};

std::string cfg(const char* name) { return (kConfigs / name).string(); }

} // namespace

TEST_F(Cli, RunBurgersCompletes)
{
    const fs::path out = dir_ / "out";
    ASSERT_EQ(exec("run --config " + cfg("burgers.json") + " --out " + out.string()), 0);
    const std::string csv = slurp(out / "diagnostics.csv");
    std::istringstream is(csv);
    std::string line;
    std::getline(is, line);
    EXPECT_EQ(line, "t,P,H,norm_s_0,norm_s_2,sup_ux,envelope");
    double prev = -1.0;
    int rows = 0;
    while (std::getline(is, line)) {
        const double t = std::stod(line.substr(0, line.find(',')));
        EXPECT_GT(t, prev);
        prev = t;
        ++rows;
    }
    EXPECT_EQ(rows, 21);
    EXPECT_EQ(prev, 1.0);

    const Json manifest = Json::parse(slurp(out / "manifest.json"));
    EXPECT_EQ(manifest.at("exitStatus"), 0);
    EXPECT_EQ(manifest.at("version"), TRIAD_VERSION);
    EXPECT_FALSE(manifest.at("blowup").get<bool>());
    EXPECT_TRUE(manifest.contains("startTime"));
    EXPECT_TRUE(manifest.contains("endTime"));
    EXPECT_EQ(manifest.at("config"), triad::readJsonFile(cfg("burgers.json")));
    for (const Json& a : manifest.at("artifacts")) EXPECT_TRUE(fs::exists(a.get<std::string>())) << a;
    EXPECT_EQ(manifest.at("artifacts").size(), 4U);

    const Json snaps = Json::parse(slurp(out / "snapshots.json"));
    ASSERT_EQ(snaps.size(), 5U); // rows 0, 5, 10, 15, 20
    EXPECT_EQ(snaps.back().at("t"), 1.0);
    EXPECT_EQ(triad::fieldFromJson(snaps.back().at("field")),
              triad::fieldFromJson(Json::parse(slurp(out / "final.json"))));
}

TEST_F(Cli, RunIsBitReproducible)
{
    ASSERT_EQ(exec("run --config " + cfg("field_coeffs.json") + " --out " + (dir_ / "a").string()), 0);
    ASSERT_EQ(exec("run --config " + cfg("field_coeffs.json") + " --out " + (dir_ / "b").string() +
                   " --threads 2"),
              0);
    EXPECT_EQ(slurp(dir_ / "a" / "diagnostics.csv"), slurp(dir_ / "b" / "diagnostics.csv"));
    EXPECT_EQ(slurp(dir_ / "a" / "final.json"), slurp(dir_ / "b" / "final.json"));
}

TEST_F(Cli, RunRejectsInvalidRayleigh)
{
    const fs::path out = dir_ / "out";
    EXPECT_EQ(exec("run --config " + cfg("rayleigh_invalid.json") + " --out " + out.string()), 3);
    EXPECT_NE(slurp(dir_ / "stderr.txt").find("0 < r < 1"), std::string::npos);
    const Json manifest = Json::parse(slurp(out / "manifest.json"));
    EXPECT_EQ(manifest.at("exitStatus"), 3);
}

TEST_F(Cli, RunRejectsUncertifiedKernel)
{
    EXPECT_EQ(exec("run --config " + cfg("asymmetric_custom.json") + " --out " + (dir_ / "out").string()), 3);
    EXPECT_NE(slurp(dir_ / "stderr.txt").find("certification"), std::string::npos);
}

TEST_F(Cli, RunRejectsMissingFile)
{
    EXPECT_EQ(exec("run --config " + (dir_ / "nope.json").string() + " --out " + (dir_ / "out").string()), 3);
}

TEST_F(Cli, RunReportsBlowup)
{
    Json j = triad::readJsonFile(cfg("surface_blowup.json"));
    j["simulation"]["N"] = 32;
    j["simulation"]["dt"] = 0.005;
    j["simulation"]["blowupNormThreshold"] = 60.0;
    j["initialData"]["amplitude"] = 1.0;
    const fs::path out = dir_ / "out";
    ASSERT_EQ(exec("run --config " + writeConfig("blowup.json", j).string() + " --out " + out.string()), 2);
    const Json manifest = Json::parse(slurp(out / "manifest.json"));
    EXPECT_EQ(manifest.at("exitStatus"), 2);
    EXPECT_TRUE(manifest.at("blowup").get<bool>());
    EXPECT_GT(manifest.at("blowupTime").get<double>(), 0.0);
    EXPECT_TRUE(fs::exists(out / "diagnostics.csv"));
}

TEST_F(Cli, VerifyKernelStatuses)
{
    EXPECT_EQ(exec("verify-kernel --kernel surface --R 60"), 0);
    const Json report = Json::parse(slurp(dir_ / "stdout.txt"));
    EXPECT_TRUE(report.at("symmetry").at("passed").get<bool>());
    EXPECT_LE(report.at("bound").at("worstRatio").get<double>(), 1.0);

    EXPECT_EQ(exec("verify-kernel --config " + cfg("compacton.json") + " --R 60"), 4);
    EXPECT_EQ(exec("verify-kernel --config " + cfg("asymmetric_custom.json")), 5);
    EXPECT_EQ(exec("verify-kernel --kernel rayleigh --param r=0.5 --param gamma=2"), 0);
    EXPECT_EQ(exec("verify-kernel --kernel rayleigh --param r=1.5"), 3);
    EXPECT_EQ(exec("verify-kernel --kernel hunter_saxton --R 40 --full-lattice"), 0);
    EXPECT_EQ(exec("verify-kernel --kernel burgers --R 1"), 3);
}

TEST_F(Cli, ConstantsRecords)
{
    ASSERT_EQ(exec("constants --s 2 --kernel burgers"), 0);
    Json j = Json::parse(slurp(dir_ / "stdout.txt"));
    EXPECT_NEAR(j.at("Ks").get<double>(), 9.06899682117108925, 1e-6);
    EXPECT_NEAR(j.at("Cs").get<double>(), 5.0, 1e-6);

    ASSERT_EQ(exec("constants --s 2.6 --kernel surface"), 0);
    j = Json::parse(slurp(dir_ / "stdout.txt"));
    EXPECT_NEAR(j.at("tStar").get<double>(), 0.0934159469661920296, 1e-8);

    ASSERT_EQ(exec("constants --s 1 --kernel hunter_saxton"), 0);
    j = Json::parse(slurp(dir_ / "stdout.txt"));
    EXPECT_EQ(j.at("lambda"), 1.0);
    EXPECT_NEAR(j.at("Kslam").get<double>(), 4.5 * 1.81379936423421785, 1e-6);

    ASSERT_EQ(exec("constants --s 1.5 --kernel burgers"), 0);
    j = Json::parse(slurp(dir_ / "stdout.txt"));
    EXPECT_TRUE(j.at("Ks").is_null());
    EXPECT_NE(j.at("growthConstantUnavailable").get<std::string>().find("mu + 3/2"), std::string::npos);

    ASSERT_EQ(exec("constants --s 0.5 --lambda 1"), 0);
    j = Json::parse(slurp(dir_ / "stdout.txt"));
    EXPECT_NEAR(j.at("Cslam").get<double>(), 2.0, 1e-6);
    EXPECT_TRUE(j.at("Ms").is_null());

    EXPECT_EQ(exec("constants --s -1"), 3);
}

TEST_F(Cli, ConvergenceOrders)
{
    Json j = triad::readJsonFile(cfg("burgers.json"));
    j["simulation"]["N"] = 32;
    j["simulation"]["tEnd"] = 2.0;
    j["initialData"]["amplitude"] = 0.2;
    const fs::path config = writeConfig("conv.json", j);
    ASSERT_EQ(exec("convergence --config " + config.string() + " --dt-list 0.2,0.1,0.05,0.025 --out " +
                   (dir_ / "out").string()),
              0);
    const Json report = Json::parse(slurp(dir_ / "out" / "convergence.json"));
    const Json& rows = report.at("dt");
    ASSERT_EQ(rows.size(), 4U);
    for (int i = 0; i < 2; ++i) EXPECT_NEAR(rows[i].at("order").get<double>(), 4.0, 0.1) << rows[i];
    EXPECT_EQ(rows[3].at("error"), 0.0);

    ASSERT_EQ(exec("convergence --config " + config.string() + " --N-list 8,16,32"), 0);
    const Json byN = Json::parse(slurp(dir_ / "stdout.txt")).at("N");
    EXPECT_GT(byN[0].at("error").get<double>(), byN[1].at("error").get<double>());

    ASSERT_EQ(exec("convergence --config " + config.string() + " --N-list 16 --dt-list 0.1"), 0);
    const Json single = Json::parse(slurp(dir_ / "stdout.txt"));
    EXPECT_EQ(single.at("N").size(), 1U);
    EXPECT_EQ(single.at("dt")[0].at("error"), 0.0);
    EXPECT_TRUE(single.at("dt")[0].at("order").is_null());
}

TEST_F(Cli, OracleCompare)
{
    Json hs = triad::readJsonFile(cfg("hunter_saxton.json"));
    hs["simulation"]["tEnd"] = 0.1;
    EXPECT_EQ(exec("oracle-compare --config " + writeConfig("hs.json", hs).string()), 0);
    const Json report = Json::parse(slurp(dir_ / "stdout.txt"));
    EXPECT_TRUE(report.at("passed").get<bool>());
    EXPECT_EQ(report.at("checks").size(), 2U);

    Json burgers = triad::readJsonFile(cfg("burgers.json"));
    burgers["simulation"]["tEnd"] = 0.5;
    EXPECT_EQ(exec("oracle-compare --config " + writeConfig("b.json", burgers).string()), 0);
    burgers["oracle"] = {{"burgersTolerance", 0.0}};
    EXPECT_EQ(exec("oracle-compare --config " + writeConfig("b0.json", burgers).string()), 1);
    burgers["simulation"]["tEnd"] = 6.0;
    EXPECT_EQ(exec("oracle-compare --config " + writeConfig("late.json", burgers).string()), 3);
}

TEST_F(Cli, Usage)
{
    EXPECT_EQ(exec("--help"), 0);
    EXPECT_EQ(exec("frobnicate"), 3);
    EXPECT_EQ(exec(""), 3);
    EXPECT_EQ(exec("run"), 3);
}

TEST(Commands, DirectCallsShareExitCodes)
{
    std::ostringstream out, err;
    triadwave::VerifyOptions v;
    v.kernel = "compacton";
    v.R = 40;
    EXPECT_EQ(triadwave::cmdVerifyKernel(v, out, err), triadwave::kBoundViolated);
    v.kernel = "burgers";
    EXPECT_EQ(triadwave::cmdVerifyKernel(v, out, err), triadwave::kSuccess);
    triadwave::ConstantsOptions c;
    c.kernel = "nope";
    EXPECT_EQ(triadwave::cmdConstants(c, out, err), triadwave::kInvalidInput);
    EXPECT_NE(err.str().find("nope"), std::string::npos);
}
