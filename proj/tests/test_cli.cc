#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "cli.h"
#include "ybchain/export.h"
#include "ybchain/phase_diagram.h"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;
constexpr double pi = std::numbers::pi;

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "ybchain");
  std::ostringstream out, err;
  const int code = ybchain::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("ybchain_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

TEST_F(CliTest, HelpAndVersionSucceed) {
  EXPECT_EQ(run({"--help"}).code, 0);
  EXPECT_EQ(run({"scan", "--help"}).code, 0);
  const auto v = run({"--version"});
  EXPECT_EQ(v.code, 0);
  EXPECT_NE(v.out.find(ybchain::cli::version()), std::string::npos);
}

TEST_F(CliTest, InputErrorsExitWithTwo) {
  EXPECT_EQ(run({}).code, ybchain::cli::kExitInput);
  EXPECT_EQ(run({"frobnicate"}).code, ybchain::cli::kExitInput);
  EXPECT_EQ(run({"point", "--bogus"}).code, ybchain::cli::kExitInput);
  EXPECT_EQ(run({"point", "--quantity", "nope"}).code, ybchain::cli::kExitInput);
  EXPECT_EQ(run({"point", "--theta1", "pi/0"}).code, ybchain::cli::kExitInput);
  EXPECT_EQ(run({"point", "--mode", "exact"}).code, ybchain::cli::kExitInput);
  EXPECT_EQ(run({"point", "--mode", "lattice", "--n-cells", "4"}).code, ybchain::cli::kExitInput);
  EXPECT_EQ(run({"point", "--fd-step", "0"}).code, ybchain::cli::kExitInput);
  EXPECT_EQ(run({"scan"}).code, ybchain::cli::kExitInput);
  EXPECT_EQ(run({"scan", "--quantity", "Ce1", "--resolution", "1"}).code, ybchain::cli::kExitInput);
  EXPECT_EQ(run({"scan", "--quantity", "Ce1", "--theta1-range", "0"}).code, ybchain::cli::kExitInput);
  EXPECT_EQ(run({"crosscheck", "--sizes", "3,9"}).code, ybchain::cli::kExitInput);
  EXPECT_EQ(run({"crosscheck", "--quantity", "berry"}).code, ybchain::cli::kExitInput);
  const auto r = run({"point", "--quantity", "nope"});
  EXPECT_NE(r.err.find("unknown quantity"), std::string::npos);
}

TEST_F(CliTest, UnwritableOutputIsARuntimeError) {
  const auto r = run({"scan", "--quantity", "F0", "--resolution", "3", "--out", (dir_ / "missing" / "x").string()});
  EXPECT_EQ(r.code, ybchain::cli::kExitRuntime);
  EXPECT_NE(r.err.find("cannot open"), std::string::npos);
}

TEST_F(CliTest, ScanWritesDeterministicFiles) {
  const std::string a = (dir_ / "a").string(), b = (dir_ / "b").string();
  for (const auto& prefix : {a, b})
    ASSERT_EQ(run({"scan", "--quantity", "Ce1", "--resolution", "21", "--out", prefix}).code, 0);
  EXPECT_EQ(slurp(a + ".csv"), slurp(b + ".csv"));
  EXPECT_EQ(slurp(a + ".svg"), slurp(b + ".svg"));
  const auto meta = json::parse(slurp(a + ".meta.json"));
  EXPECT_EQ(meta["quantity"], "Ce1");
  EXPECT_EQ(meta["cells"], 441);
  EXPECT_EQ(meta["valid_cells"], 440);
  EXPECT_EQ(meta["version"], ybchain::cli::version());
  EXPECT_TRUE(meta.contains("timestamp"));
  EXPECT_EQ(meta["metadata"]["mode"], "thermodynamic");
}

TEST_F(CliTest, ScanCsvMatchesLibraryGrid) {
  const std::string prefix = (dir_ / "berry").string();
  ASSERT_EQ(run({"scan", "--quantity", "berry", "--resolution", "11", "--theta1-range", "0:pi/2", "--phi", "0.3",
                 "--out", prefix})
                .code,
            0);
  std::ifstream in(prefix + ".csv", std::ios::binary);
  const auto back = ybchain::read_csv(in);
  ybchain::ScanOptions o;
  o.phi = 0.3;
  const auto grid = ybchain::phase_diagram(ybchain::Quantity::berry, {0.0, pi / 2, 0.0, pi, 11, 11}, o);
  EXPECT_EQ(back.theta1_axis, grid.theta1_axis);
  EXPECT_EQ(back.values, grid.values);
}

TEST_F(CliTest, ScanLatticeMode) {
  const std::string prefix = (dir_ / "lat").string();
  ASSERT_EQ(run({"scan", "--quantity", "energy-density", "--mode", "lattice", "--n-cells", "7", "--resolution", "5",
                 "--out", prefix})
                .code,
            0);
  EXPECT_EQ(json::parse(slurp(prefix + ".meta.json"))["metadata"]["mode"], "lattice(7)");
}

TEST_F(CliTest, PointPolarizedLimit) {
  const auto r = run({"point", "--theta1", "0", "--theta2", "0", "--json"});
  ASSERT_EQ(r.code, 0);
  const auto j = json::parse(r.out);
  EXPECT_NEAR(j["quantities"]["berry"]["value"].get<double>(), -pi, 1e-12);
  EXPECT_NEAR(j["quantities"]["Ce1"]["value"].get<double>(), 0.0, 1e-12);
  EXPECT_NEAR(j["quantities"]["F0"]["value"].get<double>(), 1.0, 1e-12);
  EXPECT_FALSE(j["gapless"].get<bool>());
}

TEST_F(CliTest, PointDimerConcurrence) {
  const auto r = run({"point", "--theta1", "pi/3", "--theta2", "pi/2", "--quantity", "Co1", "--json"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NEAR(json::parse(r.out)["quantities"]["Co1"]["value"].get<double>(), std::sin(pi / 3), 1e-10);
}

TEST_F(CliTest, PointPrintsBothConcurrenceRoutes) {
  const auto r = run({"point", "--theta1", "1.0", "--theta2", "1.3", "--json"});
  ASSERT_EQ(r.code, 0);
  const auto q = json::parse(r.out)["quantities"];
  EXPECT_NEAR(q["Ce1"]["value"].get<double>(), q["Ce1-pipeline"]["value"].get<double>(), 1e-10);
  EXPECT_NEAR(q["Co1"]["value"].get<double>(), q["Co1-pipeline"]["value"].get<double>(), 1e-10);
  EXPECT_GT(q["Ce1"]["value"].get<double>(), 0.0);
}

TEST_F(CliTest, PointConsoleUsesFullPrecision) {
  const auto r = run({"point", "--theta1", "0", "--theta2", "0", "--quantity", "berry"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("-3.1415926535897931"), std::string::npos);
}

TEST_F(CliTest, PointFlagsGaplessQuantities) {
  const auto r = run({"point", "--theta1", "pi/2", "--theta2", "pi/2", "--json", "--out", (dir_ / "p.json").string()});
  ASSERT_EQ(r.code, 0);
  const auto j = json::parse(r.out);
  EXPECT_TRUE(j["gapless"].get<bool>());
  EXPECT_EQ(j["quantities"]["berry"]["status"], "gapless");
  EXPECT_TRUE(j["quantities"]["berry"]["value"].is_null());
  EXPECT_EQ(json::parse(slurp(dir_ / "p.json")), j);
}

TEST_F(CliTest, CrosscheckDimerLimitPasses) {
  const auto path = (dir_ / "report.json").string();
  const auto r = run({"crosscheck", "--theta1", "pi/3", "--theta2", "pi/2", "--phi", "0.4", "--sizes", "2,3,4",
                      "--out", path});
  EXPECT_EQ(r.code, 0) << r.out;
  const auto j = json::parse(slurp(path));
  EXPECT_TRUE(j["all_pass"].get<bool>());
  for (const auto& c : j["checks"]) {
    EXPECT_TRUE(c["pass"].get<bool>()) << c["name"];
    EXPECT_LT(c["deviation"].get<double>(), 1e-8) << c["name"];
    EXPECT_TRUE(c.contains("threshold"));
  }
}

TEST_F(CliTest, CrosscheckGenericPoint) {
  const auto r = run({"crosscheck", "--theta1", "0.9", "--theta2", "1.7", "--sizes", "3,5", "--json"});
  EXPECT_EQ(r.code, 0) << r.out;
  const auto j = json::parse(r.out);
  bool saw_neel = false, saw_iso = false, saw_z2 = false;
  for (const auto& c : j["checks"]) {
    const std::string name = c["name"];
    saw_neel |= name.rfind("neel", 0) == 0;
    saw_iso |= name.rfind("isospectrality", 0) == 0;
    saw_z2 |= name.rfind("z2-commutator", 0) == 0;
  }
  EXPECT_TRUE(saw_neel && saw_iso && saw_z2);
}

TEST_F(CliTest, CrosscheckGaplessPointSkipsAnalytic) {
  const auto r = run({"crosscheck", "--theta1", "pi/2", "--theta2", "pi/2", "--sizes", "2,3", "--json"});
  EXPECT_EQ(r.code, 0);
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["note"], "gapless: analytic quantities skipped");
  for (const auto& o : j["oracle"])
    for (const auto& row : o["rows"]) EXPECT_TRUE(row["skipped"].get<bool>());
}

TEST_F(CliTest, CrosscheckFailureHasItsOwnExitCode) {
  // A repeated size cannot show a decreasing deviation.
  const auto r = run({"crosscheck", "--theta1", "0.9", "--theta2", "1.7", "--sizes", "3,3", "--quantity",
                      "ground-energy-density"});
  EXPECT_EQ(r.code, ybchain::cli::kExitCrosscheckFailed);
  EXPECT_NE(r.out.find("FAIL oracle-ground-energy-density"), std::string::npos);
}

TEST_F(CliTest, ConfigFileMirrorsFlags) {
  const auto cfg = dir_ / "run.ini";
  std::ofstream(cfg) << "theta1=pi/3\ntheta2=pi/2\nquantity=Co1\njson=true\n";
  auto r = run({"point", "--config", cfg.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(json::parse(r.out)["quantities"]["Co1"]["value"].get<double>(), std::sin(pi / 3), 1e-10);

  r = run({"point", "--config", cfg.string(), "--theta1", "pi/6"});  // flag overrides file
  ASSERT_EQ(r.code, 0);
  EXPECT_NEAR(json::parse(r.out)["quantities"]["Co1"]["value"].get<double>(), std::sin(pi / 6), 1e-10);
}

TEST_F(CliTest, ConfigFileErrors) {
  const auto cfg = dir_ / "bad.ini";
  std::ofstream(cfg) << "theta9=1\n";
  EXPECT_EQ(run({"point", "--config", cfg.string()}).code, ybchain::cli::kExitInput);
  EXPECT_EQ(run({"point", "--config", (dir_ / "absent.ini").string()}).code, ybchain::cli::kExitInput);
}

}  // namespace
