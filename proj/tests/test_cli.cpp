#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include <gtest/gtest.h>

#include "ptob/io.hpp"

using ptob::json;

namespace {

struct Result
{
  int status;
  std::string out;
};

Result cli(const std::string& args, const std::string& env = "")
{
  const std::string cmd = env + " " PTOB_CLI_PATH " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) {
    return {-1, ""};
  }
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
    out.append(buf.data(), n);
  }
  const int raw = pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

const std::string kProto = std::string(PTOB_DATA_DIR) + "/prototype.json";

}  // namespace

TEST(Cli, DesignCheckPrototype)
{
  const auto r = cli("design-check --geom " + kProto + " --strict");
  ASSERT_EQ(r.status, 0);
  const auto report = json::parse(r.out).get<ptob::ConstraintReport>();
  EXPECT_TRUE(report.ok());
  EXPECT_EQ(report.checks.size(), 4u);
}

TEST(Cli, DesignCheckViolationExitsTwo)
{
  const std::string path = ::testing::TempDir() + "/thick.json";
  auto g = ptob::prototype_geometry();
  g.h_s = 40.0;
  std::ofstream(path) << json(g).dump();
  EXPECT_EQ(cli("design-check --geom " + path).status, 2);
}

TEST(Cli, StepTableCsv)
{
  const auto r = cli("stepclimb table --geom " + kProto);
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(r.out,
            "s_max_mm,phase_deg,max_step_mm\n"
            "0,0,35\n0,60,25\n15,0,40\n15,60,30\n30,0,45\n30,60,40\n");
}

TEST(Cli, KinematicsIk)
{
  const auto r = cli("kinematics ik --vx 1 --vy 0 --omega 0");
  ASSERT_EQ(r.status, 0);
  const auto w = ptob::wheel_speeds_from_json(json::parse(r.out).at("speeds"));
  ASSERT_EQ(w.size(), 4);
  EXPECT_NEAR(w(0), 0.70711, 1e-5);
  EXPECT_NEAR(w(1), -0.70711, 1e-5);
  EXPECT_NEAR(w(2), -0.70711, 1e-5);
  EXPECT_NEAR(w(3), 0.70711, 1e-5);
}

TEST(Cli, KinematicsFkAndResidual)
{
  const auto r = cli("kinematics-fk --speeds 1,0,0,0");
  ASSERT_EQ(r.status, 0);
  EXPECT_NEAR(json::parse(r.out).at("residual").get<double>(), 0.5, 1e-12);
}

TEST(Cli, OdometryArc)
{
  const auto r = cli("odometry --vx 100 --omega 1.5707963267948966 --dt 1");
  ASSERT_EQ(r.status, 0);
  const auto p = json::parse(r.out).get<ptob::Pose>();
  EXPECT_NEAR(p.x, 63.662, 1e-3);
  EXPECT_NEAR(p.y, 63.662, 1e-3);
}

TEST(Cli, GapAndSolve)
{
  auto r = cli("gap --gap 100");
  ASSERT_EQ(r.status, 0);
  auto j = json::parse(r.out);
  EXPECT_NEAR(j.at("drop").get<double>(), 24.356, 1e-3);
  EXPECT_TRUE(j.at("outcome").at("feasible").get<bool>());

  r = cli("stepclimb solve --height 55");
  ASSERT_EQ(r.status, 0);
  j = json::parse(r.out);
  EXPECT_EQ(j.at("outcome").at("limiting_factor"), "PlateContact");
  EXPECT_EQ(j.at("scenario").get<ptob::StepScenario>().height, 55.0);
}

TEST(Cli, CapBoundsAndPlates)
{
  auto j = json::parse(cli("cap-bounds --r-w 63.5 --gap 0 --n-caps 3").out);
  EXPECT_NEAR(j.at("h_s_max").get<double>(), 31.75, 1e-12);
  j = json::parse(cli("plate-spacing --clearance 5").out);
  EXPECT_DOUBLE_EQ(j.at("d_p_min").get<double>(), 175.0);
}

TEST(Cli, SimulateThenSpectrum)
{
  const std::string csv = ::testing::TempDir() + "/fwd.csv";
  ASSERT_EQ(cli("simulate --duration 5 -o " + csv).status, 0);
  const auto r = cli("spectrum --input " + csv + " --peaks 1 --band 1,50");
  ASSERT_EQ(r.status, 0);
  const auto j = json::parse(r.out);
  EXPECT_NEAR(j.at("peaks").at(0).at("freq_hz").get<double>(), 2.88,
              j.at("resolution_hz").get<double>());
}

TEST(Cli, ProfileCsv)
{
  const auto r = cli("profile --samples 12");
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "angle_deg,height_dev_mm");
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 13);
}

TEST(Cli, ConfigEnvironmentAndFlagOverride)
{
  const std::string path = ::testing::TempDir() + "/cfg.json";
  std::ofstream(path) << R"({"chassis": {"mount_radius": 100.0}, "step": {"s_max": 0}})";
  auto j = json::parse(cli("kinematics-ik --omega 1", "PTOB_CONFIG=" + path).out);
  EXPECT_DOUBLE_EQ(j.at("speeds").at(0).get<double>(), 100.0);
  j = json::parse(cli("stepclimb-solve --height 45", "PTOB_CONFIG=" + path).out);
  EXPECT_EQ(j.at("outcome").at("limiting_factor"), "SlideRange");
  j = json::parse(cli("stepclimb-solve --height 45 --s-max 30", "PTOB_CONFIG=" + path).out);
  EXPECT_TRUE(j.at("outcome").at("feasible").get<bool>());
}

TEST(Cli, Errors)
{
  EXPECT_EQ(cli("frobnicate").status, 1);
  EXPECT_EQ(cli("kinematics-ik --bogus 3").status, 1);
  EXPECT_EQ(cli("design-check --geom /nonexistent.json").status, 1);
  EXPECT_EQ(cli("stepclimb-solve --height 45 --phase 30").status, 1);
  EXPECT_EQ(cli("").status, 1);
}

TEST(Cli, DeterministicOutput)
{
  const auto a = cli("stepclimb-solve --height 44.45 --s-max 20");
  const auto b = cli("stepclimb-solve --height 44.45 --s-max 20");
  EXPECT_EQ(a.out, b.out);
  EXPECT_FALSE(a.out.empty());
}

TEST(Cli, JsonReparsesIntoTypes)
{
  const auto report = json::parse(cli("design-check").out).get<ptob::ConstraintReport>();
  EXPECT_EQ(json(report).dump(2) + "\n", cli("design-check").out);
  const auto out = json::parse(cli("stepclimb-solve --height 30").out);
  EXPECT_EQ(json(out.at("outcome").get<ptob::HookOutcome>()), out.at("outcome"));
}

TEST(Cli, ShippedDataFiles)
{
  const std::string dir = PTOB_DATA_DIR;
  auto j = json::parse(cli("stepclimb-solve --scenario " + dir + "/step_45mm.json").out);
  EXPECT_TRUE(j.at("outcome").at("feasible").get<bool>());
  const auto r = cli("simulate --scenario " + dir + "/run_forward.json --chassis " + dir +
                     "/chassis.json --duration 1");
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 1001);
  j = json::parse(cli("gap --gap 127", "PTOB_CONFIG=" + dir + "/config.json").out);
  EXPECT_EQ(j.at("outcome").at("limiting_factor"), "Slip");
}
