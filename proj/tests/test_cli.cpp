#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "tc/io.hpp"

namespace tc::cli {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "tc_evolve");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("tc_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write_state(const std::string& name, const JointState& state) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << state_to_json(state).dump(2) << '\n';
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

std::string slurp(const std::string& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST_F(CliTest, EvolveSingleAtomHalfPeriod) {
  const std::string in = write_state("e0.json", JointState::basis({"e", 0}));
  const Result r = invoke({"evolve", "--state", in, "--t", format_number(std::numbers::pi),
                           "--g", "1", "--omega", "1"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const JointState out = state_from_json(json::parse(r.out));
  // -exp(-i pi/2) = i on |e,0>, nothing on |g,1>
  EXPECT_LT(std::abs(out.amplitude({"e", 0}) - Amplitude(0.0, 1.0)), 1e-12);
  EXPECT_LT(std::abs(out.amplitude({"g", 1})), 1e-12);
}

TEST_F(CliTest, EvolveZeroTimeRoundTripIsByteIdentical) {
  JointState s(3);
  s.add({"eeg", 2}, {0.1, 0.7});
  s.add({"ggg", 5}, {-0.3, 1.0 / 3.0});
  const std::string in = write_state("s.json", s);
  const std::string first = path("first.json");
  ASSERT_EQ(invoke({"evolve", "--state", in, "--t", "0.9", "--g", "1.3", "--out", first}).code, kOk);
  const std::string second = path("second.json");
  ASSERT_EQ(invoke({"evolve", "--state", first, "--t", "0", "--out", second}).code, kOk);
  EXPECT_EQ(slurp(first), slurp(second));
  // sectors K = 4 and K = 5, eight labels each
  EXPECT_EQ(state_from_json(json::parse(slurp(first))).size(), 16u);
}

TEST_F(CliTest, EvolveBothReportsDeviation) {
  const std::string in = write_state("eee.json", JointState::basis({"eee", 0}));
  const Result r = invoke({"evolve", "--state", in, "--t", "3.3", "--g", "2.7", "--method", "both"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const json diag = json::parse(r.err);
  EXPECT_LE(diag["max_deviation"].get<double>(), 1e-10);
}

TEST_F(CliTest, EvolveExitCodes) {
  const std::string in = write_state("e.json", JointState::basis({"e", 0}));
  EXPECT_EQ(invoke({"evolve", "--state", in, "--t", "1", "--delta", "1.5"}).code, kResonanceViolation);
  EXPECT_EQ(invoke({"evolve", "--state", in, "--t", "1", "--delta", "1.5", "--method", "oracle"}).code,
            kOk);
  EXPECT_EQ(invoke({"evolve", "--state", in, "--t", "1", "--n-atoms", "2"}).code, kUsageError);
  EXPECT_EQ(invoke({"evolve", "--state", path("missing.json"), "--t", "1"}).code, kUsageError);
  std::ofstream(path("bad.json")) << "[{\"atoms\": \"e\"}]";
  EXPECT_EQ(invoke({"evolve", "--state", path("bad.json"), "--t", "1"}).code, kUsageError);
  std::ofstream(path("junk.json")) << "not json";
  EXPECT_EQ(invoke({"evolve", "--state", path("junk.json"), "--t", "1"}).code, kUsageError);
  EXPECT_EQ(invoke({"evolve", "--state", in}).code, kUsageError);
  EXPECT_EQ(invoke({"evolve", "--state", in, "--t", "1", "--method", "magic"}).code, kUsageError);
  EXPECT_EQ(invoke({}).code, kUsageError);
}

TEST_F(CliTest, TraceVacuumRabi) {
  const std::string in = write_state("e0.json", JointState::basis({"e", 0}));
  const Result r = invoke({"trace", "--state", in, "--t-end", "3.14159", "--steps", "50",
                           "--method", "both"});
  ASSERT_EQ(r.code, kOk) << r.err;
  std::istringstream lines(r.out);
  std::string header;
  std::getline(lines, header);
  EXPECT_EQ(header, "t,P_excited_1,mean_photons,norm,deviation");
  int count = 0;
  for (std::string line; std::getline(lines, line); ++count) {
    std::vector<double> cols;
    std::istringstream row(line);
    for (std::string cell; std::getline(row, cell, ',');) cols.push_back(std::stod(cell));
    ASSERT_EQ(cols.size(), 5u);
    EXPECT_NEAR(cols[1], std::cos(cols[0]) * std::cos(cols[0]), 1e-12);
    EXPECT_NEAR(cols[1] + cols[2], 1.0, 1e-12);
    EXPECT_NEAR(cols[3], 1.0, 1e-12);
    EXPECT_LE(cols[4], 1e-10);
  }
  EXPECT_EQ(count, 51);
}

TEST_F(CliTest, TraceSingletIsDark) {
  const double s = 1.0 / std::sqrt(2.0);
  JointState singlet(2);
  singlet.add({"eg", 0}, s);
  singlet.add({"ge", 0}, -s);
  const std::vector<TraceRow> rows =
      compute_trace({2, 1.0, 1.0, 1.7}, singlet, {0.0, 10.0, 40}, Method::oracle, 2);
  for (const TraceRow& row : rows) {
    EXPECT_NEAR(row.p_excited[0], 0.5, 1e-12);
    EXPECT_NEAR(row.p_excited[1], 0.5, 1e-12);
    EXPECT_NEAR(row.mean_photons, 0.0, 1e-12);
  }
}

TEST_F(CliTest, TraceRejectsBadGrid) {
  const std::string in = write_state("e0.json", JointState::basis({"e", 0}));
  EXPECT_EQ(invoke({"trace", "--state", in, "--steps", "0"}).code, kUsageError);
  EXPECT_EQ(invoke({"trace", "--state", in, "--t-start", "2", "--t-end", "1"}).code, kUsageError);
}

TEST_F(CliTest, CompareAndIdentities) {
  const Result c = invoke({"compare", "--n-atoms", "1", "--g", "0.2"});
  ASSERT_EQ(c.code, kOk) << c.err;
  const json records = json::parse(c.out);
  EXPECT_EQ(records.size(), 21u * 13u);
  for (const json& rec : records) EXPECT_LE(rec["residual"].get<double>(), 1e-12);

  EXPECT_EQ(invoke({"compare", "--n-atoms", "2", "--delta", "0.5", "--method", "closed"}).code,
            kResonanceViolation);
  EXPECT_EQ(invoke({"compare", "--k-max", "3"}).code, kUsageError);
  EXPECT_EQ(invoke({"compare", "--n-atoms", "4"}).code, kUsageError);

  const Result id = invoke({"identities", "--n-atoms", "2"});
  ASSERT_EQ(id.code, kOk) << id.err;
  for (const json& rec : json::parse(id.out)) {
    if (rec["check"] == "b1_cubic") EXPECT_LE(rec["residual"].get<double>(), 1e-13);
  }
  // an impossible tolerance turns into exit 1
  EXPECT_EQ(invoke({"identities", "--n-atoms", "2", "--tolerance", "-1"}).code, kToleranceFailure);
}

TEST_F(CliTest, SweepIsDeterministicAcrossThreadCounts) {
  const ModelParams p{3, 1.0, 1.0, 2.7};
  const TimeGrid grid{0.0, 10.0, 6};
  std::ostringstream one;
  std::ostringstream many;
  write_sweep_csv(one, compute_sweep(p, grid, 5, 1));
  write_sweep_csv(many, compute_sweep(p, grid, 5, 4));
  EXPECT_EQ(one.str(), many.str());

  const Result r = invoke({"sweep", "--n-atoms", "2", "--k-max", "4", "--steps", "4"});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "t,K,deviation,unitarity");
}

TEST_F(CliTest, SectorDump) {
  const Result r = invoke({"sector", "--n-atoms", "1", "--k", "1", "--g", "0.5"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const json doc = json::parse(r.out);
  EXPECT_EQ(doc["basis"].size(), 2u);
  EXPECT_EQ(doc["hamiltonian"]["re"][0][1], 0.5);
  EXPECT_EQ(doc["hamiltonian"]["re"][0][0], 0.5);
}

TEST(FormatNumber, SeventeenSignificantDigits) {
  EXPECT_EQ(format_number(0.1), "1.0000000000000001e-01");
  EXPECT_EQ(format_number(-2.0), "-2.0000000000000000e+00");
}

TEST(TimeGrid, EndpointsExact) {
  const std::vector<double> pts = TimeGrid{0.0, 10.0, 20}.points();
  ASSERT_EQ(pts.size(), 21u);
  EXPECT_EQ(pts.front(), 0.0);
  EXPECT_EQ(pts.back(), 10.0);
  EXPECT_EQ(pts[10], 5.0);
}

}  // namespace
}  // namespace tc::cli
